#pragma once

#include "gradhedge/rational.hpp"

#include <string>
#include <vector>

namespace gradhedge {

/// The closed halfspace {x : a·x >= b}.
struct Halfspace {
    Vec a;
    Rational b;

    bool operator==(const Halfspace&) const = default;
};

/// Human-readable form such as "58/5x1 + x2 >= 6".
std::string to_string(const Halfspace& h);

/// Closed convex polyhedron in Q^d. Both representations are always present and
/// canonical: the halfspaces are irredundant, scaled so the last nonzero
/// coefficient of `a` has magnitude 1, and sorted; lines form a reduced echelon
/// basis of the lineality space; points and rays are the vertices and extreme
/// rays of the section through the origin transversal to the lines.
class Polyhedron {
public:
    Polyhedron() = default;

    static Polyhedron from_h(std::size_t d, std::vector<Halfspace> halfspaces);
    static Polyhedron from_v(std::size_t d, std::vector<Vec> points, std::vector<Vec> rays,
                             std::vector<Vec> lines = {});
    static Polyhedron empty(std::size_t d);
    static Polyhedron full(std::size_t d);
    static Polyhedron point(const Vec& x);
    /// Cone generated by `generators` (the origin is always included).
    static Polyhedron cone(std::size_t d, std::vector<Vec> generators);

    std::size_t dim() const { return dim_; }
    bool is_empty() const { return empty_; }
    /// Nonempty with every halfspace through the origin.
    bool is_cone() const;

    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const std::vector<Vec>& points() const { return points_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Vec>& lines() const { return lines_; }

    bool operator==(const Polyhedron&) const = default;

private:
    std::size_t dim_ = 0;
    bool empty_ = true;
    std::vector<Halfspace> halfspaces_;
    std::vector<Vec> points_;
    std::vector<Vec> rays_;
    std::vector<Vec> lines_;

    static Polyhedron canonical_from_v(std::size_t d, const std::vector<Vec>& points,
                                       const std::vector<Vec>& rays, const std::vector<Vec>& lines);
};

/// Rebuilds both representations from the halfspaces alone.
Polyhedron convert(const Polyhedron& p);

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);
Polyhedron intersect_all(std::size_t d, const std::vector<const Polyhedron*>& sets);
Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q);
/// Closed convex hull of p ∪ q.
Polyhedron hull_union(const Polyhedron& p, const Polyhedron& q);
Polyhedron translate(const Polyhedron& p, const Vec& v);
/// Throws std::invalid_argument unless lambda > 0.
Polyhedron scale(const Polyhedron& p, const Rational& lambda);
Polyhedron recession_cone(const Polyhedron& p);
/// Polar (dual) cone {y : y·x >= 0 for all x in c}. Throws for non-cones.
Polyhedron polar(const Polyhedron& c);

bool contains(const Polyhedron& p, const Vec& x);
/// True when `r` is a recession direction of p.
bool contains_direction(const Polyhedron& p, const Vec& r);
bool subset(const Polyhedron& p, const Polyhedron& q);
bool equal(const Polyhedron& p, const Polyhedron& q);

/// First halfspace of p violated by x, or nullptr.
const Halfspace* violated_halfspace(const Polyhedron& p, const Vec& x);

struct AxisMinimum {
    enum class Kind { Finite, UnboundedBelow, Infeasible };
    Kind kind = Kind::Infeasible;
    Rational value = 0;
};

/// min{x : x e^j ∈ p}.
AxisMinimum min_along_axis(const Polyhedron& p, std::size_t j);

}  // namespace gradhedge
