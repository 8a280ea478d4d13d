#include "gradhedge/polyhedron.hpp"

#include "double_description.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradhedge {

namespace {

using detail::dd_generators;
using detail::null_space;
using detail::rref;

Halfspace normalized(Halfspace h) {
    for (std::size_t i = h.a.size(); i-- > 0;) {
        if (!h.a[i].is_zero()) {
            const Rational s = 1 / abs(h.a[i]);
            for (auto& x : h.a) x *= s;
            h.b *= s;
            break;
        }
    }
    return h;
}

bool halfspace_less(const Halfspace& x, const Halfspace& y) {
    if (x.a != y.a) return lex_less(x.a, y.a);
    return x.b < y.b;
}

void sort_unique(std::vector<Vec>& v) {
    std::sort(v.begin(), v.end(), lex_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Vec homogenize(const Vec& v, const Rational& last) {
    Vec out(v);
    out.push_back(last);
    return out;
}

void check_dim(std::size_t d, const Vec& v, const char* what) {
    if (v.size() != d) throw std::invalid_argument(std::string("polyhedron: wrong dimension for ") + what);
}

// Reduced echelon lines with coprime integer entries and positive pivots.
std::vector<Vec> canonical_lines(std::vector<Vec> lines) {
    std::vector<Vec> out;
    for (auto& l : rref(std::move(lines))) out.push_back(primitive(l));
    return out;
}

}  // namespace

std::string to_string(const Halfspace& h) {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < h.a.size(); ++i) {
        const Rational& c = h.a[i];
        if (c.is_zero()) continue;
        const Rational mag = abs(c);
        if (!first) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        if (mag != 1) {
            out += boost::multiprecision::numerator(mag).str();
            if (boost::multiprecision::denominator(mag) != 1)
                out += "/" + boost::multiprecision::denominator(mag).str();
        }
        out += "x" + std::to_string(i + 1);
        first = false;
    }
    if (first) out = "0";
    std::string rhs = boost::multiprecision::numerator(h.b).str();
    if (boost::multiprecision::denominator(h.b) != 1) rhs += "/" + boost::multiprecision::denominator(h.b).str();
    return out + " >= " + rhs;
}

Polyhedron Polyhedron::empty(std::size_t d) {
    Polyhedron p;
    p.dim_ = d;
    p.empty_ = true;
    p.halfspaces_.push_back({zeros(d), Rational(1)});
    return p;
}

Polyhedron Polyhedron::full(std::size_t d) {
    std::vector<Vec> lines;
    for (std::size_t i = 0; i < d; ++i) lines.push_back(unit(d, i));
    return from_v(d, {zeros(d)}, {}, std::move(lines));
}

Polyhedron Polyhedron::point(const Vec& x) { return from_v(x.size(), {x}, {}); }

Polyhedron Polyhedron::cone(std::size_t d, std::vector<Vec> generators) {
    return from_v(d, {zeros(d)}, std::move(generators));
}

bool Polyhedron::is_cone() const {
    if (empty_) return false;
    return std::all_of(halfspaces_.begin(), halfspaces_.end(), [](const Halfspace& h) { return h.b.is_zero(); });
}

Polyhedron Polyhedron::from_h(std::size_t d, std::vector<Halfspace> halfspaces) {
    // Homogenize: a·x - b·s >= 0 with s >= 0, the latter processed first.
    std::vector<Vec> rows;
    rows.push_back(unit(d + 1, d));
    for (const auto& h : halfspaces) {
        check_dim(d, h.a, "halfspace");
        rows.push_back(homogenize(h.a, -h.b));
    }
    const auto gen = dd_generators(d + 1, rows);

    std::vector<Vec> points, rays, lines;
    for (const auto& g : gen.rays) {
        const Rational s = g[d];
        Vec x(g.begin(), g.end() - 1);
        if (s > 0) points.push_back(scaled(x, 1 / s));
        else rays.push_back(std::move(x));
    }
    if (points.empty()) return empty(d);
    for (const auto& l : gen.lines) lines.emplace_back(l.begin(), l.end() - 1);
    return canonical_from_v(d, points, rays, lines);
}

Polyhedron Polyhedron::from_v(std::size_t d, std::vector<Vec> points, std::vector<Vec> rays, std::vector<Vec> lines) {
    for (const auto& v : points) check_dim(d, v, "point");
    for (const auto& v : rays) check_dim(d, v, "ray");
    for (const auto& v : lines) check_dim(d, v, "line");
    if (points.empty()) return empty(d);
    return canonical_from_v(d, points, rays, lines);
}

Polyhedron Polyhedron::canonical_from_v(std::size_t d, const std::vector<Vec>& points,
                                        const std::vector<Vec>& rays, const std::vector<Vec>& lines) {
    // Facets come from the extreme rays of the polar of the homogenized cone.
    std::vector<Vec> gens;
    for (const auto& p : points) gens.push_back(homogenize(p, Rational(1)));
    for (const auto& r : rays)
        if (!is_zero(r)) gens.push_back(homogenize(r, Rational(0)));
    for (const auto& l : lines) {
        if (is_zero(l)) continue;
        gens.push_back(homogenize(l, Rational(0)));
        gens.push_back(homogenize(negated(l), Rational(0)));
    }
    const auto dual = dd_generators(d + 1, gens);

    std::vector<std::size_t> eq_piv;
    const std::vector<Vec> eqs = rref(dual.lines, &eq_piv);

    Polyhedron out;
    out.dim_ = d;
    out.empty_ = false;
    for (Vec r : dual.rays) {
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            const Rational f = r[eq_piv[i]];
            if (!f.is_zero()) axpy(r, -f, eqs[i]);
        }
        Vec a(r.begin(), r.end() - 1);
        if (is_zero(a)) continue;
        out.halfspaces_.push_back(normalized({std::move(a), -r[d]}));
    }
    for (const auto& e : eqs) {
        Vec a(e.begin(), e.end() - 1);
        if (is_zero(a)) continue;
        out.halfspaces_.push_back(normalized({a, -e[d]}));
        out.halfspaces_.push_back(normalized({negated(a), e[d]}));
    }
    std::sort(out.halfspaces_.begin(), out.halfspaces_.end(), halfspace_less);
    out.halfspaces_.erase(std::unique(out.halfspaces_.begin(), out.halfspaces_.end()), out.halfspaces_.end());

    // Lineality space and the pointed section {x_p = 0 for each pivot p}.
    std::vector<Vec> normals;
    for (const auto& h : out.halfspaces_) normals.push_back(h.a);
    out.lines_ = canonical_lines(null_space(normals, d));

    std::vector<Vec> rows;
    rows.push_back(unit(d + 1, d));
    for (const auto& h : out.halfspaces_) rows.push_back(homogenize(h.a, -h.b));
    for (const auto& l : out.lines_) {
        const auto pivot = static_cast<std::size_t>(
            std::find_if(l.begin(), l.end(), [](const Rational& x) { return !x.is_zero(); }) - l.begin());
        rows.push_back(unit(d + 1, pivot));
        rows.push_back(negated(unit(d + 1, pivot)));
    }
    const auto section = dd_generators(d + 1, rows);
    for (const auto& g : section.rays) {
        const Rational s = g[d];
        Vec x(g.begin(), g.end() - 1);
        if (s > 0) out.points_.push_back(scaled(x, 1 / s));
        else out.rays_.push_back(std::move(x));
    }
    sort_unique(out.points_);
    sort_unique(out.rays_);
    return out;
}

Polyhedron convert(const Polyhedron& p) {
    if (p.is_empty()) return Polyhedron::empty(p.dim());
    return Polyhedron::from_h(p.dim(), p.halfspaces());
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("intersect: dimension mismatch");
    return intersect_all(p.dim(), {&p, &q});
}

Polyhedron intersect_all(std::size_t d, const std::vector<const Polyhedron*>& sets) {
    std::vector<Halfspace> hs;
    for (const auto* s : sets) {
        if (s->dim() != d) throw std::invalid_argument("intersect: dimension mismatch");
        if (s->is_empty()) return Polyhedron::empty(d);
        hs.insert(hs.end(), s->halfspaces().begin(), s->halfspaces().end());
    }
    return Polyhedron::from_h(d, std::move(hs));
}

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    if (p.is_empty() || q.is_empty()) return Polyhedron::empty(p.dim());
    std::vector<Vec> points;
    for (const auto& x : p.points())
        for (const auto& y : q.points()) points.push_back(add(x, y));
    std::vector<Vec> rays = p.rays(), lines = p.lines();
    rays.insert(rays.end(), q.rays().begin(), q.rays().end());
    lines.insert(lines.end(), q.lines().begin(), q.lines().end());
    return Polyhedron::from_v(p.dim(), std::move(points), std::move(rays), std::move(lines));
}

Polyhedron hull_union(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("hull_union: dimension mismatch");
    if (p.is_empty()) return q;
    if (q.is_empty()) return p;
    std::vector<Vec> points = p.points(), rays = p.rays(), lines = p.lines();
    points.insert(points.end(), q.points().begin(), q.points().end());
    rays.insert(rays.end(), q.rays().begin(), q.rays().end());
    lines.insert(lines.end(), q.lines().begin(), q.lines().end());
    return Polyhedron::from_v(p.dim(), std::move(points), std::move(rays), std::move(lines));
}

Polyhedron translate(const Polyhedron& p, const Vec& v) {
    check_dim(p.dim(), v, "translation");
    if (p.is_empty()) return p;
    std::vector<Vec> points;
    for (const auto& x : p.points()) points.push_back(add(x, v));
    return Polyhedron::from_v(p.dim(), std::move(points), p.rays(), p.lines());
}

Polyhedron scale(const Polyhedron& p, const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("scale: factor must be positive");
    if (p.is_empty()) return p;
    std::vector<Vec> points;
    for (const auto& x : p.points()) points.push_back(scaled(x, lambda));
    return Polyhedron::from_v(p.dim(), std::move(points), p.rays(), p.lines());
}

Polyhedron recession_cone(const Polyhedron& p) {
    if (p.is_empty()) return p;
    return Polyhedron::from_v(p.dim(), {zeros(p.dim())}, p.rays(), p.lines());
}

Polyhedron polar(const Polyhedron& c) {
    if (!c.is_cone()) throw std::invalid_argument("polar: input is not a cone");
    std::vector<Halfspace> hs;
    for (const auto& r : c.rays()) hs.push_back({r, Rational(0)});
    for (const auto& l : c.lines()) {
        hs.push_back({l, Rational(0)});
        hs.push_back({negated(l), Rational(0)});
    }
    return Polyhedron::from_h(c.dim(), std::move(hs));
}

const Halfspace* violated_halfspace(const Polyhedron& p, const Vec& x) {
    check_dim(p.dim(), x, "point");
    for (const auto& h : p.halfspaces())
        if (dot(h.a, x) < h.b) return &h;
    return nullptr;
}

bool contains(const Polyhedron& p, const Vec& x) { return violated_halfspace(p, x) == nullptr; }

bool contains_direction(const Polyhedron& p, const Vec& r) {
    check_dim(p.dim(), r, "direction");
    if (p.is_empty()) return false;
    return std::all_of(p.halfspaces().begin(), p.halfspaces().end(),
                       [&](const Halfspace& h) { return dot(h.a, r) >= 0; });
}

bool subset(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("subset: dimension mismatch");
    if (p.is_empty()) return true;
    if (q.is_empty()) return false;
    for (const auto& x : p.points())
        if (!contains(q, x)) return false;
    for (const auto& r : p.rays())
        if (!contains_direction(q, r)) return false;
    for (const auto& l : p.lines())
        if (!contains_direction(q, l) || !contains_direction(q, negated(l))) return false;
    return true;
}

bool equal(const Polyhedron& p, const Polyhedron& q) { return subset(p, q) && subset(q, p); }

AxisMinimum min_along_axis(const Polyhedron& p, std::size_t j) {
    if (j >= p.dim()) throw std::invalid_argument("min_along_axis: axis out of range");
    AxisMinimum out;
    if (p.is_empty()) return out;
    bool has_lower = false, has_upper = false;
    Rational lower, upper;
    for (const auto& h : p.halfspaces()) {
        const Rational& c = h.a[j];
        if (c.is_zero()) {
            if (h.b > 0) return out;
            continue;
        }
        const Rational bound = h.b / c;
        if (c > 0) {
            if (!has_lower || bound > lower) lower = bound;
            has_lower = true;
        } else {
            if (!has_upper || bound < upper) upper = bound;
            has_upper = true;
        }
    }
    if (has_lower && has_upper && lower > upper) return out;
    if (!has_lower) {
        out.kind = AxisMinimum::Kind::UnboundedBelow;
        return out;
    }
    out.kind = AxisMinimum::Kind::Finite;
    out.value = lower;
    return out;
}

}  // namespace gradhedge
