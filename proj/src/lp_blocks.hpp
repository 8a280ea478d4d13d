#pragma once

#include "gradhedge/lp.hpp"
#include "gradhedge/polyhedron.hpp"

#include <vector>

namespace gradhedge::detail {

/// c times the d consecutive LP variables starting at `offset`.
struct Term {
    std::size_t offset;
    Rational coeff;
};

/// Adds the rows expressing  sum_k c_k v_k + constant ∈ p.
inline void add_membership(LpProblem& lp, const Polyhedron& p, const std::vector<Term>& terms,
                           const Vec& constant) {
    for (const auto& h : p.halfspaces()) {
        Vec row = zeros(lp.num_vars);
        for (const auto& t : terms)
            for (std::size_t j = 0; j < h.a.size(); ++j) row[t.offset + j] += t.coeff * h.a[j];
        lp.add_ge(std::move(row), h.b - dot(h.a, constant));
    }
}

inline Vec block(const Vec& point, std::size_t offset, std::size_t d) {
    return Vec(point.begin() + static_cast<std::ptrdiff_t>(offset),
               point.begin() + static_cast<std::ptrdiff_t>(offset + d));
}

}  // namespace gradhedge::detail
