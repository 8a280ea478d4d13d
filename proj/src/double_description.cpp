#include "double_description.hpp"

#include <cstdint>

namespace gradhedge::detail {

namespace {

// Zero sets are bitsets over the rows processed so far.
using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t k) { b[k / 64] |= std::uint64_t{1} << (k % 64); }

bool is_subset(const Bits& small, const Bits& big) {
    for (std::size_t w = 0; w < small.size(); ++w)
        if (small[w] & ~big[w]) return false;
    return true;
}

struct Ray {
    Vec v;
    Bits zero;
};

}  // namespace

ConeGenerators dd_generators(std::size_t n, const std::vector<Vec>& rows) {
    const std::size_t words = (rows.size() + 63) / 64 + 1;
    std::vector<Vec> lines;
    for (std::size_t i = 0; i < n; ++i) lines.push_back(unit(n, i));
    std::vector<Ray> rays;

    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Vec& a = rows[k];

        std::size_t li = lines.size();
        Rational al;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            al = dot(a, lines[i]);
            if (!al.is_zero()) {
                li = i;
                break;
            }
        }

        if (li != lines.size()) {
            // The row cuts the lineality space: one line becomes a ray and the
            // rest of the generators are projected onto the row's hyperplane.
            Vec l = lines[li];
            if (al < 0) {
                l = negated(l);
                al = -al;
            }
            lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(li));
            for (auto& m : lines) {
                const Rational c = dot(a, m);
                if (!c.is_zero()) m = primitive(add(m, scaled(l, -c / al)));
            }
            for (auto& r : rays) {
                const Rational c = dot(a, r.v);
                if (!c.is_zero()) r.v = primitive(add(r.v, scaled(l, -c / al)));
                set_bit(r.zero, k);
            }
            Ray nr{primitive(l), Bits(words, 0)};
            for (std::size_t i = 0; i < k; ++i) set_bit(nr.zero, i);
            rays.push_back(std::move(nr));
            continue;
        }

        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] > 0) {
                pos.push_back(i);
                next.push_back(rays[i]);
            } else if (val[i] < 0) {
                neg.push_back(i);
            } else {
                next.push_back(rays[i]);
                set_bit(next.back().zero, k);
            }
        }
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                Bits common(words);
                for (std::size_t w = 0; w < words; ++w) common[w] = rays[p].zero[w] & rays[q].zero[w];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r != p && r != q && is_subset(common, rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                Vec v = sub(scaled(rays[q].v, val[p]), scaled(rays[p].v, val[q]));
                set_bit(common, k);
                next.push_back(Ray{primitive(v), std::move(common)});
            }
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    out.lines = std::move(lines);
    return out;
}

std::vector<Vec> rref(std::vector<Vec> rows, std::vector<std::size_t>* pivots) {
    std::vector<std::size_t> piv;
    if (rows.empty()) {
        if (pivots) pivots->clear();
        return rows;
    }
    const std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (!rows[i][c].is_zero()) {
                sel = i;
                break;
            }
        }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const Rational f = rows[i][c];
            axpy(rows[i], -f, rows[r]);
        }
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    if (pivots) *pivots = std::move(piv);
    return rows;
}

std::vector<Vec> null_space(const std::vector<Vec>& rows, std::size_t n) {
    std::vector<std::size_t> piv;
    const std::vector<Vec> red = rref(rows, &piv);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : piv) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v = zeros(n);
        v[f] = 1;
        for (std::size_t i = 0; i < red.size(); ++i) v[piv[i]] = -red[i][f];
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis));
}

}  // namespace gradhedge::detail
