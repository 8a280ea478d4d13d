#include "gradhedge/dual.hpp"

#include "lp_blocks.hpp"

namespace gradhedge {

using detail::add_membership;
using detail::block;
using detail::Term;

namespace {

std::vector<std::size_t> strict_descendants(const EventTree& tree, std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t k = i + 1; k < tree.size(); ++k)
        if (tree.is_ancestor(i, k)) out.push_back(k);
    return out;
}

}  // namespace

bool is_dual_feasible(const Market& market, const AdaptedProcess& m, std::size_t j, const MixedStoppingTime& stopping) {
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim();
    if (m.size() != tree.size() || stopping.size() != tree.size() || j >= d) return false;
    if (m[0].size() != d || m[0][j] != 1) return false;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (m[i].size() != d || !contains(market.Q_polar(i), m[i])) return false;
        const Node& n = tree.node(i);
        if (n.children.empty()) continue;
        Rational mass = 0;
        for (std::size_t c : n.children) mass += m[c][j];
        if (mass != m[i][j]) return false;
        Vec tail = zeros(d);
        for (std::size_t k : strict_descendants(tree, i)) axpy(tail, stopping[k], m[k]);
        if (!contains(market.Q_polar(i), tail)) return false;
    }
    return true;
}

Rational dual_objective(const AdaptedProcess& Z, const AdaptedProcess& m, const MixedStoppingTime& stopping) {
    Rational v = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!stopping[i].is_zero()) v += stopping[i] * dot(Z[i], m[i]);
    return v;
}

std::optional<DualSolve> solve_dual_lp(const Market& market, const AdaptedProcess& Z, std::size_t j,
                                       const MixedStoppingTime& stopping, Sense sense) {
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim(), nv = tree.size() * d;
    LpProblem lp(nv, sense);
    lp.nonnegative.assign(nv, false);
    {
        Vec row = zeros(nv);
        row[j] = 1;
        lp.add_eq(std::move(row), 1);
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
        add_membership(lp, market.Q_polar(i), {{i * d, Rational(1)}}, zeros(d));
        for (std::size_t k = 0; k < d; ++k) lp.objective[i * d + k] = stopping[i] * Z[i][k];
        const Node& n = tree.node(i);
        if (n.children.empty()) continue;
        Vec row = zeros(nv);
        row[i * d + j] = 1;
        for (std::size_t c : n.children) row[c * d + j] = -1;
        lp.add_eq(std::move(row), 0);
        std::vector<Term> tail;
        for (std::size_t k : strict_descendants(tree, i))
            if (!stopping[k].is_zero()) tail.push_back({k * d, stopping[k]});
        add_membership(lp, market.Q_polar(i), tail, zeros(d));
    }
    const auto sol = lp_solve(lp);
    if (sol.status == LpStatus::Infeasible) return std::nullopt;
    if (!sol.optimal()) throw PricingError("dual LP unbounded; the consistent price systems are not normalized");
    DualSolve out{sol.value, {}};
    for (std::size_t i = 0; i < tree.size(); ++i) out.m.push_back(block(sol.point, i * d, d));
    return out;
}

AmericanDual american_dual_price(const Market& market, const AdaptedProcess& Z, std::size_t j,
                                 const std::vector<MixedStoppingTime>& grid, Sense sense) {
    AmericanDual out;
    bool found = false;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        auto s = solve_dual_lp(market, Z, j, grid[k], sense);
        if (!s) throw PricingError("no consistent price system for a grid stopping time");
        out.values.push_back(s->value);
        const bool better = sense == Sense::Maximize ? s->value > out.value : s->value < out.value;
        if (!found || better) {
            found = true;
            out.best = k;
            out.value = s->value;
            out.pair = {std::move(s->m), j, grid[k], {}};
        }
    }
    if (!found) throw PricingError("empty stopping-time grid");
    return out;
}

namespace {

DualReport scan(const Market& market, const GamePayoffs& payoffs, std::size_t j, Side side,
                const std::vector<MixedStoppingTime>& outer, const std::vector<MixedStoppingTime>& inner) {
    const EventTree& tree = market.tree();
    const bool seller = side == Side::Seller;
    DualReport r{side, j, {}, 0, 0};
    for (std::size_t k = 0; k < outer.size(); ++k) {
        validate_mst(tree, outer[k]);
        const AdaptedProcess Z = seller ? payoff_Q_phi(tree, payoffs, outer[k]) : payoff_Q_psi(tree, payoffs, outer[k]);
        AmericanDual a = american_dual_price(market, Z, j, inner, seller ? Sense::Maximize : Sense::Minimize);
        a.pair.opponent = outer[k];
        const bool better = seller ? a.value < r.value : a.value > r.value;
        if (k == 0 || better) {
            r.best = k;
            r.value = a.value;
        }
        r.entries.push_back({outer[k], std::move(a)});
    }
    if (outer.empty()) throw PricingError("empty outer stopping-time grid");
    return r;
}

}  // namespace

DualReport seller_dual_price(const Market& market, const GamePayoffs& payoffs, std::size_t j,
                             const std::vector<MixedStoppingTime>& outer, const std::vector<MixedStoppingTime>& inner) {
    return scan(market, payoffs, j, Side::Seller, outer, inner);
}

DualReport buyer_dual_price(const Market& market, const GamePayoffs& payoffs, std::size_t j,
                            const std::vector<MixedStoppingTime>& outer, const std::vector<MixedStoppingTime>& inner) {
    return scan(market, payoffs, j, Side::Buyer, outer, inner);
}

bool certify(const Market& market, const GamePayoffs& payoffs, const DualPair& pair, Side side, const Rational& price) {
    const EventTree& tree = market.tree();
    if (!is_valid_mst(tree, pair.stopping) || !is_valid_mst(tree, pair.opponent)) return false;
    if (!is_dual_feasible(market, pair.m, pair.currency, pair.stopping)) return false;
    const bool seller = side == Side::Seller;
    const AdaptedProcess Z = seller ? payoff_Q_phi(tree, payoffs, pair.opponent) : payoff_Q_psi(tree, payoffs, pair.opponent);
    const Rational v = dual_objective(Z, pair.m, pair.stopping);
    return seller ? v <= price : v >= price;
}

}  // namespace gradhedge
