#include "gradhedge/market.hpp"

#include "lp_blocks.hpp"

#include <algorithm>

namespace gradhedge {

using detail::add_membership;
using detail::block;
using detail::Term;

void validate_rates(const RateMatrix& pi, std::size_t d) {
    if (pi.size() != d) throw MarketError("exchange-rate matrix has wrong size");
    for (std::size_t j = 0; j < d; ++j) {
        if (pi[j].size() != d) throw MarketError("exchange-rate matrix has wrong size");
        for (std::size_t k = 0; k < d; ++k) {
            if (pi[j][k] <= 0) throw MarketError("exchange rates must be positive");
            if (j == k && pi[j][k] != 1) throw MarketError("exchange-rate diagonal must be 1");
        }
    }
}

Polyhedron solvency_cone(const RateMatrix& pi) {
    const std::size_t d = pi.size();
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < d; ++j) gens.push_back(unit(d, j));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            if (j == k) continue;
            Vec g = scaled(unit(d, j), pi[j][k]);
            g[k] -= 1;
            gens.push_back(std::move(g));
        }
    }
    return Polyhedron::cone(d, std::move(gens));
}

ConeField deferred_cones(const EventTree& tree, const std::vector<RateMatrix>& rates) {
    ConeField f;
    f.K.resize(tree.size());
    f.Q.resize(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) f.K[i] = solvency_cone(rates.at(i));
    for (std::size_t i = tree.size(); i-- > 0;) {
        const Node& n = tree.node(i);
        if (n.children.empty()) {
            f.Q[i] = f.K[i];
            continue;
        }
        std::vector<const Polyhedron*> kids;
        for (std::size_t c : n.children) kids.push_back(&f.Q[c]);
        f.Q[i] = minkowski_sum(intersect_all(tree.dim(), kids), f.K[i]);
    }
    return f;
}

Market::Market(EventTree tree, std::vector<RateMatrix> rates) : tree_(std::move(tree)), rates_(std::move(rates)) {
    if (rates_.size() != tree_.size()) throw MarketError("one exchange-rate matrix per node is required");
    for (const auto& pi : rates_) validate_rates(pi, tree_.dim());
    cones_ = deferred_cones(tree_, rates_);
    for (std::size_t i = 0; i < tree_.size(); ++i) {
        k_polar_.push_back(polar(cones_.K[i]));
        q_polar_.push_back(polar(cones_.Q[i]));
    }
}

namespace {

// Offsets of the d-blocks for next[i] at every non-leaf node.
std::vector<std::size_t> non_leaf_offsets(const EventTree& tree, const std::vector<std::size_t>& nodes,
                                          std::size_t& count) {
    std::vector<std::size_t> off(tree.size(), SIZE_MAX);
    for (std::size_t i : nodes) {
        if (tree.is_leaf(i)) continue;
        off[i] = count;
        count += tree.dim();
    }
    return off;
}

std::vector<std::size_t> all_nodes(const EventTree& tree) {
    std::vector<std::size_t> v(tree.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

std::vector<std::size_t> subtree_nodes(const EventTree& tree, std::size_t start) {
    std::vector<std::size_t> out, stack{start};
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        out.push_back(n);
        for (std::size_t c : tree.node(n).children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ArbitrageReport find_arbitrage(const Market& market) {
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim();
    std::size_t nv = 0;
    const auto y_off = non_leaf_offsets(tree, all_nodes(tree), nv);
    std::vector<std::size_t> x_off(tree.size(), SIZE_MAX);
    for (std::size_t leaf : tree.leaves()) {
        x_off[leaf] = nv;
        nv += d;
    }

    LpProblem lp(nv, Sense::Maximize);
    lp.nonnegative.assign(nv, false);
    for (std::size_t leaf : tree.leaves()) {
        for (std::size_t j = 0; j < d; ++j) {
            lp.objective[x_off[leaf] + j] = 1;
            lp.nonnegative[x_off[leaf] + j] = true;
            Vec row = zeros(nv);
            row[x_off[leaf] + j] = 1;
            lp.add_le(std::move(row), 1);
        }
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const Node& n = tree.node(i);
        std::vector<Term> terms;
        if (n.parent) terms.push_back({y_off[*n.parent], Rational(1)});
        terms.push_back({tree.is_leaf(i) ? x_off[i] : y_off[i], Rational(-1)});
        add_membership(lp, market.K(i), terms, zeros(d));
    }
    const auto sol = lp_solve(lp);

    ArbitrageReport r;
    r.witness = zero_predictable(tree);
    r.witness_payout = constant_process(tree, zeros(d));
    if (!sol.optimal() || sol.value.is_zero()) return r;  // the caller treats this as inconsistent
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (y_off[i] != SIZE_MAX) r.witness.next[i] = block(sol.point, y_off[i], d);
        if (x_off[i] != SIZE_MAX) r.witness_payout[i] = block(sol.point, x_off[i], d);
    }
    return r;
}

}  // namespace

ArbitrageReport check_no_arbitrage(const Market& market) {
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim();
    const std::size_t nv = tree.size() * d;

    LpProblem lp(nv);
    lp.nonnegative.assign(nv, false);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        add_membership(lp, market.K_polar(i), {{i * d, Rational(1)}}, zeros(d));
        const Node& n = tree.node(i);
        if (!n.children.empty()) {
            for (std::size_t j = 0; j < d; ++j) {
                Vec row = zeros(nv);
                row[i * d + j] = 1;
                for (std::size_t c : n.children) row[c * d + j] = -1;
                lp.add_eq(std::move(row), 0);
            }
        } else {
            Vec row = zeros(nv);
            for (std::size_t j = 0; j < d; ++j) {
                row[i * d + j] = 1;
                lp.objective[i * d + j] = 1;
            }
            lp.add_ge(std::move(row), 1);
        }
    }
    const auto sol = lp_solve(lp);
    if (sol.optimal()) {
        ArbitrageReport r;
        r.arbitrage_free = true;
        for (std::size_t i = 0; i < tree.size(); ++i) r.certificate.push_back(block(sol.point, i * d, d));
        return r;
    }
    ArbitrageReport r = find_arbitrage(market);
    if (!is_valid_arbitrage(market, r.witness, r.witness_payout))
        throw MarketError("no consistent price system exists but no arbitrage witness was found");
    return r;
}

bool is_valid_certificate(const Market& market, const AdaptedProcess& m) {
    const EventTree& tree = market.tree();
    if (m.size() != tree.size()) return false;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (m[i].size() != tree.dim() || !contains(market.K_polar(i), m[i])) return false;
        const Node& n = tree.node(i);
        if (n.children.empty()) {
            Rational s = 0;
            for (const auto& x : m[i]) s += x;
            if (s < 1) return false;
        } else {
            Vec sum = zeros(tree.dim());
            for (std::size_t c : n.children) sum = add(sum, m[c]);
            if (sum != m[i]) return false;
        }
    }
    return true;
}

bool is_valid_arbitrage(const Market& market, const PredictableProcess& y, const AdaptedProcess& x) {
    const EventTree& tree = market.tree();
    if (!is_zero(y.initial)) return false;
    bool nonzero = false;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const Node& n = tree.node(i);
        const Vec& before = n.parent ? y.next[*n.parent] : y.initial;
        if (tree.is_leaf(i)) {
            for (const auto& c : x[i])
                if (c < 0) return false;
            nonzero = nonzero || !is_zero(x[i]);
            if (!contains(market.K(i), sub(before, x[i]))) return false;
        } else if (!contains(market.K(i), sub(before, y.next[i]))) {
            return false;
        }
    }
    return nonzero;
}

ConsistentPriceSystem price_system_from_certificate(const EventTree& tree, const AdaptedProcess& m) {
    auto total = [](const Vec& v) {
        Rational s = 0;
        for (const auto& x : v) s += x;
        return s;
    };
    const Rational mass = total(m.at(EventTree::root()));
    ConsistentPriceSystem cps;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        cps.q.push_back(total(m[i]) / mass);
        cps.S.push_back(scaled(m[i], 1 / cps.q.back()));
    }
    return cps;
}

Liquidation liquidation_strategy(const Market& market, std::size_t start, const Vec& x) {
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim();
    if (x.size() != d) throw PreconditionError("liquidation: portfolio has wrong dimension");
    if (const Halfspace* h = violated_halfspace(market.Q(start), x))
        throw PreconditionError("liquidation: portfolio " + to_string(x) + " is not in the deferred solvency cone at '" +
                                tree.node(start).id + "' (violates " + to_string(*h) + ")");

    Liquidation out{start, x, std::vector<Vec>(tree.size(), zeros(d))};
    if (tree.is_leaf(start)) return out;

    const auto nodes = subtree_nodes(tree, start);
    std::size_t nv = 0;
    const auto off = non_leaf_offsets(tree, nodes, nv);
    LpProblem lp(nv);
    lp.nonnegative.assign(nv, false);
    for (std::size_t i : nodes) {
        std::vector<Term> terms;
        Vec constant = zeros(d);
        if (i == start) constant = x;
        else terms.push_back({off[*tree.node(i).parent], Rational(1)});
        if (!tree.is_leaf(i)) terms.push_back({off[i], Rational(-1)});
        add_membership(lp, market.K(i), terms, constant);
    }
    const auto sol = lp_solve(lp);
    if (!sol.optimal()) throw MarketError("liquidation LP infeasible although the portfolio is deferred-solvent");
    for (std::size_t i : nodes)
        if (off[i] != SIZE_MAX) out.next[i] = block(sol.point, off[i], d);
    return out;
}

bool is_valid_liquidation(const Market& market, const Liquidation& l) {
    const EventTree& tree = market.tree();
    for (const std::size_t i : subtree_nodes(tree, l.start)) {
        const Vec& before = i == l.start ? l.x : l.next[*tree.node(i).parent];
        const Vec& after = tree.is_leaf(i) ? zeros(tree.dim()) : l.next[i];
        if (!contains(market.K(i), sub(before, after))) return false;
    }
    return true;
}

}  // namespace gradhedge
