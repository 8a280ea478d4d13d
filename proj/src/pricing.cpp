#include "gradhedge/pricing.hpp"

#include "lp_blocks.hpp"

#include <map>

namespace gradhedge {

using detail::add_membership;
using detail::block;

std::string to_string(Side side) { return side == Side::Seller ? "seller" : "buyer"; }

SetLadder build_ladder(const Market& market, const GamePayoffs& payoffs, Side side) {
    const EventTree& tree = market.tree();
    const std::size_t n = tree.size(), d = tree.dim();
    validate_payoffs(market, payoffs);

    SetLadder L;
    L.side = side;
    L.Y.resize(n);
    L.X.resize(n);
    L.W.resize(n);
    L.V.resize(n);
    L.Z.resize(n);
    const Rational sign = side == Side::Seller ? 1 : -1;
    for (std::size_t i = n; i-- > 0;) {
        L.Y[i] = translate(market.Q(i), scaled(payoffs.Y[i], sign));
        L.X[i] = translate(market.Q(i), scaled(payoffs.X[i], sign));
        const Node& node = tree.node(i);
        if (node.children.empty()) {
            L.W[i] = L.V[i] = Polyhedron::full(d);
            L.Z[i] = L.Y[i];
        } else {
            std::vector<const Polyhedron*> kids;
            for (std::size_t c : node.children) kids.push_back(&L.Z[c]);
            L.W[i] = intersect_all(d, kids);
            L.V[i] = minkowski_sum(L.W[i], market.Q(i));
            L.Z[i] = side == Side::Seller ? intersect(hull_union(L.V[i], L.X[i]), L.Y[i])
                                          : hull_union(intersect(L.V[i], L.X[i]), L.Y[i]);
        }
        if (L.Z[i].is_empty())
            throw PricingError("the " + to_string(side) + "'s set Z at node '" + node.id +
                               "' is empty; the market admits arbitrage (run the no-arbitrage check)");
    }
    return L;
}

SetLadder seller_ladder(const Market& market, const GamePayoffs& payoffs) {
    return build_ladder(market, payoffs, Side::Seller);
}

SetLadder buyer_ladder(const Market& market, const GamePayoffs& payoffs) {
    return build_ladder(market, payoffs, Side::Buyer);
}

namespace {

Rational axis_minimum(const SetLadder& ladder, std::size_t j) {
    const AxisMinimum m = min_along_axis(ladder.Z.at(EventTree::root()), j);
    if (m.kind == AxisMinimum::Kind::UnboundedBelow)
        throw PricingError("Z_0 is unbounded along currency " + std::to_string(j + 1) + "; the market admits arbitrage");
    if (m.kind == AxisMinimum::Kind::Infeasible)
        throw PricingError("Z_0 does not meet the axis of currency " + std::to_string(j + 1));
    return m.value;
}

}  // namespace

Rational ask_price(const SetLadder& seller, std::size_t j) {
    if (seller.side != Side::Seller) throw PricingError("ask price needs the seller's ladder");
    return axis_minimum(seller, j);
}

Rational bid_price(const SetLadder& buyer, std::size_t j) {
    if (buyer.side != Side::Buyer) throw PricingError("bid price needs the buyer's ladder");
    return -axis_minimum(buyer, j);
}

namespace {

struct Split {
    Rational lambda;
    Vec carried;  // (1 - λ) v
};

// Least λ in [0, 1] with a ∈ (1 - λ)P + λR, written with carried = (1 - λ)v so
// that the constraints stay linear: A_P carried >= (1 - λ) b_P and
// A_R (a - carried) >= λ b_R.
Split least_split(const Polyhedron& P, const Polyhedron& R, const Vec& a) {
    const std::size_t d = a.size();
    LpProblem lp(d + 1);
    lp.nonnegative.assign(d + 1, false);
    lp.nonnegative[d] = true;
    lp.objective[d] = 1;
    for (const auto& h : P.halfspaces()) {
        Vec row = h.a;
        row.push_back(h.b);
        lp.add_ge(std::move(row), h.b);
    }
    for (const auto& h : R.halfspaces()) {
        Vec row = negated(h.a);
        row.push_back(-h.b);
        lp.add_ge(std::move(row), -dot(h.a, a));
    }
    Vec cap = zeros(d + 1);
    cap[d] = 1;
    lp.add_le(std::move(cap), 1);
    const auto sol = lp_solve(lp);
    if (!sol.optimal()) throw PricingError("no convex decomposition of the backbone point");
    return {sol.point[d], block(sol.point, 0, d)};
}

// Some w ∈ target with v - w ∈ cone. Among those, the one minimizing the sum
// of the cone's facet slacks, so w is as close to v as the geometry allows.
Vec project_along(const Polyhedron& target, const Polyhedron& cone, const Vec& v) {
    if (contains(target, v)) return v;
    const std::size_t d = v.size();
    LpProblem lp(d);
    lp.nonnegative.assign(d, false);
    add_membership(lp, target, {{0, Rational(1)}}, zeros(d));
    add_membership(lp, cone, {{0, Rational(-1)}}, v);
    for (const auto& h : cone.halfspaces()) lp.objective = sub(lp.objective, h.a);
    const auto sol = lp_solve(lp);
    if (!sol.optimal()) throw PricingError("backbone point cannot be moved into W along the deferred cone");
    return sol.point;
}

const Vec& incoming(const EventTree& tree, const PredictableProcess& z, std::size_t i) {
    const Node& n = tree.node(i);
    return n.parent ? z.next[*n.parent] : z.initial;
}

}  // namespace

LambdaHedge extract_lambda_hedge(const Market& market, const GamePayoffs& payoffs, const SetLadder& ladder,
                                 const Vec& initial) {
    const EventTree& tree = market.tree();
    const std::size_t n = tree.size(), d = tree.dim();
    if (initial.size() != d) throw PricingError("initial endowment has wrong dimension");
    if (const Halfspace* h = violated_halfspace(ladder.Z[0], initial))
        throw InfeasibleInitial("initial endowment " + to_string(initial) + " is outside Z_0 (violates " +
                                    to_string(*h) + ")",
                                *h);

    const bool seller = ladder.side == Side::Seller;
    LambdaHedge out{ladder.side, MixedStoppingTime(n, Rational(0)), zero_predictable(tree)};
    out.backbone.initial = initial;
    ScalarProcess left(n, Rational(1));

    for (std::size_t i = 0; i < n; ++i) {
        const Node& node = tree.node(i);
        if (node.parent) left[i] = left[*node.parent] - out.stopping[*node.parent];
        const Rational f = left[i];
        if (node.children.empty()) {
            out.stopping[i] = f;
            continue;
        }
        // Nothing left to stop: the incoming portfolio is deferred-solvent and
        // is liquidated by the full hedge.
        if (f.is_zero()) continue;

        const Vec a = scaled(incoming(tree, out.backbone, i), 1 / f);
        const Polyhedron P = seller ? ladder.V[i] : intersect(ladder.V[i], ladder.X[i]);
        const Polyhedron& R = seller ? ladder.X[i] : ladder.Y[i];
        const Split s = least_split(P, R, a);
        out.stopping[i] = f * s.lambda;

        if (s.lambda < 1) {
            const Vec v = s.lambda.is_zero() && contains(P, a) ? a : scaled(s.carried, 1 / (1 - s.lambda));
            const Vec w = project_along(ladder.W[i], market.Q(i), v);
            out.backbone.next[i] = scaled(w, f * (1 - s.lambda));
        } else if (!contains(R, a)) {
            // Stopped completely, but only in the closure of the hull: the
            // carried part is a recession direction of P and is passed on.
            const Vec w = project_along(recession_cone(ladder.W[i]), market.Q(i), s.carried);
            out.backbone.next[i] = scaled(w, f);
        }
    }

    if (const std::string why = lambda_violation(market, payoffs, out); !why.empty())
        throw PricingError("extracted hedge fails its own check: " + why);
    return out;
}

std::string lambda_violation(const Market& market, const GamePayoffs& payoffs, const LambdaHedge& hedge) {
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim();
    if (!is_valid_mst(tree, hedge.stopping)) return "stopping process is not a mixed stopping time";
    if (hedge.backbone.initial.size() != d || hedge.backbone.next.size() != tree.size())
        return "backbone has wrong shape";
    const StarProcess st = star(tree, hedge.stopping);
    const bool seller = hedge.side == Side::Seller;

    for (std::size_t i = 0; i < tree.size(); ++i) {
        const std::string& id = tree.node(i).id;
        const Vec& z = incoming(tree, hedge.backbone, i);
        const bool leaf = tree.is_leaf(i);
        if (leaf && !is_zero(hedge.backbone.next[i])) return "nonzero portfolio after the horizon at '" + id + "'";
        const Rational& stop = hedge.stopping[i];

        Vec step = seller ? sub(z, scaled(payoffs.X[i], stop)) : add(z, scaled(payoffs.Y[i], stop));
        step = sub(step, hedge.backbone.next[i]);
        if (!leaf && !contains(market.Q(i), step))
            return "rebalancing residual " + to_string(step) + " not deferred-solvent at '" + id + "'";

        Vec settle = seller ? sub(z, scaled(payoffs.Y[i], st.current[i]))
                            : add(add(z, scaled(payoffs.Y[i], stop)), scaled(payoffs.X[i], st.next[i]));
        if (!contains(market.Q(i), settle))
            return "settlement residual " + to_string(settle) + " not deferred-solvent at '" + id + "'";
    }
    return {};
}

bool is_valid_lambda_hedge(const Market& market, const GamePayoffs& payoffs, const LambdaHedge& hedge) {
    return lambda_violation(market, payoffs, hedge).empty();
}

AdaptedProcess normalized_backbone(const EventTree& tree, const LambdaHedge& hedge) {
    const StarProcess st = star(tree, hedge.stopping);
    AdaptedProcess out(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const Vec& z = incoming(tree, hedge.backbone, i);
        out[i] = st.current[i].is_zero() ? z : scaled(z, 1 / st.current[i]);
    }
    return out;
}

HedgeRecipe lambda_to_full_hedge(const Market& market, const GamePayoffs& payoffs, const LambdaHedge& hedge) {
    if (const std::string why = lambda_violation(market, payoffs, hedge); !why.empty())
        throw PricingError("cannot convert an invalid hedge: " + why);
    const EventTree& tree = market.tree();
    const std::size_t d = tree.dim();
    const StarProcess st = star(tree, hedge.stopping);
    const bool seller = hedge.side == Side::Seller;

    HedgeRecipe r{hedge, {}, {}};
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const Vec& z = incoming(tree, hedge.backbone, i);
        const Rational& stop = hedge.stopping[i];
        if (tree.is_leaf(i)) {
            r.y.push_back({i, zeros(d), std::vector<Vec>(tree.size(), zeros(d))});
        } else {
            Vec step = seller ? sub(z, scaled(payoffs.X[i], stop)) : add(z, scaled(payoffs.Y[i], stop));
            r.y.push_back(liquidation_strategy(market, i, sub(step, hedge.backbone.next[i])));
        }
        Vec settle = seller ? sub(z, scaled(payoffs.Y[i], st.current[i]))
                            : add(add(z, scaled(payoffs.Y[i], stop)), scaled(payoffs.X[i], st.next[i]));
        r.x.push_back(liquidation_strategy(market, i, settle));
    }
    return r;
}

PredictableProcess evaluate_recipe(const EventTree& tree, const HedgeRecipe& recipe,
                                   const MixedStoppingTime& opponent) {
    const StarProcess os = star(tree, opponent);
    PredictableProcess u = zero_predictable(tree);
    u.initial = recipe.hedge.backbone.initial;
    for (std::size_t p = 0; p < tree.size(); ++p) {
        if (tree.is_leaf(p)) continue;
        Vec v = scaled(recipe.hedge.backbone.next[p], os.next[p]);
        for (std::size_t a : tree.path_to(p)) {
            axpy(v, os.next[a], recipe.y[a].next[p]);
            axpy(v, opponent[a], recipe.x[a].next[p]);
        }
        u.next[p] = std::move(v);
    }
    return u;
}

HedgeReport verify_hedge(const Market& market, const GamePayoffs& payoffs, const HedgeRecipe& recipe,
                         const std::vector<MixedStoppingTime>& opponents) {
    const EventTree& tree = market.tree();
    const bool seller = recipe.hedge.side == Side::Seller;
    const MixedStoppingTime& own = recipe.hedge.stopping;
    const StarProcess own_star = star(tree, own);

    HedgeReport report;
    // Portfolio for the step after node p, keyed by p and the opponent's
    // values on the path to p.
    std::map<std::pair<std::size_t, std::vector<Rational>>, Vec> seen;

    for (std::size_t k = 0; k < opponents.size(); ++k) {
        const MixedStoppingTime& opp = opponents[k];
        if (!is_valid_mst(tree, opp)) {
            report.violations.push_back({k, tree.node(0).id, "opponent is not a mixed stopping time"});
            continue;
        }
        ++report.opponents_checked;
        const StarProcess opp_star = star(tree, opp);
        const PredictableProcess u = evaluate_recipe(tree, recipe, opp);

        for (std::size_t i = 0; i < tree.size(); ++i) {
            const Vec& before = incoming(tree, u, i);
            const Vec& after = u.next[i];
            const Vec g = seller ? payoff_G(payoffs, own, own_star, opp, opp_star, i)
                                 : payoff_G(payoffs, opp, opp_star, own, own_star, i);
            const Vec residual = seller ? sub(sub(before, g), after) : sub(add(before, g), after);
            if (!contains(market.K(i), residual))
                report.violations.push_back(
                    {k, tree.node(i).id, "rebalancing residual " + to_string(residual) + " not solvent"});

            if (tree.is_leaf(i)) continue;
            std::vector<Rational> prefix;
            for (std::size_t a : tree.path_to(i)) prefix.push_back(opp[a]);
            auto [it, inserted] = seen.emplace(std::make_pair(i, std::move(prefix)), after);
            if (!inserted) {
                ++report.anticipation_checks;
                if (it->second != after)
                    report.violations.push_back(
                        {k, tree.node(i).id, "portfolio depends on the opponent's future stopping"});
            }
        }
    }
    return report;
}

}  // namespace gradhedge
