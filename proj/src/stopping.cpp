#include "gradhedge/stopping.hpp"

#include <algorithm>

namespace gradhedge {

namespace {

// Mass not yet stopped on arrival at each node (phi*_t).
ScalarProcess remaining(const EventTree& tree, const MixedStoppingTime& phi) {
    ScalarProcess r(tree.size(), Rational(1));
    for (std::size_t i = 1; i < tree.size(); ++i) {
        const std::size_t p = *tree.node(i).parent;
        r[i] = r[p] - phi[p];
    }
    return r;
}

std::vector<std::size_t> non_leaves(const EventTree& tree) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tree.size(); ++i)
        if (!tree.is_leaf(i)) out.push_back(i);
    return out;
}

}  // namespace

void validate_mst(const EventTree& tree, const MixedStoppingTime& phi) {
    if (phi.size() != tree.size()) throw StoppingError("stopping time has wrong number of nodes");
    const ScalarProcess r = remaining(tree, phi);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (phi[i] < 0) throw StoppingError("negative stopping mass at '" + tree.node(i).id + "'");
        if (phi[i] > r[i]) throw StoppingError("stopping mass exceeds 1 along the path to '" + tree.node(i).id + "'");
        if (tree.is_leaf(i) && phi[i] != r[i])
            throw StoppingError("stopping masses do not sum to 1 along the path to '" + tree.node(i).id + "'");
    }
}

bool is_valid_mst(const EventTree& tree, const MixedStoppingTime& phi) {
    try {
        validate_mst(tree, phi);
        return true;
    } catch (const StoppingError&) {
        return false;
    }
}

StarProcess star(const EventTree& tree, const MixedStoppingTime& phi) {
    StarProcess s;
    s.current = remaining(tree, phi);
    s.next.resize(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) s.next[i] = s.current[i] - phi[i];
    return s;
}

MixedStoppingTime embed_stopping_time(const EventTree& tree, const std::vector<bool>& stop_here) {
    if (stop_here.size() != tree.size()) throw StoppingError("stopping region has wrong number of nodes");
    MixedStoppingTime phi(tree.size(), Rational(0));
    for (std::size_t leaf : tree.leaves()) {
        int hits = 0;
        for (std::size_t n : tree.path_to(leaf)) hits += stop_here[n] ? 1 : 0;
        if (hits != 1)
            throw StoppingError("path to '" + tree.node(leaf).id + "' meets the stopping region " +
                                std::to_string(hits) + " times");
    }
    for (std::size_t i = 0; i < tree.size(); ++i)
        if (stop_here[i]) phi[i] = 1;
    return phi;
}

MixedStoppingTime first_hitting_time(const EventTree& tree, const std::function<bool(std::size_t)>& hit) {
    std::vector<bool> stopped_before(tree.size(), false), region(tree.size(), false);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& n = tree.node(i);
        if (n.parent) stopped_before[i] = stopped_before[*n.parent] || region[*n.parent];
        if (!stopped_before[i] && (hit(i) || tree.is_leaf(i))) region[i] = true;
    }
    return embed_stopping_time(tree, region);
}

MixedStoppingTime deterministic_time(const EventTree& tree, int t) {
    if (t < 0 || t > tree.horizon()) throw StoppingError("deterministic time outside [0, T]");
    return first_hitting_time(tree, [&](std::size_t i) { return tree.node(i).time == t; });
}

MixedStoppingTime mst_min(const EventTree& tree, const MixedStoppingTime& psi, const MixedStoppingTime& phi) {
    const StarProcess ps = star(tree, psi), fs = star(tree, phi);
    MixedStoppingTime out(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) out[i] = psi[i] * fs.current[i] + ps.next[i] * phi[i];
    return out;
}

std::vector<Vec> evaluate_at(const EventTree& tree, const AdaptedProcess& x, const MixedStoppingTime& phi) {
    std::vector<Vec> out;
    for (std::size_t leaf : tree.leaves()) {
        Vec v = zeros(x.at(0).size());
        for (std::size_t n : tree.path_to(leaf)) axpy(v, phi[n], x[n]);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Rational> evaluate_at(const EventTree& tree, const ScalarProcess& x, const MixedStoppingTime& phi) {
    std::vector<Rational> out;
    for (std::size_t leaf : tree.leaves()) {
        Rational v = 0;
        for (std::size_t n : tree.path_to(leaf)) v += phi[n] * x[n];
        out.push_back(v);
    }
    return out;
}

void validate_payoffs(const Market& market, const GamePayoffs& payoffs) {
    const EventTree& tree = market.tree();
    if (payoffs.Y.size() != tree.size() || payoffs.X.size() != tree.size())
        throw StoppingError("payoff processes need one value per node");
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (payoffs.Y[i].size() != tree.dim() || payoffs.X[i].size() != tree.dim())
            throw StoppingError("payoff at '" + tree.node(i).id + "' has wrong dimension");
        if (!contains(market.K(i), sub(payoffs.X[i], payoffs.Y[i])))
            throw StoppingError("X - Y is not solvent at '" + tree.node(i).id + "'");
    }
}

Vec payoff_G(const GamePayoffs& payoffs, const MixedStoppingTime& phi, const StarProcess& phi_star,
             const MixedStoppingTime& psi, const StarProcess& psi_star, std::size_t node) {
    Vec g = scaled(payoffs.Y[node], psi[node] * phi_star.current[node]);
    axpy(g, psi_star.next[node] * phi[node], payoffs.X[node]);
    return g;
}

Vec payoff_G(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& phi,
             const MixedStoppingTime& psi, std::size_t node) {
    return payoff_G(payoffs, phi, star(tree, phi), psi, star(tree, psi), node);
}

AdaptedProcess payoff_Q_phi(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& phi) {
    const StarProcess fs = star(tree, phi);
    AdaptedProcess cancelled(tree.size()), out(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& n = tree.node(i);
        cancelled[i] = n.parent ? cancelled[*n.parent] : zeros(tree.dim());
        out[i] = add(scaled(payoffs.Y[i], fs.current[i]), cancelled[i]);
        axpy(cancelled[i], phi[i], payoffs.X[i]);
    }
    return out;
}

AdaptedProcess payoff_Q_psi(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& psi) {
    const StarProcess ps = star(tree, psi);
    AdaptedProcess exercised(tree.size()), out(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& n = tree.node(i);
        exercised[i] = n.parent ? exercised[*n.parent] : zeros(tree.dim());
        axpy(exercised[i], psi[i], payoffs.Y[i]);
        out[i] = add(exercised[i], scaled(payoffs.X[i], ps.next[i]));
    }
    return out;
}

Vec payoff_Q_times(const EventTree& tree, const GamePayoffs& payoffs, std::size_t leaf, int s, int t) {
    const auto path = tree.path_to(leaf);
    if (s < 0 || t < 0 || s > tree.horizon() || t > tree.horizon()) throw StoppingError("time outside [0, T]");
    return s >= t ? payoffs.Y[path[static_cast<std::size_t>(t)]] : payoffs.X[path[static_cast<std::size_t>(s)]];
}

Vec payoff_Q_total(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& phi,
                   const MixedStoppingTime& psi, std::size_t leaf) {
    const auto path = tree.path_to(leaf);
    Vec total = zeros(tree.dim());
    for (int s = 0; s <= tree.horizon(); ++s) {
        for (int t = 0; t <= tree.horizon(); ++t) {
            const Rational w = phi[path[static_cast<std::size_t>(s)]] * psi[path[static_cast<std::size_t>(t)]];
            if (!w.is_zero()) axpy(total, w, payoff_Q_times(tree, payoffs, leaf, s, t));
        }
    }
    return total;
}

std::vector<MixedStoppingTime> mst_lattice_grid(const EventTree& tree, int n) {
    if (n < 1) throw StoppingError("grid resolution must be positive");
    const auto inner = non_leaves(tree);
    std::vector<MixedStoppingTime> out;
    // Masses in units of 1/n.
    std::vector<int> units(tree.size(), 0), left(tree.size(), n);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == inner.size()) {
            MixedStoppingTime phi(tree.size());
            for (std::size_t i = 0; i < tree.size(); ++i) {
                const int r = tree.node(i).parent ? left[*tree.node(i).parent] - units[*tree.node(i).parent] : n;
                phi[i] = Rational(tree.is_leaf(i) ? r : units[i]) / n;
            }
            out.push_back(std::move(phi));
            return;
        }
        const std::size_t i = inner[k];
        const auto& node = tree.node(i);
        left[i] = node.parent ? left[*node.parent] - units[*node.parent] : n;
        for (int u = 0; u <= left[i]; ++u) {
            units[i] = u;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<MixedStoppingTime> mst_conditional_grid(const EventTree& tree, int n) {
    if (n < 1) throw StoppingError("grid resolution must be positive");
    const auto inner = non_leaves(tree);
    std::vector<MixedStoppingTime> out;
    std::vector<int> frac(tree.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == inner.size()) {
            MixedStoppingTime phi(tree.size());
            ScalarProcess r(tree.size(), Rational(1));
            for (std::size_t i = 0; i < tree.size(); ++i) {
                if (tree.node(i).parent) r[i] = r[*tree.node(i).parent] - phi[*tree.node(i).parent];
                phi[i] = tree.is_leaf(i) ? r[i] : r[i] * frac[i] / n;
            }
            out.push_back(std::move(phi));
            return;
        }
        for (int u = 0; u <= n; ++u) {
            frac[inner[k]] = u;
            rec(k + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<MixedStoppingTime> mst_grid(const EventTree& tree, int n) {
    auto out = mst_lattice_grid(tree, n);
    auto cond = mst_conditional_grid(tree, n);
    out.insert(out.end(), std::make_move_iterator(cond.begin()), std::make_move_iterator(cond.end()));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<MixedStoppingTime> mst_grid(const EventTree& tree, const std::vector<int>& resolutions) {
    std::vector<MixedStoppingTime> out;
    for (int n : resolutions) {
        auto g = mst_grid(tree, n);
        out.insert(out.end(), std::make_move_iterator(g.begin()), std::make_move_iterator(g.end()));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace gradhedge
