#pragma once

#include "gradhedge/model.hpp"
#include "support/oracles.hpp"

#include <map>

#include <string>

namespace fixture {

using namespace gradhedge;

inline std::string model_path(const std::string& name) { return std::string(GRADHEDGE_MODELS_DIR) + "/" + name; }

inline const Model& fig1() {
    static const Model m = load_model(model_path("fig1.json"));
    return m;
}

/// Two-currency rates: one unit of asset 2 costs a12 units of asset 1 and one
/// unit of asset 1 costs a21 units of asset 2.
inline RateMatrix rates2(const Rational& a12, const Rational& a21) {
    return {{Rational(1), a12}, {a21, Rational(1)}};
}

/// Frictionless two-currency rates at exchange rate s (units of asset 2 per asset 1).
inline RateMatrix frictionless(const Rational& s) { return rates2(1 / s, s); }

struct NodeData {
    std::string id;
    std::string parent;
    Rational branch_prob;
    RateMatrix pi;
    Vec y, x;
};

inline Model make_model(std::size_t d, int horizon, const std::vector<NodeData>& nodes) {
    std::vector<NodeSpec> specs;
    std::unordered_map<std::string, int> time;
    for (const auto& n : nodes) {
        const int t = n.parent.empty() ? 0 : time.at(n.parent) + 1;
        time[n.id] = t;
        specs.push_back({n.id, t, n.parent, n.branch_prob});
    }
    EventTree tree = EventTree::build(d, horizon, specs);
    std::vector<RateMatrix> rates(tree.size());
    GamePayoffs pay{AdaptedProcess(tree.size()), AdaptedProcess(tree.size())};
    for (const auto& n : nodes) {
        const std::size_t i = tree.index(n.id);
        rates[i] = n.pi;
        pay.Y[i] = n.y.empty() ? zeros(d) : n.y;
        pay.X[i] = n.x.empty() ? pay.Y[i] : n.x;
    }
    Model m{Market(std::move(tree), std::move(rates)), std::move(pay)};
    validate_payoffs(m.market, m.payoffs);
    return m;
}

/// Frictionless one-step tree: root rate s0, leaves with the given rates.
inline Model one_step(const Rational& s0, const std::vector<Rational>& leaf_rates) {
    std::vector<NodeData> nodes{{"r", "", Rational(1), frictionless(s0), {}, {}}};
    for (std::size_t k = 0; k < leaf_rates.size(); ++k)
        nodes.push_back({"l" + std::to_string(k), "r", Rational(1) / static_cast<long>(leaf_rates.size()),
                         frictionless(leaf_rates[k]), {}, {}});
    return make_model(2, 1, nodes);
}

/// The same option with payoffs replaced.
inline Model with_payoffs(const Model& m, GamePayoffs p) {
    Model out{m.market, std::move(p)};
    validate_payoffs(out.market, out.payoffs);
    return out;
}

inline GamePayoffs zero_payoffs(const EventTree& tree) {
    return {constant_process(tree, zeros(tree.dim())), constant_process(tree, zeros(tree.dim()))};
}

}  // namespace fixture
