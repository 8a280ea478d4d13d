#include "gradhedge/io.hpp"

#include "json_util.hpp"

namespace gradhedge {

using nlohmann::json;

namespace {

json mst_json(const EventTree& tree, const MixedStoppingTime& phi) {
    json j = json::object();
    for (std::size_t i = 0; i < tree.size(); ++i) j[tree.node(i).id] = to_string(phi[i]);
    return j;
}

json liquidation_json(const EventTree& tree, const Liquidation& l) {
    json next = json::object();
    for (std::size_t i = 0; i < tree.size(); ++i)
        if (!tree.is_leaf(i) && tree.is_ancestor(l.start, i)) next[tree.node(i).id] = detail::to_json(l.next[i]);
    return {{"start", detail::to_json(l.x)}, {"next", next}};
}

Liquidation parse_liquidation(const EventTree& tree, std::size_t start, const json& j) {
    Liquidation l{start, detail::vec_from(j.at("start")), std::vector<Vec>(tree.size(), zeros(tree.dim()))};
    if (!j.contains("next") || !j["next"].is_object()) throw ParseError("recipe: liquidation lacks 'next'");
    for (const auto& [id, v] : j["next"].items()) {
        if (!tree.has(id)) throw ParseError("recipe: unknown node '" + id + "'");
        l.next[tree.index(id)] = detail::vec_from(v);
    }
    return l;
}

Side parse_side(const std::string& s) {
    if (s == "seller") return Side::Seller;
    if (s == "buyer") return Side::Buyer;
    throw ParseError("recipe: side must be 'seller' or 'buyer'");
}

}  // namespace

std::string mst_to_json(const EventTree& tree, const MixedStoppingTime& phi) { return mst_json(tree, phi).dump(); }

std::string recipe_to_json(const EventTree& tree, const HedgeRecipe& recipe) {
    json doc;
    doc["schema"] = 1;
    doc["side"] = to_string(recipe.hedge.side);
    doc["initial"] = detail::to_json(recipe.hedge.backbone.initial);
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        nodes.push_back({{"id", tree.node(i).id},
                         {"stop", to_string(recipe.hedge.stopping[i])},
                         {"z_next", detail::to_json(recipe.hedge.backbone.next[i])},
                         {"y", liquidation_json(tree, recipe.y[i])},
                         {"x", liquidation_json(tree, recipe.x[i])}});
    }
    doc["nodes"] = nodes;
    return doc.dump(2) + "\n";
}

HedgeRecipe parse_recipe(const EventTree& tree, std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("recipe is not valid JSON: ") + e.what());
    }
    detail::check_schema(doc, "recipe");
    const std::size_t n = tree.size(), d = tree.dim();
    HedgeRecipe r;
    r.hedge.side = parse_side(detail::get<std::string>(doc, "side"));
    r.hedge.stopping.assign(n, Rational(0));
    r.hedge.backbone = zero_predictable(tree);
    r.hedge.backbone.initial = detail::vec_from(doc.at("initial"));
    r.y.resize(n);
    r.x.resize(n);
    if (!doc.contains("nodes") || !doc["nodes"].is_array() || doc["nodes"].size() != n)
        throw ParseError("recipe: 'nodes' must list every node of the model");
    std::vector<bool> seen(n, false);
    try {
        for (const auto& node : doc["nodes"]) {
            const auto id = detail::get<std::string>(node, "id");
            if (!tree.has(id)) throw ParseError("recipe: unknown node '" + id + "'");
            const std::size_t i = tree.index(id);
            if (seen[i]) throw ParseError("recipe: node '" + id + "' listed twice");
            seen[i] = true;
            r.hedge.stopping[i] = detail::rational_from(node.at("stop"));
            r.hedge.backbone.next[i] = detail::vec_from(node.at("z_next"));
            r.y[i] = parse_liquidation(tree, i, node.at("y"));
            r.x[i] = parse_liquidation(tree, i, node.at("x"));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("recipe: ") + e.what());
    }
    auto check = [&](const Vec& v) {
        if (v.size() != d) throw ParseError("recipe: portfolio has wrong dimension");
    };
    check(r.hedge.backbone.initial);
    for (std::size_t i = 0; i < n; ++i) {
        check(r.hedge.backbone.next[i]);
        check(r.y[i].x);
        check(r.x[i].x);
        for (std::size_t k = 0; k < n; ++k) {
            check(r.y[i].next[k]);
            check(r.x[i].next[k]);
        }
    }
    return r;
}

std::string hedge_report_to_json(const EventTree& tree, const HedgeReport& report) {
    (void)tree;
    json doc;
    doc["schema"] = 1;
    doc["passed"] = report.passed();
    doc["opponents_checked"] = report.opponents_checked;
    doc["anticipation_checks"] = report.anticipation_checks;
    json v = json::array();
    for (const auto& x : report.violations) v.push_back({{"opponent", x.opponent}, {"node", x.node}, {"what", x.what}});
    doc["violations"] = v;
    return doc.dump(2) + "\n";
}

std::string dual_report_to_json(const EventTree& tree, const DualReport& report, const Rational& primal) {
    const bool seller = report.side == Side::Seller;
    json doc;
    doc["schema"] = 1;
    doc["side"] = to_string(report.side);
    doc["currency"] = report.currency + 1;
    doc["primal"] = to_string(primal);
    doc["value"] = to_string(report.value);
    doc["gap"] = to_string(seller ? primal - report.value : report.value - primal);
    json entries = json::array();
    for (const auto& e : report.entries) {
        json values = json::array();
        for (const auto& v : e.inner.values) values.push_back(to_string(v));
        json m = json::object();
        for (std::size_t i = 0; i < tree.size(); ++i) m[tree.node(i).id] = detail::to_json(e.inner.pair.m[i]);
        entries.push_back({{"outer", mst_json(tree, e.outer)},
                           {"value", to_string(e.inner.value)},
                           {"argbest", mst_json(tree, e.inner.pair.stopping)},
                           {"m", m},
                           {"grid_values", values}});
    }
    doc["entries"] = entries;
    return doc.dump(2) + "\n";
}

std::string certificate_to_json(const EventTree& tree, const ArbitrageReport& report) {
    json doc;
    doc["schema"] = 1;
    doc["arbitrage_free"] = report.arbitrage_free;
    if (report.arbitrage_free) {
        json m = json::object();
        for (std::size_t i = 0; i < tree.size(); ++i) m[tree.node(i).id] = detail::to_json(report.certificate[i]);
        doc["certificate"] = m;
    } else {
        json y = json::object(), x = json::object();
        y["initial"] = detail::to_json(report.witness.initial);
        for (std::size_t i = 0; i < tree.size(); ++i) {
            if (!tree.is_leaf(i)) y[tree.node(i).id] = detail::to_json(report.witness.next[i]);
            else x[tree.node(i).id] = detail::to_json(report.witness_payout[i]);
        }
        doc["witness"] = {{"strategy", y}, {"payout", x}};
    }
    return doc.dump(2) + "\n";
}

std::string ladder_to_json(const EventTree& tree, const SetLadder& ladder) {
    json doc;
    doc["schema"] = 1;
    doc["side"] = to_string(ladder.side);
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        nodes.push_back({{"id", tree.node(i).id},
                         {"Y", detail::to_json(ladder.Y[i])},
                         {"X", detail::to_json(ladder.X[i])},
                         {"W", detail::to_json(ladder.W[i])},
                         {"V", detail::to_json(ladder.V[i])},
                         {"Z", detail::to_json(ladder.Z[i])}});
    }
    doc["nodes"] = nodes;
    return doc.dump(2) + "\n";
}

}  // namespace gradhedge
