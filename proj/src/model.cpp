#include "gradhedge/model.hpp"

#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace gradhedge {

using nlohmann::json;

Model parse_model(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model is not valid JSON: ") + e.what());
    }
    detail::check_schema(doc, "model");
    const auto d = detail::get<std::size_t>(doc, "d");
    const auto horizon = detail::get<int>(doc, "T");
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw ParseError("model: missing 'nodes' array");

    std::vector<NodeSpec> specs;
    struct Raw {
        RateMatrix pi;
        Vec y, x;
    };
    std::vector<std::pair<std::string, Raw>> raw;
    for (const auto& n : doc["nodes"]) {
        NodeSpec s;
        s.id = detail::get<std::string>(n, "id");
        s.time = detail::get<int>(n, "time");
        if (n.contains("parent") && !n["parent"].is_null()) s.parent = detail::get<std::string>(n, "parent");
        if (n.contains("branch_prob")) s.branch_prob = detail::rational_from(n["branch_prob"]);
        Raw r;
        if (!n.contains("pi") || !n["pi"].is_array()) throw ParseError("model: node '" + s.id + "' lacks 'pi'");
        for (const auto& row : n["pi"]) r.pi.push_back(detail::vec_from(row));
        r.y = detail::vec_from(n.at("Y"));
        r.x = detail::vec_from(n.at("X"));
        raw.emplace_back(s.id, std::move(r));
        specs.push_back(std::move(s));
    }

    EventTree tree = EventTree::build(d, horizon, specs);
    std::vector<RateMatrix> rates(tree.size());
    GamePayoffs payoffs{AdaptedProcess(tree.size()), AdaptedProcess(tree.size())};
    for (auto& [id, r] : raw) {
        const std::size_t i = tree.index(id);
        rates[i] = std::move(r.pi);
        payoffs.Y[i] = std::move(r.y);
        payoffs.X[i] = std::move(r.x);
    }
    Model m{Market(std::move(tree), std::move(rates)), std::move(payoffs)};
    validate_payoffs(m.market, m.payoffs);
    return m;
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_to_json(const Model& model) {
    const EventTree& tree = model.tree();
    json doc;
    doc["schema"] = 1;
    doc["d"] = tree.dim();
    doc["T"] = tree.horizon();
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const Node& n = tree.node(i);
        json j;
        j["id"] = n.id;
        j["time"] = n.time;
        j["parent"] = n.parent ? json(tree.node(*n.parent).id) : json(nullptr);
        j["branch_prob"] = to_string(n.branch_prob);
        json pi = json::array();
        for (const auto& row : model.market.rates(i)) pi.push_back(detail::to_json(row));
        j["pi"] = pi;
        j["Y"] = detail::to_json(model.payoffs.Y[i]);
        j["X"] = detail::to_json(model.payoffs.X[i]);
        nodes.push_back(j);
    }
    doc["nodes"] = nodes;
    return doc.dump(2) + "\n";
}

}  // namespace gradhedge
