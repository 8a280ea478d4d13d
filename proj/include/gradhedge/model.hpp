#pragma once

#include "gradhedge/market.hpp"
#include "gradhedge/stopping.hpp"

#include <string>
#include <string_view>

namespace gradhedge {

/// A game option in a market: the unit the command-line tool works with.
struct Model {
    Market market;
    GamePayoffs payoffs;

    const EventTree& tree() const { return market.tree(); }
};

/// Parses the JSON model format:
///   {"schema": 1, "d": 2, "T": 2, "nodes": [{"id", "time", "parent",
///    "branch_prob", "pi", "Y", "X"}, ...]}
/// with every number given as a "p/q" string. Throws ParseError on malformed
/// input and TreeError / MarketError / StoppingError on invalid content.
Model parse_model(std::string_view json_text);
Model load_model(const std::string& path);
std::string model_to_json(const Model& model);

}  // namespace gradhedge
