#pragma once

#include "gradhedge/dual.hpp"
#include "gradhedge/pricing.hpp"

#include <string>
#include <string_view>

namespace gradhedge {

/// Mixed stopping times as {"node id": "p/q"} objects.
std::string mst_to_json(const EventTree& tree, const MixedStoppingTime& phi);

/// Recipes name nodes by id, so they can only be read back against the same tree:
///   {"schema": 1, "side", "initial", "nodes": [{"id", "stop", "z_next",
///    "y": {"start", "next": {id: vec}}, "x": {...}}]}
std::string recipe_to_json(const EventTree& tree, const HedgeRecipe& recipe);
/// Throws ParseError on malformed input or ids not in `tree`.
HedgeRecipe parse_recipe(const EventTree& tree, std::string_view json_text);

std::string hedge_report_to_json(const EventTree& tree, const HedgeReport& report);

/// `primal` is the ask (seller) or bid (buyer) the report is compared with;
/// the gap is ask - value or value - bid.
std::string dual_report_to_json(const EventTree& tree, const DualReport& report, const Rational& primal);

std::string certificate_to_json(const EventTree& tree, const ArbitrageReport& report);

/// Every set of the ladder as halfspace lists, node by node.
std::string ladder_to_json(const EventTree& tree, const SetLadder& ladder);

}  // namespace gradhedge
