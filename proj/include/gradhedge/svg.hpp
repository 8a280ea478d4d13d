#pragma once

#include "gradhedge/pricing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gradhedge {

struct PlotSet {
    std::string label;
    Polyhedron set;
};

struct PlotMarker {
    std::string label;
    Vec point;
};

struct PlotRange {
    Rational xmin, xmax, ymin, ymax;
};

/// Sets of the ladders at `node` by name: Y, X, W, V, Z or conv, optionally
/// suffixed with a (seller, the default) or b (buyer). For the seller conv is
/// conv{V, X}; for the buyer it is conv{V ∩ X, Y}, and VX names V ∩ X.
/// Throws std::invalid_argument for unknown names.
std::vector<PlotSet> ladder_sets(const EventTree& tree, const SetLadder& seller, const SetLadder& buyer,
                                 std::size_t node, const std::vector<std::string>& names);

/// Box around the vertices and markers, padded, or [-1, 1]^2 when there are none.
PlotRange default_range(const std::vector<PlotSet>& sets, const std::vector<PlotMarker>& markers);

/// Deterministic SVG 1.1 figure of planar sets clipped to `range`: hatched
/// regions, facet lines and labelled markers. The exact halfspaces of every
/// set are embedded in <metadata>. Throws std::invalid_argument unless d = 2.
std::string render_svg(const std::vector<PlotSet>& sets, const std::vector<PlotMarker>& markers,
                       const PlotRange& range, const std::string& title);

}  // namespace gradhedge
