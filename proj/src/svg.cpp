#include "gradhedge/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gradhedge {

std::vector<PlotSet> ladder_sets(const EventTree& tree, const SetLadder& seller, const SetLadder& buyer,
                                 std::size_t node, const std::vector<std::string>& names) {
    if (tree.dim() != 2) throw std::invalid_argument("figures need d = 2");
    const std::string& id = tree.node(node).id;
    std::vector<PlotSet> out;
    for (const std::string& raw : names) {
        std::string name = raw;
        bool buy = false;
        if (name.size() > 1 && (name.back() == 'a' || name.back() == 'b')) {
            buy = name.back() == 'b';
            name.pop_back();
        }
        const SetLadder& L = buy ? buyer : seller;
        Polyhedron p;
        if (name == "Y") p = L.Y[node];
        else if (name == "X") p = L.X[node];
        else if (name == "W") p = L.W[node];
        else if (name == "V") p = L.V[node];
        else if (name == "Z") p = L.Z[node];
        else if (name == "VX" && buy) p = intersect(L.V[node], L.X[node]);
        else if (name == "conv") p = buy ? hull_union(intersect(L.V[node], L.X[node]), L.Y[node]) : hull_union(L.V[node], L.X[node]);
        else throw std::invalid_argument("unknown set name '" + raw + "'");
        out.push_back({name + (buy ? "^b" : "^a") + "(" + id + ")", std::move(p)});
    }
    return out;
}

PlotRange default_range(const std::vector<PlotSet>& sets, const std::vector<PlotMarker>& markers) {
    std::vector<Vec> pts;
    for (const auto& s : sets)
        if (!s.set.is_empty()) pts.insert(pts.end(), s.set.points().begin(), s.set.points().end());
    for (const auto& m : markers) pts.push_back(m.point);
    if (pts.empty()) return {-1, 1, -1, 1};
    PlotRange r{pts[0][0], pts[0][0], pts[0][1], pts[0][1]};
    for (const auto& p : pts) {
        r.xmin = std::min(r.xmin, p[0]);
        r.xmax = std::max(r.xmax, p[0]);
        r.ymin = std::min(r.ymin, p[1]);
        r.ymax = std::max(r.ymax, p[1]);
    }
    auto pad = [](Rational& lo, Rational& hi) {
        const Rational span = hi - lo;
        const Rational m = span.is_zero() ? Rational(1) : span / 4;
        lo -= m;
        hi += m;
    };
    pad(r.xmin, r.xmax);
    pad(r.ymin, r.ymax);
    return r;
}

namespace {

using Point = std::array<Rational, 2>;

std::vector<Point> clip(const Polyhedron& p, const PlotRange& r) {
    std::vector<Point> poly{{r.xmin, r.ymin}, {r.xmax, r.ymin}, {r.xmax, r.ymax}, {r.xmin, r.ymax}};
    if (p.is_empty()) return {};
    for (const auto& h : p.halfspaces()) {
        std::vector<Point> out;
        auto val = [&](const Point& x) { return h.a[0] * x[0] + h.a[1] * x[1] - h.b; };
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Point& a = poly[k];
            const Point& b = poly[(k + 1) % poly.size()];
            const Rational va = val(a), vb = val(b);
            if (va >= 0) out.push_back(a);
            if ((va >= 0) != (vb >= 0)) {
                const Rational t = va / (va - vb);
                out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
            }
        }
        std::vector<Point> dedup;
        for (const auto& x : out)
            if (dedup.empty() || dedup.back() != x) dedup.push_back(x);
        while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
        poly = std::move(dedup);
        if (poly.empty()) break;
    }
    return poly;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '"') out += "&quot;";
        else out += c;
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

constexpr double kSize = 480, kMargin = 40;
constexpr const char* kColors[] = {"#4d4d4d", "#1f5fa8", "#a83232", "#2e7d32", "#8e44ad", "#b7791f"};
constexpr int kAngles[] = {45, -45, 0, 90, 30, -30};

}  // namespace

std::string render_svg(const std::vector<PlotSet>& sets, const std::vector<PlotMarker>& markers,
                       const PlotRange& range, const std::string& title) {
    for (const auto& s : sets)
        if (s.set.dim() != 2) throw std::invalid_argument("figures need d = 2");
    for (const auto& m : markers)
        if (m.point.size() != 2) throw std::invalid_argument("figures need d = 2");
    if (range.xmin >= range.xmax || range.ymin >= range.ymax) throw std::invalid_argument("empty plot range");

    const double x0 = to_double(range.xmin), x1 = to_double(range.xmax);
    const double y0 = to_double(range.ymin), y1 = to_double(range.ymax);
    const double span = kSize - 2 * kMargin;
    auto px = [&](const Rational& x) { return num(kMargin + (to_double(x) - x0) / (x1 - x0) * span); };
    auto py = [&](const Rational& y) { return num(kSize - kMargin - (to_double(y) - y0) / (y1 - y0) * span); };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    o << "<title>" << escape(title) << "</title>\n";

    o << "<metadata>\n";
    o << "range x1 [" << to_string(range.xmin) << ", " << to_string(range.xmax) << "] x2 [" << to_string(range.ymin)
      << ", " << to_string(range.ymax) << "]\n";
    for (const auto& s : sets) {
        o << "set " << escape(s.label) << ":";
        if (s.set.is_empty()) o << " empty";
        for (const auto& h : s.set.halfspaces()) o << " {" << escape(to_string(h)) << "}";
        o << "\n";
    }
    for (const auto& m : markers) o << "marker " << escape(m.label) << ": " << escape(to_string(m.point)) << "\n";
    o << "</metadata>\n";

    o << "<defs>\n";
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const std::size_t c = k % std::size(kColors);
        o << "<pattern id=\"hatch" << k << "\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\""
          << " patternTransform=\"rotate(" << kAngles[c] << ")\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\""
          << kColors[c] << "\" stroke-width=\"1\" stroke-opacity=\"0.6\"/></pattern>\n";
    }
    o << "</defs>\n";

    o << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(span) << "\" height=\""
      << num(span) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"0.5\"/>\n";

    for (std::size_t k = 0; k < sets.size(); ++k) {
        const auto poly = clip(sets[k].set, range);
        const std::size_t c = k % std::size(kColors);
        o << "<g id=\"set" << k << "\">\n";
        if (poly.size() >= 3) {
            o << "<polygon fill=\"url(#hatch" << k << ")\" stroke=\"none\" points=\"";
            for (std::size_t i = 0; i < poly.size(); ++i) o << (i ? " " : "") << px(poly[i][0]) << "," << py(poly[i][1]);
            o << "\"/>\n";
        }
        // A two-point polygon is a segment; walk its single edge once.
        const std::size_t edges = poly.size() == 2 ? 1 : poly.size();
        for (const auto& h : sets[k].set.halfspaces()) {
            for (std::size_t i = 0; i < edges; ++i) {
                const Point& a = poly[i];
                const Point& b = poly[(i + 1) % poly.size()];
                if (a == b) continue;
                if (h.a[0] * a[0] + h.a[1] * a[1] != h.b || h.a[0] * b[0] + h.a[1] * b[1] != h.b) continue;
                o << "<line x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1]) << "\" x2=\"" << px(b[0]) << "\" y2=\""
                  << py(b[1]) << "\" stroke=\"" << kColors[c] << "\" stroke-width=\"1.5\"/>\n";
            }
        }
        o << "</g>\n";
    }

    if (range.ymin <= 0 && 0 <= range.ymax)
        o << "<line x1=\"" << px(range.xmin) << "\" y1=\"" << py(0) << "\" x2=\"" << px(range.xmax) << "\" y2=\""
          << py(0) << "\" stroke=\"black\" stroke-width=\"0.75\"/>\n";
    if (range.xmin <= 0 && 0 <= range.xmax)
        o << "<line x1=\"" << px(0) << "\" y1=\"" << py(range.ymin) << "\" x2=\"" << px(0) << "\" y2=\""
          << py(range.ymax) << "\" stroke=\"black\" stroke-width=\"0.75\"/>\n";
    o << "<text x=\"" << num(kSize - kMargin) << "\" y=\"" << num(kSize - kMargin / 3)
      << "\" font-size=\"12\" text-anchor=\"end\">x1</text>\n";
    o << "<text x=\"" << num(kMargin / 3) << "\" y=\"" << num(kMargin)
      << "\" font-size=\"12\">x2</text>\n";

    for (const auto& m : markers) {
        o << "<circle cx=\"" << px(m.point[0]) << "\" cy=\"" << py(m.point[1]) << "\" r=\"3\" fill=\"black\"/>\n";
        o << "<text x=\"" << px(m.point[0]) << "\" y=\"" << py(m.point[1]) << "\" dx=\"5\" dy=\"-5\" font-size=\"12\">"
          << escape(m.label) << "</text>\n";
    }

    if (!sets.empty()) {
        std::size_t longest = 0;
        for (const auto& s : sets) longest = std::max(longest, s.label.size());
        o << "<rect x=\"" << num(kMargin + 4) << "\" y=\"" << num(kMargin + 2) << "\" width=\""
          << num(30 + 7 * static_cast<double>(longest)) << "\" height=\"" << num(8 + 16 * static_cast<double>(sets.size()))
          << "\" fill=\"white\" fill-opacity=\"0.9\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
    }
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const double y = kMargin + 16 + 16 * static_cast<double>(k);
        o << "<rect x=\"" << num(kMargin + 8) << "\" y=\"" << num(y - 10) << "\" width=\"12\" height=\"12\" fill=\"url(#hatch"
          << k << ")\" stroke=\"" << kColors[k % std::size(kColors)] << "\"/>\n";
        o << "<text x=\"" << num(kMargin + 26) << "\" y=\"" << num(y) << "\" font-size=\"12\">" << escape(sets[k].label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace gradhedge
