// Command-line front end. Exit codes: 0 ok, 1 bad input, 2 arbitrage,
// 3 initial endowment outside Z_0, 4 verification failed.

#include "gradhedge/io.hpp"
#include "gradhedge/model.hpp"
#include "gradhedge/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gradhedge;

namespace {

enum Exit { kOk = 0, kInput = 1, kArbitrage = 2, kInfeasible = 3, kFailed = 4 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::string decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", to_double(r));
    return buf;
}

std::size_t currency_index(const Model& m, int j) {
    if (j < 1 || static_cast<std::size_t>(j) > m.tree().dim())
        throw InputError("currency must be between 1 and " + std::to_string(m.tree().dim()));
    return static_cast<std::size_t>(j - 1);
}

// Returns false (after printing the diagnostic) if the market admits arbitrage.
bool require_no_arbitrage(const Model& m) {
    const auto r = check_no_arbitrage(m.market);
    if (r.arbitrage_free) return true;
    std::cerr << "arbitrage: no consistent price system exists, so there is no certificate; "
                 "run arb-check for the witness strategy\n";
    return false;
}

Side parse_side(const std::string& s) {
    if (s == "seller" || s == "ask") return Side::Seller;
    if (s == "buyer" || s == "bid") return Side::Buyer;
    throw InputError("side must be seller or buyer");
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string hedge_summary(const EventTree& tree, const LambdaHedge& h) {
    const char* verb = h.side == Side::Seller ? "cancel" : "exercise";
    auto mass = [&](std::size_t i) {
        const Rational& r = h.stopping[i];
        return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : to_string(r);
    };
    std::ostringstream o;
    o << to_string(h.side) << " hedge from " << to_string(h.backbone.initial) << "\n";
    for (std::size_t i = 0; i < tree.size(); ++i)
        if (!h.stopping[i].is_zero())
            o << verb << " " << mass(i) << " at " << tree.node(i).id << " (t=" << tree.node(i).time << ")\n";
    for (std::size_t leaf : tree.leaves()) {
        o << "path " << tree.node(leaf).id << ":";
        bool first = true;
        for (std::size_t i : tree.path_to(leaf)) {
            if (h.stopping[i].is_zero()) continue;
            // The leaf is named by the path itself.
            o << (first ? " " + std::string(verb) + " " : ", ") << mass(i) << " at ";
            if (i == leaf) o << "t=" << tree.node(i).time;
            else o << tree.node(i).id << " (t=" << tree.node(i).time << ")";
            first = false;
        }
        o << "\n";
    }
    return o.str();
}

int cmd_price(const std::string& model_path, int currency, const std::string& side) {
    const Model m = load_model(model_path);
    const std::size_t j = currency_index(m, currency);
    if (side != "ask" && side != "bid" && side != "both") throw InputError("side must be ask, bid or both");
    if (!require_no_arbitrage(m)) return kArbitrage;
    std::optional<Rational> ask, bid;
    if (side != "ask") bid = bid_price(buyer_ladder(m.market, m.payoffs), j);
    if (side != "bid") ask = ask_price(seller_ladder(m.market, m.payoffs), j);
    std::string exact, approx;
    if (bid) {
        exact += "bid " + to_string(*bid);
        approx += "bid " + decimal(*bid);
    }
    if (ask) {
        exact += std::string(bid ? " " : "") + "ask " + to_string(*ask);
        approx += std::string(bid ? " " : "") + "ask " + decimal(*ask);
    }
    std::cout << exact << "\n" << "approx " << approx << "\n";
    return kOk;
}

int cmd_hedge(const std::string& model_path, int currency, const std::string& side_name, const std::string& initial,
              const std::string& out_path) {
    const Model m = load_model(model_path);
    const std::size_t j = currency_index(m, currency);
    const Side side = parse_side(side_name);
    if (!require_no_arbitrage(m)) return kArbitrage;
    const SetLadder ladder = build_ladder(m.market, m.payoffs, side);
    Vec x0;
    if (initial.empty()) {
        x0 = zeros(m.tree().dim());
        x0[j] = side == Side::Seller ? ask_price(ladder, j) : -bid_price(ladder, j);
    } else {
        x0 = parse_vector(initial);
    }
    if (x0.size() != m.tree().dim()) throw InputError("initial endowment has wrong dimension");
    LambdaHedge h;
    try {
        h = extract_lambda_hedge(m.market, m.payoffs, ladder, x0);
    } catch (const InfeasibleInitial& e) {
        std::cerr << "infeasible initial endowment: " << to_string(x0) << " violates " << to_string(e.violated)
                  << "\n";
        return kInfeasible;
    }
    const HedgeRecipe recipe = lambda_to_full_hedge(m.market, m.payoffs, h);
    write_file(out_path, recipe_to_json(m.tree(), recipe));
    std::cout << hedge_summary(m.tree(), h) << "recipe written to " << out_path << "\n";
    return kOk;
}

int cmd_verify(const std::string& model_path, const std::string& recipe_path, int grid) {
    const Model m = load_model(model_path);
    if (grid < 1) throw InputError("grid resolution must be positive");
    const HedgeRecipe recipe = parse_recipe(m.tree(), read_file(recipe_path));
    const auto report = verify_hedge(m.market, m.payoffs, recipe, mst_grid(m.tree(), grid));
    std::cout << hedge_report_to_json(m.tree(), report);
    return report.passed() ? kOk : kFailed;
}

int cmd_dual_check(const std::string& model_path, int currency, int grid, int outer_grid, const std::string& out_path) {
    const Model m = load_model(model_path);
    const std::size_t j = currency_index(m, currency);
    if (grid < 1) throw InputError("grid resolution must be positive");
    if (!require_no_arbitrage(m)) return kArbitrage;
    const EventTree& tree = m.tree();

    const SetLadder s = seller_ladder(m.market, m.payoffs), b = buyer_ladder(m.market, m.payoffs);
    const Rational ask = ask_price(s, j), bid = bid_price(b, j);
    Vec xs = zeros(tree.dim()), xb = zeros(tree.dim());
    xs[j] = ask;
    xb[j] = -bid;
    std::vector<MixedStoppingTime> outer_s{extract_lambda_hedge(m.market, m.payoffs, s, xs).stopping};
    std::vector<MixedStoppingTime> outer_b{extract_lambda_hedge(m.market, m.payoffs, b, xb).stopping};
    if (outer_grid > 0) {
        for (auto& phi : mst_grid(tree, outer_grid)) {
            outer_s.push_back(phi);
            outer_b.push_back(phi);
        }
    }
    const auto inner = mst_grid(tree, grid);
    const DualReport rs = seller_dual_price(m.market, m.payoffs, j, outer_s, inner);
    const DualReport rb = buyer_dual_price(m.market, m.payoffs, j, outer_b, inner);

    // The first outer entry is the extracted optimum, where weak duality must hold.
    const AmericanDual& at_phi = rs.entries.front().inner;
    const AmericanDual& at_psi = rb.entries.front().inner;
    bool sandwich = true;
    for (const auto& v : at_phi.values) sandwich = sandwich && v <= ask;
    for (const auto& v : at_psi.values) sandwich = sandwich && v >= bid;
    sandwich = sandwich && certify(m.market, m.payoffs, at_phi.pair, Side::Seller, ask) &&
               certify(m.market, m.payoffs, at_psi.pair, Side::Buyer, bid);

    std::cout << "grid: " << inner.size() << " stopping times at resolution 1/" << grid << "\n";
    std::cout << "seller: max at extracted phi " << to_string(at_phi.value) << " <= ask " << to_string(ask) << "\n";
    std::cout << "buyer: min at extracted psi " << to_string(at_psi.value) << " >= bid " << to_string(bid) << "\n";
    if (outer_grid > 0)
        std::cout << "outer scan: seller min " << to_string(rs.value) << ", buyer max " << to_string(rb.value) << "\n";
    std::cout << "ask gap " << to_string(ask - at_phi.value) << ", bid gap " << to_string(at_psi.value - bid) << "\n";
    std::cout << "sandwich " << (sandwich ? "holds" : "VIOLATED") << "\n";
    if (!out_path.empty())
        write_file(out_path, "[\n" + dual_report_to_json(tree, rs, ask) + ",\n" + dual_report_to_json(tree, rb, bid) + "]\n");
    return sandwich ? kOk : kFailed;
}

int cmd_arb_check(const std::string& model_path, const std::string& out_path) {
    const Model m = load_model(model_path);
    const auto r = check_no_arbitrage(m.market);
    const std::string doc = certificate_to_json(m.tree(), r);
    if (r.arbitrage_free) {
        const bool ok = is_valid_certificate(m.market, r.certificate);
        std::cout << "no-arbitrage, certificate emitted" << (ok ? "" : " (certificate FAILED its re-check)") << "\n";
        if (!out_path.empty()) write_file(out_path, doc);
        else std::cout << doc;
        return ok ? kOk : kFailed;
    }
    std::cout << "arbitrage: no consistent price system exists; witness strategy emitted\n";
    if (!out_path.empty()) write_file(out_path, doc);
    else std::cout << doc;
    return kArbitrage;
}

int cmd_plot(const std::string& model_path, const std::string& node, const std::string& sets,
             const std::vector<std::string>& markers, const std::string& xrange, const std::string& yrange,
             const std::string& out_path) {
    const Model m = load_model(model_path);
    if (m.tree().dim() != 2) throw InputError("plot needs d = 2");
    if (!m.tree().has(node)) throw InputError("unknown node '" + node + "'");
    const std::size_t i = m.tree().index(node);
    const auto names = split(sets);
    std::vector<PlotSet> plot;
    if (!names.empty()) {
        if (!require_no_arbitrage(m)) return kArbitrage;
        try {
            plot = ladder_sets(m.tree(), seller_ladder(m.market, m.payoffs), buyer_ladder(m.market, m.payoffs), i, names);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    std::vector<PlotMarker> marks;
    for (const auto& spec : markers) {
        const auto eq = spec.find('=');
        marks.push_back({eq == std::string::npos ? spec : spec.substr(0, eq),
                         parse_vector(eq == std::string::npos ? spec : spec.substr(eq + 1))});
        if (marks.back().point.size() != 2) throw InputError("markers need two coordinates");
    }
    PlotRange range = default_range(plot, marks);
    if (!xrange.empty() || !yrange.empty()) {
        auto read = [](const std::string& text, Rational& lo, Rational& hi) {
            if (text.empty()) return;
            const Vec v = parse_vector(text);
            if (v.size() != 2 || v[0] >= v[1]) throw InputError("a range is two increasing numbers 'lo,hi'");
            lo = v[0];
            hi = v[1];
        };
        read(xrange, range.xmin, range.xmax);
        read(yrange, range.ymin, range.ymax);
    }
    write_file(out_path, render_svg(plot, marks, range, "node " + node));
    std::cout << "figure written to " << out_path << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact pricing and hedging of game options with gradual exercise and cancellation"};
    app.require_subcommand(1);

    std::string model, side = "both", initial, out, recipe, node, sets, xrange, yrange;
    int currency = 1, grid = 4, outer_grid = 0;
    std::vector<std::string> markers;

    auto* price = app.add_subcommand("price", "bid and ask prices");
    price->add_option("--model", model, "model JSON")->required();
    price->add_option("--currency", currency, "currency index J (1-based)")->required();
    price->add_option("--side", side, "ask, bid or both");

    auto* hedge = app.add_subcommand("hedge", "extract a superhedging recipe");
    hedge->add_option("--model", model, "model JSON")->required();
    hedge->add_option("--currency", currency, "currency index J (1-based)")->required();
    hedge->add_option("--side", side, "seller or buyer")->required();
    hedge->add_option("--initial", initial, "initial endowment 'x1,x2,...' (default: the price in currency J)");
    hedge->add_option("--out", out, "recipe JSON to write")->required();

    auto* verify = app.add_subcommand("verify", "check a recipe against a grid of opponents");
    verify->add_option("--model", model, "model JSON")->required();
    verify->add_option("--recipe", recipe, "recipe JSON")->required();
    verify->add_option("--grid", grid, "grid resolution N");

    auto* dual = app.add_subcommand("dual-check", "compare primal prices with the dual grid");
    dual->add_option("--model", model, "model JSON")->required();
    dual->add_option("--currency", currency, "currency index J (1-based)")->required();
    dual->add_option("--grid", grid, "inner grid resolution N");
    dual->add_option("--outer-grid", outer_grid, "also scan an outer grid of this resolution");
    dual->add_option("--out", out, "write the dual reports as JSON");

    auto* arb = app.add_subcommand("arb-check", "no-arbitrage certificate or arbitrage witness");
    arb->add_option("--model", model, "model JSON")->required();
    arb->add_option("--out", out, "write the certificate JSON here instead of stdout");

    auto* plot = app.add_subcommand("plot", "SVG figure of the sets at one node (d = 2)");
    plot->add_option("--model", model, "model JSON")->required();
    plot->add_option("--node", node, "node id")->required();
    plot->add_option("--sets", sets, "comma-separated names: Y,X,W,V,Z,conv (suffix a or b for the side)");
    plot->add_option("--marker", markers, "labelled point 'label=x1,x2' (repeatable)");
    plot->add_option("--xrange", xrange, "'lo,hi' for x1");
    plot->add_option("--yrange", yrange, "'lo,hi' for x2");
    plot->add_option("--out", out, "SVG file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (price->parsed()) return cmd_price(model, currency, side);
        if (hedge->parsed()) return cmd_hedge(model, currency, side, initial, out);
        if (verify->parsed()) return cmd_verify(model, recipe, grid);
        if (dual->parsed()) return cmd_dual_check(model, currency, grid, outer_grid, out);
        if (arb->parsed()) return cmd_arb_check(model, out);
        if (plot->parsed()) return cmd_plot(model, node, sets, markers, xrange, yrange, out);
    } catch (const PricingError& e) {
        std::cerr << "arbitrage: " << e.what() << "\n";
        return kArbitrage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
