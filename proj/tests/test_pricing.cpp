#include <doctest.h>

#include "gradhedge/pricing.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace gradhedge;
using oracle::q;
using oracle::vec;

namespace {

const Model& fig1() { return fixture::fig1(); }
const EventTree& tree() { return fig1().tree(); }
std::size_t at(const char* id) { return tree().index(id); }

const SetLadder& seller() {
    static const SetLadder l = seller_ladder(fig1().market, fig1().payoffs);
    return l;
}
const SetLadder& buyer() {
    static const SetLadder l = buyer_ladder(fig1().market, fig1().payoffs);
    return l;
}

Polyhedron h2(std::initializer_list<std::array<Rational, 3>> rows) {
    std::vector<Halfspace> hs;
    for (const auto& r : rows) hs.push_back({vec({r[0], r[1]}), r[2]});
    return Polyhedron::from_h(2, hs);
}

GamePayoffs scaled_payoffs(const GamePayoffs& p, const Rational& c) {
    GamePayoffs out = p;
    for (auto& y : out.Y) y = scaled(y, c);
    for (auto& x : out.X) x = scaled(x, c);
    return out;
}

// Builds a valid (phi, z) backwards from a random phi, taking at each step the
// componentwise maximum of what the memberships require plus a nonnegative
// margin. The orthant lies in every Q, so each membership holds.
LambdaHedge random_seller_hedge(oracle::Rng& rng, const Market& market, const GamePayoffs& pay) {
    const EventTree& t = market.tree();
    const std::size_t d = t.dim();
    LambdaHedge h{Side::Seller, gen::random_mst(rng, t), zero_predictable(t)};
    const StarProcess st = star(t, h.stopping);
    auto need = [&](std::size_t i) {
        Vec a = scaled(pay.Y[i], st.current[i]);
        const Vec b = add(scaled(pay.X[i], h.stopping[i]), h.backbone.next[i]);
        for (std::size_t j = 0; j < d; ++j) a[j] = std::max(a[j], b[j]);
        return a;
    };
    for (std::size_t p = t.size(); p-- > 0;) {
        if (t.is_leaf(p)) continue;
        Vec z = rng.vector(d, 0, 2, 2);
        for (std::size_t c : t.node(p).children) {
            const Vec r = need(c);
            for (std::size_t j = 0; j < d; ++j) z[j] = std::max(z[j], r[j] + rng.rational(0, 1, 2));
        }
        h.backbone.next[p] = z;
    }
    h.backbone.initial = add(need(0), rng.vector(d, 0, 2, 2));
    return h;
}

}  // namespace

TEST_CASE("golden seller sets") {
    CHECK(equal(seller().Z[at("uu")], h2({{14, 1, 9}})));
    CHECK(equal(seller().Z[at("u")], h2({{14, 1, 6}, {q(58, 5), 1, 6}, {10, 1, 4}})));
    CHECK(equal(seller().Z[at("d")], h2({{6, 1, q(4, 3)}})));
    CHECK(equal(seller().Z[at("root")], h2({{10, 1, q(14, 3)}})));
    CHECK(equal(seller().V[at("u")], seller().W[at("u")]));
}

TEST_CASE("golden buyer sets") {
    CHECK(equal(buyer().Z[at("u")], h2({{14, 1, -6}, {10, 1, -4}})));
    CHECK(equal(buyer().Z[at("d")], h2({{6, 1, q(-4, 3)}})));
    CHECK(equal(buyer().Z[at("root")], h2({{10, 1, q(-11, 3)}})));
}

TEST_CASE("leaf sets and final intersection") {
    for (std::size_t leaf : tree().leaves()) {
        CHECK(seller().Z[leaf] == seller().Y[leaf]);
        CHECK(buyer().Z[leaf] == buyer().Y[leaf]);
        CHECK(seller().W[leaf] == Polyhedron::full(2));
    }
    for (std::size_t i = 0; i < tree().size(); ++i) CHECK(subset(seller().Z[i], seller().Y[i]));
}

TEST_CASE("golden prices") {
    CHECK(ask_price(seller(), 1) == q(14, 3));
    CHECK(bid_price(buyer(), 1) == q(11, 3));
    CHECK_THROWS_AS(ask_price(buyer(), 1), PricingError);

    const auto doubled = scaled_payoffs(fig1().payoffs, 2);
    CHECK(ask_price(seller_ladder(fig1().market, doubled), 1) == q(28, 3));
    CHECK(bid_price(buyer_ladder(fig1().market, doubled), 1) == q(22, 3));
}

TEST_CASE("zero payoffs price to zero") {
    const auto zero = fixture::zero_payoffs(tree());
    const auto s = seller_ladder(fig1().market, zero);
    const auto b = buyer_ladder(fig1().market, zero);
    CHECK(equal(s.Z[0], fig1().market.Q(0)));
    CHECK(equal(b.Z[0], fig1().market.Q(0)));
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(ask_price(s, j) == 0);
        CHECK(bid_price(b, j) == 0);
    }

    const auto h = extract_lambda_hedge(fig1().market, zero, s, zeros(2));
    CHECK(h.stopping == deterministic_time(tree(), 2));
    CHECK(h.backbone == zero_predictable(tree()));
    const auto recipe = lambda_to_full_hedge(fig1().market, zero, h);
    for (const auto& psi : mst_grid(tree(), 2)) CHECK(evaluate_recipe(tree(), recipe, psi) == zero_predictable(tree()));
}

TEST_CASE("seller hedge from the ask") {
    const auto h = extract_lambda_hedge(fig1().market, fig1().payoffs, seller(), vec({0, q(14, 3)}));
    CHECK(h.stopping[at("root")] == 0);
    CHECK(h.stopping[at("u")] == q(1, 3));
    CHECK(h.stopping[at("uu")] == q(2, 3));
    CHECK(h.stopping[at("ud")] == q(2, 3));
    CHECK(h.backbone.next[at("root")] == vec({q(5, 6), q(-11, 3)}));
    CHECK(h.backbone.next[at("u")] == vec({q(5, 6), q(-17, 3)}));

    const auto a = normalized_backbone(tree(), h);
    CHECK(a[at("root")] == vec({0, q(14, 3)}));
    CHECK(a[at("u")] == vec({q(5, 6), q(-11, 3)}));
    CHECK(a[at("uu")] == vec({q(5, 4), q(-17, 2)}));
    // The decomposition at u: z_1 = (1/3)(0,6) + (2/3)(5/4,-17/2).
    CHECK(add(scaled(vec({0, 6}), q(1, 3)), scaled(a[at("uu")], q(2, 3))) == a[at("u")]);

    const auto recipe = lambda_to_full_hedge(fig1().market, fig1().payoffs, h);
    const auto report = verify_hedge(fig1().market, fig1().payoffs, recipe, mst_grid(tree(), 4));
    CHECK(report.passed());
    CHECK(report.opponents_checked == 113);
    CHECK(report.anticipation_checks > 0);
}

TEST_CASE("buyer hedge from the bid") {
    const auto h = extract_lambda_hedge(fig1().market, fig1().payoffs, buyer(), vec({0, q(-11, 3)}));
    CHECK(h.stopping[at("root")] == 0);
    CHECK(h.stopping[at("u")] == 0);
    CHECK(h.stopping[at("uu")] == 1);
    CHECK(h.backbone.next[at("root")] == vec({q(-7, 12), q(13, 6)}));
    CHECK(h.backbone.next[at("u")] == vec({q(-7, 12), q(13, 6)}));

    const auto recipe = lambda_to_full_hedge(fig1().market, fig1().payoffs, h);
    std::vector<MixedStoppingTime> opponents;
    for (int t = 0; t <= 2; ++t) opponents.push_back(deterministic_time(tree(), t));
    opponents.push_back(MixedStoppingTime(tree().size(), q(1, 3)));
    for (auto leaf : tree().leaves()) opponents.back()[leaf] = q(1, 3);
    CHECK(verify_hedge(fig1().market, fig1().payoffs, recipe, opponents).passed());
    CHECK(verify_hedge(fig1().market, fig1().payoffs, recipe, mst_grid(tree(), 4)).passed());
}

TEST_CASE("initial endowment below the ask is rejected") {
    try {
        extract_lambda_hedge(fig1().market, fig1().payoffs, seller(), vec({0, 4}));
        FAIL("expected rejection");
    } catch (const InfeasibleInitial& e) {
        CHECK(e.violated == Halfspace{vec({10, 1}), q(14, 3)});
    }
}

TEST_CASE("corrupted recipe is caught") {
    const auto h = extract_lambda_hedge(fig1().market, fig1().payoffs, seller(), vec({0, q(14, 3)}));
    auto recipe = lambda_to_full_hedge(fig1().market, fig1().payoffs, h);
    recipe.hedge.backbone.initial = add(recipe.hedge.backbone.initial, vec({0, -1}));
    const auto report = verify_hedge(fig1().market, fig1().payoffs, recipe, {deterministic_time(tree(), 2)});
    REQUIRE_FALSE(report.passed());
    CHECK(report.violations.front().node == "root");

    auto bad = h;
    bad.backbone.initial = vec({0, 4});
    CHECK_FALSE(is_valid_lambda_hedge(fig1().market, fig1().payoffs, bad));
    CHECK_THROWS_AS(lambda_to_full_hedge(fig1().market, fig1().payoffs, bad), PricingError);
}

TEST_CASE("pricing properties on random models") {
    oracle::Rng rng(2024);
    gen::Options opt;
    opt.max_horizon = 2;
    for (int trial = 0; trial < 25; ++trial) {
        CAPTURE(trial);
        const Model m = gen::random_model(rng, opt);
        const auto s = seller_ladder(m.market, m.payoffs);
        const auto b = buyer_ladder(m.market, m.payoffs);
        for (std::size_t j = 0; j < m.tree().dim(); ++j) {
            const Rational ask = ask_price(s, j), bid = bid_price(b, j);
            CHECK(bid <= ask);

            const Rational c = rng.rational(1, 4, 3);
            const auto sp = scaled_payoffs(m.payoffs, c);
            CHECK(ask_price(seller_ladder(m.market, sp), j) == c * ask);
            CHECK(bid_price(buyer_ladder(m.market, sp), j) == c * bid);
        }

        const auto dom = gen::dominating_payoffs(rng, m.market, m.payoffs);
        CHECK(ask_price(seller_ladder(m.market, dom), 0) >= ask_price(s, 0));

        // Every forward-built Λ-strategy starts inside Z_0.
        const auto hand = random_seller_hedge(rng, m.market, m.payoffs);
        REQUIRE(is_valid_lambda_hedge(m.market, m.payoffs, hand));
        CHECK(contains(s.Z[0], hand.backbone.initial));

        // Extraction from the price point, then a full hedge that survives a grid.
        const auto grid = mst_grid(m.tree(), 2);
        for (const SetLadder* l : {&s, &b}) {
            Vec x0 = zeros(m.tree().dim());
            x0[0] = l->side == Side::Seller ? ask_price(*l, 0) : -bid_price(*l, 0);
            const auto h = extract_lambda_hedge(m.market, m.payoffs, *l, x0);
            CHECK(h.backbone.initial == x0);
            const auto recipe = lambda_to_full_hedge(m.market, m.payoffs, h);
            CHECK(verify_hedge(m.market, m.payoffs, recipe, grid).passed());
        }
    }
}
