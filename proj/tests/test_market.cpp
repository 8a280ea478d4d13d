#include <doctest.h>

#include "support/fixtures.hpp"

using namespace gradhedge;
using oracle::q;
using oracle::vec;

namespace {

Polyhedron H(std::vector<Halfspace> hs) { return Polyhedron::from_h(2, std::move(hs)); }

}  // namespace

TEST_CASE("solvency cones") {
    CHECK(equal(solvency_cone(fixture::rates2(q(1, 8), 16)), H({{vec({8, 1}), 0}, {vec({16, 1}), 0}})));
    CHECK(equal(solvency_cone(fixture::frictionless(10)), H({{vec({10, 1}), 0}})));
    CHECK(equal(solvency_cone(fixture::rates2(1, 1)), H({{vec({1, 1}), 0}})));
    CHECK_THROWS_AS(validate_rates(fixture::rates2(0, 1), 2), MarketError);
    CHECK_THROWS_AS(validate_rates({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}}, 2), MarketError);
}

TEST_CASE("deferred solvency cones of the example") {
    const auto& m = fixture::fig1().market;
    const auto& t = m.tree();
    CHECK(equal(m.Q(t.index("u")), H({{vec({14, 1}), 0}, {vec({10, 1}), 0}})));
    CHECK(equal(m.Q(EventTree::root()), H({{vec({10, 1}), 0}})));
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(subset(m.K(i), m.Q(i)));
        if (t.is_leaf(i)) CHECK(equal(m.K(i), m.Q(i)));
    }
}

TEST_CASE("one-step deferred cone is the children's intersection plus K") {
    const auto model = fixture::one_step(10, {11, 9});
    const auto& m = model.market;
    const auto expected = minkowski_sum(intersect(m.K(1), m.K(2)), m.K(0));
    CHECK(equal(m.Q(0), expected));
}

TEST_CASE("polar cones") {
    CHECK(equal(polar(H({{vec({10, 1}), 0}})), Polyhedron::cone(2, {vec({10, 1})})));
    const auto& m = fixture::fig1().market;
    const auto u = m.tree().index("u");
    CHECK(equal(m.K_polar(u), Polyhedron::cone(2, {vec({8, 1}), vec({16, 1})})));
}

TEST_CASE("no-arbitrage certificate for the example") {
    const auto& m = fixture::fig1().market;
    const auto r = check_no_arbitrage(m);
    REQUIRE(r.arbitrage_free);
    CHECK(is_valid_certificate(m, r.certificate));
    const auto cps = price_system_from_certificate(m.tree(), r.certificate);
    for (std::size_t i = 0; i < m.tree().size(); ++i) {
        CHECK(cps.q[i] > 0);
        CHECK(contains(m.K_polar(i), cps.S[i]));
        CHECK_FALSE(is_zero(cps.S[i]));
    }
}

TEST_CASE("hand-built martingale is a valid certificate") {
    // S^1 = 10 at the root, 12 at u, 6 at d; leaves 14, 10, 10, 4 with
    // q(u) = 2/3, q(uu|u) = 1/2, q(du|d) = 1/3 and S^2 = 1.
    const auto& m = fixture::fig1().market;
    const auto& t = m.tree();
    std::map<std::string, std::pair<Rational, Rational>> qs = {
        {"root", {1, 10}},          {"u", {q(2, 3), 12}},       {"d", {q(1, 3), 6}},
        {"uu", {q(1, 3), 14}},      {"ud", {q(1, 3), 10}},      {"du", {q(1, 9), 10}},
        {"dd", {q(2, 9), 4}}};
    AdaptedProcess cert(t.size());
    Rational smallest = 1;
    for (auto& [id, v] : qs) {
        cert[t.index(id)] = vec({v.first * v.second, v.first});
        if (t.is_leaf(t.index(id))) smallest = std::min(smallest, v.first * (v.second + 1));
    }
    for (auto& x : cert) x = scaled(x, 1 / smallest);
    CHECK(is_valid_certificate(m, cert));
    cert[t.index("u")][0] += 1;
    CHECK_FALSE(is_valid_certificate(m, cert));
}

TEST_CASE("arbitrage witness for rates that can only rise") {
    const auto model = fixture::one_step(10, {11, 12});
    const auto r = check_no_arbitrage(model.market);
    REQUIRE_FALSE(r.arbitrage_free);
    CHECK(is_valid_arbitrage(model.market, r.witness, r.witness_payout));
    CHECK(r.certificate.empty());
}

TEST_CASE("a wide root spread admits a constant price system") {
    auto model = fixture::make_model(2, 1, {{"r", "", 1, fixture::rates2(q(1, 8), 16), {}, {}},
                                            {"a", "r", q(1, 2), fixture::frictionless(9), {}, {}},
                                            {"b", "r", q(1, 2), fixture::frictionless(15), {}, {}}});
    const auto r = check_no_arbitrage(model.market);
    CHECK(r.arbitrage_free);
    CHECK(is_valid_certificate(model.market, r.certificate));
}

TEST_CASE("liquidation strategies") {
    const auto& m = fixture::fig1().market;
    const auto& t = m.tree();
    const auto u = t.index("u");

    const auto immediate = liquidation_strategy(m, u, vec({1, -8}));
    CHECK(is_valid_liquidation(m, immediate));

    // not solvent at u, but solvent after one step at both children
    REQUIRE_FALSE(contains(m.K(u), vec({1, -10})));
    const auto deferred = liquidation_strategy(m, u, vec({1, -10}));
    CHECK(is_valid_liquidation(m, deferred));

    CHECK_THROWS_AS(liquidation_strategy(m, u, vec({0, -1})), PreconditionError);
    CHECK_THROWS_AS(liquidation_strategy(m, EventTree::root(), vec({0, -1})), PreconditionError);

    const auto from_root = liquidation_strategy(m, EventTree::root(), vec({1, -10}));
    CHECK(is_valid_liquidation(m, from_root));
    auto broken = from_root;
    broken.next[EventTree::root()][1] -= 1;
    CHECK_FALSE(is_valid_liquidation(m, broken));
}
