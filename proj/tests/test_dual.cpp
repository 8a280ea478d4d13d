#include <doctest.h>

#include "gradhedge/dual.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace gradhedge;
using oracle::q;
using oracle::vec;

namespace {

const Model& fig1() { return fixture::fig1(); }
const EventTree& tree() { return fig1().tree(); }

const LambdaHedge& seller_hedge() {
    static const LambdaHedge h = extract_lambda_hedge(fig1().market, fig1().payoffs,
                                                      seller_ladder(fig1().market, fig1().payoffs), vec({0, q(14, 3)}));
    return h;
}
const LambdaHedge& buyer_hedge() {
    static const LambdaHedge h = extract_lambda_hedge(fig1().market, fig1().payoffs,
                                                      buyer_ladder(fig1().market, fig1().payoffs), vec({0, q(-11, 3)}));
    return h;
}

// Probability and price process recovered from m, checked in the
// conditional-expectation form.
bool conditional_form_holds(const Market& market, const AdaptedProcess& m, std::size_t j,
                            const MixedStoppingTime& stopping) {
    const EventTree& t = market.tree();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Rational Q = m[i][j];
        if (Q.is_zero()) continue;
        const Vec S = scaled(m[i], 1 / Q);
        if (S[j] != 1 || !contains(market.Q_polar(i), S)) return false;
        Vec expectation = zeros(t.dim());
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k == i || !t.is_ancestor(i, k) || m[k][j].is_zero()) continue;
            axpy(expectation, stopping[k] * m[k][j] / Q, scaled(m[k], 1 / m[k][j]));
        }
        if (!contains(market.Q_polar(i), expectation)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("zero payoff has zero dual value") {
    const auto Z = constant_process(tree(), zeros(2));
    const auto a = american_dual_price(fig1().market, Z, 1, mst_grid(tree(), 2));
    for (const auto& v : a.values) CHECK(v == 0);
    CHECK(a.value == 0);
}

TEST_CASE("one-step frictionless dual matches the martingale expectation") {
    // Root rate 10, leaves 12 and 8: the martingale measure is (1/2, 1/2).
    const Model m = fixture::one_step(10, {12, 8});
    const auto& t = m.tree();
    AdaptedProcess Z(t.size());
    Z[t.index("r")] = vec({0, 3});
    Z[t.index("l0")] = vec({1, -5});
    Z[t.index("l1")] = vec({0, 1});
    const Rational at_root = 3;
    const Rational at_leaves = q(1, 2) * (12 - 5) + q(1, 2) * 1;

    const auto grid = mst_lattice_grid(t, 8);
    REQUIRE(grid.size() == 9);
    const auto a = american_dual_price(m.market, Z, 1, grid);
    Rational best = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Rational p0 = grid[k][0];
        const Rational expected = p0 * at_root + (1 - p0) * at_leaves;
        CHECK(a.values[k] == expected);
        best = std::max(best, expected);
    }
    CHECK(a.value == best);

    // Y = X = (0, c): every stopping time gives c.
    GamePayoffs flat{constant_process(t, vec({0, 5})), constant_process(t, vec({0, 5}))};
    const auto r = seller_dual_price(m.market, flat, 1, grid, grid);
    CHECK(r.value == 5);
    const auto rb = buyer_dual_price(m.market, flat, 1, grid, grid);
    CHECK(rb.value == 5);
}

TEST_CASE("seller dual at the extracted cancellation time") {
    const auto r = seller_dual_price(fig1().market, fig1().payoffs, 1, {seller_hedge().stopping}, mst_grid(tree(), 4));
    const auto& inner = r.entries.front().inner;
    for (const auto& v : inner.values) CHECK(v <= q(14, 3));
    CHECK(r.value == q(14, 3));
    CHECK(inner.pair.stopping == deterministic_time(tree(), 2));
    CHECK(is_dual_feasible(fig1().market, inner.pair.m, 1, inner.pair.stopping));
    CHECK(conditional_form_holds(fig1().market, inner.pair.m, 1, inner.pair.stopping));
    CHECK(certify(fig1().market, fig1().payoffs, inner.pair, Side::Seller, q(14, 3)));
    CHECK_FALSE(certify(fig1().market, fig1().payoffs, inner.pair, Side::Seller, q(13, 3)));

    auto broken = inner.pair;
    std::size_t leaf = 0;
    for (auto l : tree().leaves())
        if (!is_zero(broken.m[l])) leaf = l;
    REQUIRE(leaf != 0);
    broken.m[leaf] = negated(broken.m[leaf]);
    CHECK_FALSE(is_dual_feasible(fig1().market, broken.m, 1, broken.stopping));
    CHECK_FALSE(certify(fig1().market, fig1().payoffs, broken, Side::Seller, q(14, 3)));
}

TEST_CASE("buyer dual at the extracted exercise time") {
    const auto r = buyer_dual_price(fig1().market, fig1().payoffs, 1, {buyer_hedge().stopping}, mst_grid(tree(), 4));
    const auto& inner = r.entries.front().inner;
    for (const auto& v : inner.values) CHECK(v >= q(11, 3));
    CHECK(r.value == q(11, 3));
    CHECK(certify(fig1().market, fig1().payoffs, inner.pair, Side::Buyer, q(11, 3)));
    CHECK_FALSE(certify(fig1().market, fig1().payoffs, inner.pair, Side::Buyer, 4));
}

TEST_CASE("zero payoffs certify at price zero") {
    const auto zero = fixture::zero_payoffs(tree());
    const auto chi = deterministic_time(tree(), 2);
    const auto s = solve_dual_lp(fig1().market, constant_process(tree(), zeros(2)), 1, chi, Sense::Maximize);
    REQUIRE(s);
    CHECK(certify(fig1().market, zero, {s->m, 1, chi, chi}, Side::Seller, 0));
    CHECK(certify(fig1().market, zero, {s->m, 1, chi, chi}, Side::Buyer, 0));
}

TEST_CASE("weak duality on random models") {
    oracle::Rng rng(77);
    gen::Options opt;
    opt.max_horizon = 2;
    for (int trial = 0; trial < 15; ++trial) {
        CAPTURE(trial);
        const Model m = gen::random_model(rng, opt);
        const std::size_t j = static_cast<std::size_t>(rng.integer(0, 1));
        const auto s = seller_ladder(m.market, m.payoffs);
        const auto b = buyer_ladder(m.market, m.payoffs);
        const Rational ask = ask_price(s, j), bid = bid_price(b, j);
        Vec xs = zeros(m.tree().dim()), xb = zeros(m.tree().dim());
        xs[j] = ask;
        xb[j] = -bid;
        const auto phi = extract_lambda_hedge(m.market, m.payoffs, s, xs).stopping;
        const auto psi = extract_lambda_hedge(m.market, m.payoffs, b, xb).stopping;
        const auto grid = mst_grid(m.tree(), 2);

        const auto rs = seller_dual_price(m.market, m.payoffs, j, {phi}, grid);
        for (const auto& v : rs.entries[0].inner.values) CHECK(v <= ask);
        const auto rb = buyer_dual_price(m.market, m.payoffs, j, {psi}, grid);
        for (const auto& v : rb.entries[0].inner.values) CHECK(v >= bid);

        for (const DualReport* r : {&rs, &rb}) {
            const auto& pair = r->entries[0].inner.pair;
            CHECK(is_dual_feasible(m.market, pair.m, j, pair.stopping));
            CHECK(conditional_form_holds(m.market, pair.m, j, pair.stopping));
        }
    }
}
