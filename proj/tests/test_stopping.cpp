#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace gradhedge;
using oracle::q;
using oracle::vec;

namespace {

const EventTree& tree() { return fixture::fig1().tree(); }
std::size_t at(const char* id) { return tree().index(id); }

// Seller's stopping time from the example: 1/3 at u, the rest at u's leaves,
// and everything at the leaves below d.
MixedStoppingTime seller_phi() {
    MixedStoppingTime phi(tree().size(), Rational(0));
    phi[at("u")] = q(1, 3);
    phi[at("uu")] = phi[at("ud")] = q(2, 3);
    phi[at("du")] = phi[at("dd")] = 1;
    return phi;
}

bool path_sums_are_one(const EventTree& t, const MixedStoppingTime& phi) {
    for (auto leaf : t.leaves()) {
        Rational s = 0;
        for (auto n : t.path_to(leaf)) s += phi[n];
        if (s != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("star process") {
    const auto chi1 = deterministic_time(tree(), 1);
    const auto s = star(tree(), chi1);
    CHECK(s.current[at("root")] == 1);
    CHECK(s.current[at("u")] == 1);
    CHECK(s.current[at("uu")] == 0);
    CHECK(s.next[at("u")] == 0);

    const auto sp = star(tree(), seller_phi());
    CHECK(sp.current[at("uu")] == q(2, 3));
    CHECK(sp.next[at("uu")] == 0);

    MixedStoppingTime uniform(tree().size(), q(1, 3));
    const auto su = star(tree(), uniform);
    for (std::size_t i = 0; i < tree().size(); ++i)
        CHECK(su.current[i] == Rational(3 - tree().node(i).time) / 3);
}

TEST_CASE("validation") {
    CHECK(is_valid_mst(tree(), seller_phi()));
    auto bad = seller_phi();
    bad[at("uu")] = q(1, 3);
    CHECK_FALSE(is_valid_mst(tree(), bad));
    bad = seller_phi();
    bad[at("root")] = q(-1, 3);
    CHECK_THROWS_AS(validate_mst(tree(), bad), StoppingError);
}

TEST_CASE("ordinary stopping times") {
    const auto last = deterministic_time(tree(), 2);
    for (std::size_t i = 0; i < tree().size(); ++i) CHECK(last[i] == (tree().is_leaf(i) ? 1 : 0));
    const auto first = deterministic_time(tree(), 0);
    CHECK(first[at("root")] == 1);
    CHECK(first[at("u")] == 0);

    const auto& pay = fixture::fig1().payoffs;
    const auto hit = first_hitting_time(tree(), [&](std::size_t i) { return pay.Y[i][1] > 0; });
    CHECK(hit[at("u")] == 1);
    CHECK(hit[at("uu")] == 0);
    CHECK(hit[at("d")] == 0);
    CHECK(hit[at("du")] == 1);
    CHECK(hit[at("dd")] == 1);

    std::vector<bool> twice(tree().size(), false);
    twice[at("root")] = twice[at("u")] = true;
    twice[at("du")] = twice[at("dd")] = true;
    CHECK_THROWS_AS(embed_stopping_time(tree(), twice), StoppingError);
}

TEST_CASE("minimum of stopping times") {
    const auto c0 = deterministic_time(tree(), 0), c1 = deterministic_time(tree(), 1), c2 = deterministic_time(tree(), 2);
    CHECK(mst_min(tree(), c1, c2) == c1);
    CHECK(mst_min(tree(), c2, c0) == c0);
    CHECK(mst_min(tree(), c2, c2) == c2);

    const auto one = fixture::one_step(10, {10, 10});
    const MixedStoppingTime half{q(1, 2), q(1, 2), q(1, 2)};
    const auto m = mst_min(one.tree(), half, half);
    CHECK(m[0] == q(3, 4));
    CHECK(m[1] == q(1, 4));
}

TEST_CASE("evaluation at a stopping time") {
    const auto& pay = fixture::fig1().payoffs;
    const auto leaves = tree().leaves();  // dd, du, ud, uu
    const auto y1 = evaluate_at(tree(), pay.Y, deterministic_time(tree(), 1));
    CHECK(y1[0] == vec({0, 0}));
    CHECK(y1[1] == vec({0, 0}));
    CHECK(y1[2] == vec({0, 3}));
    CHECK(y1[3] == vec({0, 3}));
    const auto c = evaluate_at(tree(), constant_process(tree(), vec({2, 7})), seller_phi());
    for (const auto& v : c) CHECK(v == vec({2, 7}));
}

TEST_CASE("payoff flows") {
    const auto& pay = fixture::fig1().payoffs;
    MixedStoppingTime phi(tree().size(), Rational(0));
    phi[at("u")] = q(2, 3);
    phi[at("uu")] = phi[at("ud")] = q(1, 3);
    phi[at("du")] = phi[at("dd")] = 1;
    const auto chi2 = deterministic_time(tree(), 2);
    CHECK(payoff_G(tree(), pay, phi, chi2, at("u")) == vec({0, 4}));

    const auto chi0 = deterministic_time(tree(), 0);
    for (std::size_t i = 0; i < tree().size(); ++i) {
        CHECK(payoff_G(tree(), pay, seller_phi(), chi0, i) == (i == 0 ? pay.Y[0] : vec({0, 0})));
        if (tree().is_leaf(i)) CHECK(payoff_G(tree(), pay, chi2, chi2, i) == pay.Y[i]);
    }

    const auto qphi = payoff_Q_phi(tree(), pay, seller_phi());
    CHECK(qphi[at("uu")] == vec({0, 8}));
    const auto sigma = deterministic_time(tree(), 1);
    const auto qs = payoff_Q_phi(tree(), pay, sigma);
    for (std::size_t i = 0; i < tree().size(); ++i)
        if (tree().node(i).time <= 1) CHECK(qs[i] == pay.Y[i]);
}

TEST_CASE("grids") {
    const auto lattice = mst_lattice_grid(tree(), 4);
    CHECK(lattice.size() == 55);
    const auto cond = mst_conditional_grid(tree(), 4);
    // 5^3 fraction tuples, but stopping everything at the root makes the
    // fractions below irrelevant: 4 * 25 + 1 distinct stopping times
    CHECK(cond.size() == 101);
    const auto all = mst_grid(tree(), 4);
    CHECK(all.size() == 113);
    CHECK(mst_grid(tree(), std::vector<int>{4, 3}).size() >= 125);
    CHECK(std::is_sorted(all.begin(), all.end(), lex_less));
    for (const auto& phi : all) CHECK(is_valid_mst(tree(), phi));
    CHECK(mst_conditional_grid(tree(), 8).size() == 8 * 81 + 1);
}

TEST_CASE("payoff identities on random stopping times") {
    oracle::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto model = gen::random_model(rng, gen::Options{});
        const auto& t = model.tree();
        const auto phi = gen::random_mst(rng, t), psi = gen::random_mst(rng, t);
        REQUIRE(is_valid_mst(t, phi));
        const auto m = mst_min(t, psi, phi);
        CHECK(path_sums_are_one(t, m));
        CHECK(is_valid_mst(t, m));

        const auto fs = star(t, phi), ps = star(t, psi);
        for (std::size_t i = 0; i < t.size(); ++i) {
            // termination accounting
            CHECK(ps.current[i] * fs.current[i] - psi[i] * fs.current[i] - ps.next[i] * phi[i] ==
                  ps.next[i] * fs.next[i]);
        }
        for (auto leaf : t.leaves()) {
            Vec total = zeros(t.dim());
            for (auto n : t.path_to(leaf)) total = add(total, payoff_G(model.payoffs, phi, fs, psi, ps, n));
            CHECK(total == payoff_Q_total(t, model.payoffs, phi, psi, leaf));
        }
        // linearity of evaluation in the process
        const auto a = evaluate_at(t, model.payoffs.Y, phi), b = evaluate_at(t, model.payoffs.X, phi);
        AdaptedProcess sum(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) sum[i] = add(model.payoffs.Y[i], scaled(model.payoffs.X[i], 3));
        const auto c = evaluate_at(t, sum, phi);
        for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == add(a[k], scaled(b[k], 3)));
    }
}
