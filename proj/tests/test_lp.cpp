#include <doctest.h>

#include "gradhedge/lp.hpp"
#include "support/oracles.hpp"

using namespace gradhedge;
using oracle::q;
using oracle::vec;

TEST_CASE("maximize a bounded single variable") {
    LpProblem lp(1, Sense::Maximize);
    lp.objective = vec({1});
    lp.add_le(vec({1}), 3);
    lp.add_ge(vec({1}), 0);
    const auto sol = lp_solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == 3);
    CHECK(sol.point == vec({3}));
}

TEST_CASE("axis intercept of the root halfplane") {
    LpProblem lp(2);
    lp.objective = vec({1, 0});
    lp.add_ge(vec({10, 1}), q(14, 3));
    lp.add_eq(vec({0, 1}), 0);
    const auto sol = lp_solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == q(7, 15));
    CHECK(satisfies(lp, sol.point));
}

TEST_CASE("infeasible and unbounded are statuses") {
    LpProblem infeasible(1);
    infeasible.add_ge(vec({1}), 1);
    infeasible.add_le(vec({1}), 0);
    CHECK(lp_solve(infeasible).status == LpStatus::Infeasible);

    LpProblem unbounded(2, Sense::Maximize);
    unbounded.objective = vec({1, 1});
    unbounded.add_ge(vec({1, -1}), 0);
    CHECK(lp_solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("redundant equalities and negative right-hand sides") {
    LpProblem lp(3);
    lp.objective = vec({1, 2, 3});
    lp.nonnegative = {true, true, true};
    lp.add_eq(vec({1, 1, 1}), 1);
    lp.add_eq(vec({2, 2, 2}), 2);
    lp.add_le(vec({-1, 0, 0}), q(-1, 2));
    const auto sol = lp_solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == 1);
    CHECK(satisfies(lp, sol.point));
}

TEST_CASE("deterministic: repeated solves agree") {
    LpProblem lp(2);
    lp.objective = vec({1, 1});
    lp.add_ge(vec({1, 0}), 0);
    lp.add_ge(vec({0, 1}), 0);
    lp.add_ge(vec({1, 1}), 2);
    const auto a = lp_solve(lp), b = lp_solve(lp);
    CHECK(a.point == b.point);
    CHECK(a.value == 2);
}

TEST_CASE("optimum equals vertex enumeration on random bounded LPs") {
    oracle::Rng rng(7);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.integer(2, 3));
        std::vector<Halfspace> hs;
        for (std::size_t i = 0; i < d; ++i) {
            hs.push_back({unit(d, i), Rational(-rng.integer(1, 5))});
            hs.push_back({negated(unit(d, i)), Rational(-rng.integer(1, 5))});
        }
        const int extra = static_cast<int>(rng.integer(0, 4));
        for (int k = 0; k < extra; ++k) hs.push_back({rng.vector(d, -3, 3), rng.rational(-4, 1)});
        const Vec c = rng.vector(d, -5, 5);
        const bool maximize = rng.integer(0, 1) == 1;

        LpProblem lp(d, maximize ? Sense::Maximize : Sense::Minimize);
        lp.objective = c;
        for (const auto& h : hs) lp.add_ge(h.a, h.b);
        const auto sol = lp_solve(lp);
        const auto expected = oracle::brute_force_lp(hs, c, maximize);
        if (!expected) {
            CHECK(sol.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(sol.optimal());
        CHECK(satisfies(lp, sol.point));
        CHECK(sol.value == *expected);
        ++checked;
    }
    CHECK(checked > 100);
}
