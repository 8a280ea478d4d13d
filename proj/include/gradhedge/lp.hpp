#pragma once

#include "gradhedge/rational.hpp"

#include <vector>

namespace gradhedge {

enum class Sense { Minimize, Maximize };
enum class Relation { GreaterEqual, LessEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
    Vec coeffs;
    Relation relation = Relation::GreaterEqual;
    Rational rhs = 0;
};

/// Variables are free unless flagged in `nonnegative` (empty means all free).
struct LpProblem {
    std::size_t num_vars = 0;
    Vec objective;
    Sense sense = Sense::Minimize;
    std::vector<LpConstraint> rows;
    std::vector<bool> nonnegative;

    LpProblem() = default;
    explicit LpProblem(std::size_t n, Sense s = Sense::Minimize)
        : num_vars(n), objective(zeros(n)), sense(s) {}

    /// Adds coeffs·x >= rhs.
    void add_ge(Vec coeffs, Rational rhs) {
        rows.push_back({std::move(coeffs), Relation::GreaterEqual, std::move(rhs)});
    }
    void add_le(Vec coeffs, Rational rhs) {
        rows.push_back({std::move(coeffs), Relation::LessEqual, std::move(rhs)});
    }
    void add_eq(Vec coeffs, Rational rhs) {
        rows.push_back({std::move(coeffs), Relation::Equal, std::move(rhs)});
    }
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vec point;
    Rational value = 0;

    bool optimal() const { return status == LpStatus::Optimal; }
};

/// Exact two-phase primal simplex with Bland's rule. Deterministic: the same
/// problem always yields the same basic solution.
LpSolution lp_solve(const LpProblem& problem);

/// True when `x` satisfies every row of `problem` exactly.
bool satisfies(const LpProblem& problem, const Vec& x);

}  // namespace gradhedge
