#include "gradhedge/lp.hpp"

#include <stdexcept>

namespace gradhedge {

namespace {

// Dense tableau; the last entry of every row is the right-hand side. The
// objective row holds reduced costs and, in its last entry, minus the value.
class Tableau {
public:
    Tableau(std::size_t num_cols) : num_cols_(num_cols), objective_(num_cols + 1, Rational(0)) {}

    void add_row(Vec row, std::size_t basic) {
        rows_.push_back(std::move(row));
        basis_.push_back(basic);
    }

    std::size_t num_rows() const { return rows_.size(); }
    std::size_t rhs() const { return num_cols_; }
    Vec& row(std::size_t i) { return rows_[i]; }
    Vec& objective() { return objective_; }
    std::size_t basic(std::size_t i) const { return basis_[i]; }

    void erase_row(std::size_t i) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
    }

    void set_objective(const Vec& costs) {
        objective_ = costs;
        objective_.resize(num_cols_ + 1, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational c = objective_[basis_[i]];
            if (!c.is_zero()) eliminate(objective_, c, rows_[i], all_nonzeros(rows_[i]));
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Vec& pr = rows_[r];
        const Rational inv = 1 / pr[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= num_cols_; ++j) {
            if (!pr[j].is_zero()) {
                pr[j] *= inv;
                nz.push_back(j);
            }
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r) continue;
            const Rational f = rows_[i][c];
            if (!f.is_zero()) eliminate(rows_[i], f, pr, nz);
        }
        const Rational f = objective_[c];
        if (!f.is_zero()) eliminate(objective_, f, pr, nz);
        basis_[r] = c;
    }

    /// Runs Bland's rule over the columns flagged in `allowed`.
    /// Returns false when the problem is unbounded.
    bool optimize(const std::vector<bool>& allowed) {
        while (true) {
            std::size_t enter = num_cols_;
            for (std::size_t j = 0; j < num_cols_; ++j) {
                if (allowed[j] && objective_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == num_cols_) return true;

            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][enter];
                if (a <= 0) continue;
                Rational ratio = rows_[i][num_cols_] / a;
                if (leave == rows_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == rows_.size()) return false;
            pivot(leave, enter);
        }
    }

private:
    static std::vector<std::size_t> all_nonzeros(const Vec& v) {
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) nz.push_back(j);
        return nz;
    }

    static void eliminate(Vec& target, const Rational& f, const Vec& source,
                          const std::vector<std::size_t>& nz) {
        const Rational factor = f;
        for (std::size_t j : nz) target[j] -= factor * source[j];
    }

    std::size_t num_cols_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> basis_;
    Vec objective_;
};

}  // namespace

LpSolution lp_solve(const LpProblem& problem) {
    const std::size_t n = problem.num_vars;
    if (problem.objective.size() != n) throw std::invalid_argument("lp_solve: objective size mismatch");
    const bool all_free = problem.nonnegative.empty();
    if (!all_free && problem.nonnegative.size() != n)
        throw std::invalid_argument("lp_solve: nonnegative flag size mismatch");

    // Structural columns: x_v = plus_v - minus_v for free variables.
    std::vector<std::size_t> plus(n), minus(n, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t v = 0; v < n; ++v) {
        plus[v] = cols++;
        if (all_free || !problem.nonnegative[v]) minus[v] = cols++;
    }
    const std::size_t structural = cols;

    std::size_t slacks = 0;
    for (const auto& r : problem.rows) {
        if (r.coeffs.size() != n) throw std::invalid_argument("lp_solve: row size mismatch");
        if (r.relation != Relation::Equal) ++slacks;
    }

    // Decide which rows need an artificial variable before sizing the tableau.
    std::vector<int> slack_sign(problem.rows.size(), 0);
    std::vector<bool> flip(problem.rows.size(), false);
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
        const auto& r = problem.rows[i];
        slack_sign[i] = r.relation == Relation::GreaterEqual ? -1 : r.relation == Relation::LessEqual ? 1 : 0;
        flip[i] = r.rhs < 0;
        const int effective = flip[i] ? -slack_sign[i] : slack_sign[i];
        if (effective != 1) ++artificials;
    }

    const std::size_t total = structural + slacks + artificials;
    Tableau tab(total);
    std::vector<bool> is_artificial(total, false);
    std::size_t next_slack = structural, next_art = structural + slacks;
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
        const auto& r = problem.rows[i];
        Vec row(total + 1, Rational(0));
        for (std::size_t v = 0; v < n; ++v) {
            if (r.coeffs[v].is_zero()) continue;
            row[plus[v]] = r.coeffs[v];
            if (minus[v] != SIZE_MAX) row[minus[v]] = -r.coeffs[v];
        }
        std::size_t slack_col = SIZE_MAX;
        if (slack_sign[i] != 0) {
            slack_col = next_slack++;
            row[slack_col] = slack_sign[i];
        }
        row[total] = r.rhs;
        if (flip[i]) {
            for (auto& x : row) x = -x;
        }
        if (slack_col != SIZE_MAX && row[slack_col] == 1) {
            tab.add_row(std::move(row), slack_col);
        } else {
            const std::size_t a = next_art++;
            row[a] = 1;
            is_artificial[a] = true;
            tab.add_row(std::move(row), a);
        }
    }

    std::vector<bool> allowed(total, true);
    LpSolution sol;
    if (artificials > 0) {
        Vec phase1(total, Rational(0));
        for (std::size_t j = 0; j < total; ++j)
            if (is_artificial[j]) phase1[j] = 1;
        tab.set_objective(phase1);
        tab.optimize(allowed);
        if (tab.objective()[total] != 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive remaining artificials out of the basis; drop redundant rows.
        for (std::size_t i = tab.num_rows(); i-- > 0;) {
            if (!is_artificial[tab.basic(i)]) continue;
            std::size_t col = total;
            for (std::size_t j = 0; j < total; ++j) {
                if (!is_artificial[j] && !tab.row(i)[j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col == total) {
                tab.erase_row(i);
            } else {
                tab.pivot(i, col);
            }
        }
        for (std::size_t j = 0; j < total; ++j) allowed[j] = !is_artificial[j];
    }

    Vec costs(total, Rational(0));
    for (std::size_t v = 0; v < n; ++v) {
        const Rational c = problem.sense == Sense::Minimize ? problem.objective[v] : -problem.objective[v];
        costs[plus[v]] = c;
        if (minus[v] != SIZE_MAX) costs[minus[v]] = -c;
    }
    tab.set_objective(costs);
    if (!tab.optimize(allowed)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    Vec column_value(total, Rational(0));
    for (std::size_t i = 0; i < tab.num_rows(); ++i) column_value[tab.basic(i)] = tab.row(i)[total];
    sol.point = zeros(n);
    for (std::size_t v = 0; v < n; ++v) {
        sol.point[v] = column_value[plus[v]];
        if (minus[v] != SIZE_MAX) sol.point[v] -= column_value[minus[v]];
    }
    sol.value = dot(problem.objective, sol.point);
    sol.status = LpStatus::Optimal;
    return sol;
}

bool satisfies(const LpProblem& problem, const Vec& x) {
    if (x.size() != problem.num_vars) return false;
    for (std::size_t v = 0; v < problem.nonnegative.size(); ++v)
        if (problem.nonnegative[v] && x[v] < 0) return false;
    for (const auto& r : problem.rows) {
        const Rational lhs = dot(r.coeffs, x);
        switch (r.relation) {
            case Relation::GreaterEqual:
                if (lhs < r.rhs) return false;
                break;
            case Relation::LessEqual:
                if (lhs > r.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != r.rhs) return false;
                break;
        }
    }
    return true;
}

}  // namespace gradhedge
