#pragma once

#include "gradhedge/rational.hpp"

#include <vector>

namespace gradhedge::detail {

struct ConeGenerators {
    std::vector<Vec> rays;   // primitive integer vectors
    std::vector<Vec> lines;
};

/// Extreme rays and a lineality basis of {y ∈ Q^n : row·y >= 0 for all rows},
/// by the Motzkin double-description method. Rows are processed in order.
ConeGenerators dd_generators(std::size_t n, const std::vector<Vec>& rows);

/// Reduced row echelon form; zero rows are dropped and `pivots` receives the
/// pivot column of each remaining row.
std::vector<Vec> rref(std::vector<Vec> rows, std::vector<std::size_t>* pivots = nullptr);

/// Reduced echelon basis of {x ∈ Q^n : row·x = 0 for all rows}.
std::vector<Vec> null_space(const std::vector<Vec>& rows, std::size_t n);

}  // namespace gradhedge::detail
