#pragma once

// Exact linear algebra over Q by fraction-free (Bareiss) elimination.

#include <optional>
#include <vector>

#include "qga/rational.hpp"

namespace qga::linalg {

using RatVector = std::vector<Rational>;
using IntRow = std::vector<Integer>;

/// The row multiplied by the lcm of its denominators.
IntRow to_integer_row(const RatVector& row);

std::size_t rank(const std::vector<RatVector>& rows);
std::size_t rank_int(std::vector<IntRow> rows);

struct Solution {
  RatVector x;  ///< free variables set to 0
  bool unique = false;
};

/// Solves A x = b with A given by rows. std::nullopt when inconsistent.
std::optional<Solution> solve(const std::vector<RatVector>& a, const RatVector& b);

/// Coefficients c with Σ c_i v_i = target, or std::nullopt.
std::optional<RatVector> solve_in_span(const std::vector<RatVector>& vectors,
                                       const RatVector& target);

}  // namespace qga::linalg
