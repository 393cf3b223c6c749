#pragma once

#include <optional>
#include <vector>

#include "randassign/types.hpp"

namespace randassign {

/// Lexicographically smallest permutation sigma with m(i, sigma(i)) > 0 for
/// every row, or nullopt when the positive support has no perfect matching.
/// Throws ArgumentError for a non-square matrix.
std::optional<DeterministicAssignment> perfect_matching_on_support(const Matrix& m);

/// As above, but minimal with respect to the given priorities: rows are
/// fixed in `agent_order`, each taking the earliest feasible object in
/// `object_order`. Used to explore alternative peel orders.
std::optional<DeterministicAssignment> perfect_matching_on_support(
    const Matrix& m, const std::vector<Agent>& agent_order,
    const std::vector<Object>& object_order);

}  // namespace randassign
