#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "randassign/types.hpp"

namespace randassign {

/// Default cap on n for the permutation-polytope LPs (6! = 720 columns).
inline constexpr std::size_t kOracleCap = 6;

/// All n! assignments in lexicographic order. Throws ResourceError when n > cap.
std::vector<DeterministicAssignment> all_assignments(std::size_t n,
                                                     std::size_t cap = kOracleCap);

struct EfDecomposability {
  bool decomposable = false;
  /// A Dec-EF decomposition of the matrix, when one exists.
  std::optional<Lottery> witness;
  /// Farkas multipliers over [n^2 entry rows | n(n-1) envy rows] otherwise.
  std::vector<Rational> farkas;
};

/// Decides whether m has a decomposition in which every ordered pair's envy
/// probability is at most 1/2, by LP over one weight per permutation.
/// Throws ResourceError when n > cap, ArgumentError unless m is bistochastic.
EfDecomposability ef_decomposable(const Instance& instance, const AssignmentMatrix& m,
                                  std::size_t cap = kOracleCap);

struct MinimaxEnvy {
  Rational value;
  Lottery witness;  // attains `value`
};

/// Smallest achievable maximum envy probability over all decompositions of m.
MinimaxEnvy minimax_envy(const Instance& instance, const AssignmentMatrix& m,
                         std::size_t cap = kOracleCap);

struct ReversalSymmetry {
  bool implementable = false;
  /// Probability of each agent order (each order and its reverse equal).
  std::vector<std::pair<std::vector<Agent>, Rational>> order_weights;
  /// The induced lottery over serial-dictatorship outcomes.
  std::optional<Lottery> witness;
  std::vector<Rational> farkas;
};

/// Can m be produced by serial dictatorship under some distribution over
/// agent orders that gives every order the same probability as its reverse?
ReversalSymmetry reversal_symmetric_implementable(const Instance& instance,
                                                  const AssignmentMatrix& m,
                                                  std::size_t cap = kOracleCap);

}  // namespace randassign
