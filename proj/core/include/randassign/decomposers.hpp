#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "randassign/rules.hpp"
#include "randassign/types.hpp"

namespace randassign {

/// Picks a permutation supported on the positive entries of a residual
/// (a nonnegative matrix with equal row and column sums).
using MatchingSelector =
    std::function<std::optional<DeterministicAssignment>(const Matrix& residual)>;

/// The lexicographically smallest support matching.
MatchingSelector lexicographic_selector();

/// Repeatedly subtracts alpha * perm(sigma) with sigma a support matching and
/// alpha the smallest matched entry, until the residual is zero. Accepts any
/// nonnegative matrix with equal row and column sums; returns the raw peel
/// steps in order (weights sum to the common row sum).
std::vector<Lottery::Entry> birkhoff_peel(Matrix residual, const MatchingSelector& select);

/// Birkhoff decomposition of a bistochastic matrix. The support has at most
/// n^2 - 2n + 2 assignments. Throws ArgumentError for invalid input.
Lottery birkhoff(const AssignmentMatrix& m);
Lottery birkhoff(const AssignmentMatrix& m, const MatchingSelector& select);

/// Weight 1/n! on every assignment. Throws ResourceError when n > cap.
Lottery uniform_decomposition(std::size_t n, std::size_t cap = kOrderEnumerationCap);

/// Dec-EF decomposition of an SD-EF matrix for three agents: the minimum
/// entry p* is removed with weight p*/2 on each of the six assignments, and
/// the residual (which has a zero entry) is peeled; its decomposition is
/// unique. Throws ArgumentError unless n == 3 and m is bistochastic, and
/// PreconditionError when m is not SD-EF.
Lottery decompose_three_agent(const Instance& instance, const AssignmentMatrix& m);

/// Agents split by preference into a first type (the one containing agent 0)
/// and a second type.
struct TwoTypeStructure {
  std::size_t r = 0;                     // first-type agent count
  std::size_t s = 0;                     // second-type agent count
  std::vector<int> type_of;              // 0 or 1 per agent
  std::vector<Agent> first_type;         // ascending
  std::vector<Agent> second_type;        // ascending
  std::vector<Object> first_preference;  // shared list of the first type
  /// a_j: probability object j goes to the first type; b_j = 1 - a_j.
  /// Empty until attach_marginals is called.
  std::vector<Rational> a;
  std::vector<Rational> b;
};

/// Returns nullopt when three or more distinct preference lists occur. With
/// a single list, the highest-indexed agent is designated second type.
std::optional<TwoTypeStructure> detect_two_type(const Instance& instance);

/// Fills a and b from m. Throws PreconditionError if rows differ within a type.
TwoTypeStructure attach_marginals(TwoTypeStructure structure, const AssignmentMatrix& m);

/// With objects relabelled so that object k is the k-th best of the first
/// type, checks sum_{j<=t} (a_j - a_{n-j+1}) >= 0 for every t.
bool claim1_diagnostic(const TwoTypeStructure& structure);

struct TwoTypeRound {
  DeterministicAssignment seed;  // Q
  Matrix family_sum;             // sum of the 4rs family members
  Rational alpha;
};

struct TwoTypeDecomposition {
  Lottery lottery;
  std::vector<TwoTypeRound> rounds;
  TwoTypeStructure structure;
};

/// Shift/reflect decomposition for instances with at most two preference
/// types. Each round takes a support permutation Q (from `q_sequence` while
/// it lasts, otherwise the lexicographic matching of the residual), builds
/// the 2r x 2s family of cyclic shifts and reflections within each type, and
/// subtracts the largest feasible multiple of their sum.
///
/// Throws PreconditionError when the instance has three or more types, or
/// m is not SD-EF; ArgumentError when m is not bistochastic or a supplied Q
/// leaves the residual's support.
TwoTypeDecomposition decompose_two_type_traced(
    const Instance& instance, const AssignmentMatrix& m,
    const std::vector<DeterministicAssignment>& q_sequence = {});

Lottery decompose_two_type(const Instance& instance, const AssignmentMatrix& m,
                           const std::vector<DeterministicAssignment>& q_sequence = {});

/// The 4rs shift/reflection family of `seed`, with multiplicity.
std::vector<DeterministicAssignment> shift_reflect_family(const TwoTypeStructure& structure,
                                                          const DeterministicAssignment& seed);

}  // namespace randassign
