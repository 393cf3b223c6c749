#pragma once

#include <optional>
#include <span>
#include <utility>

#include "randassign/types.hpp"

namespace randassign {

/// x stochastically dominates y under `preference` (best object first): every
/// upper prefix of the preference gets at least as much mass from x as from y.
bool sd_dominates(std::span<const Rational> x, std::span<const Rational> y,
                  std::span<const Object> preference);

/// An ordered pair (i, i') of agents.
using AgentPair = std::pair<Agent, Agent>;

/// SD-EF: every row dominates every other row under its owner's preference.
bool is_sd_ef(const Instance& instance, const AssignmentMatrix& m);
/// First (i, i') where P_i does not dominate P_i' under i's preference.
std::optional<AgentPair> sd_ef_violation(const Instance& instance, const AssignmentMatrix& m);

/// Weak SD-EF: for every (i, i'), P_i == P_i' or P_i' does not dominate P_i.
bool is_weak_sd_ef(const Instance& instance, const AssignmentMatrix& m);
/// First (i, i') with P_i != P_i' and P_i' dominating P_i under i's preference.
std::optional<AgentPair> weak_sd_ef_violation(const Instance& instance,
                                              const AssignmentMatrix& m);

bool equal_treatment_of_equals(const Instance& instance, const AssignmentMatrix& m);
std::optional<AgentPair> equal_treatment_violation(const Instance& instance,
                                                   const AssignmentMatrix& m);

/// Trading-cycle criterion: Pareto optimal iff the digraph with an arc
/// i -> i' whenever i strictly prefers the object of i' is acyclic.
bool is_pareto_optimal(const Instance& instance, const DeterministicAssignment& a);
/// A directed cycle of agents in the envy digraph, when one exists.
std::optional<std::vector<Agent>> trading_cycle(const Instance& instance,
                                                const DeterministicAssignment& a);

bool is_ex_post_efficient(const Instance& instance, const Lottery& lottery);

struct SdEfficiency {
  bool efficient = false;
  /// A bistochastic matrix that SD-dominates the input row by row and
  /// differs from it, when the input is not SD-efficient.
  std::optional<AssignmentMatrix> dominating;
  /// Optimal total cumulative slack of the dominance LP (zero iff efficient).
  Rational slack;
};

/// Maximises the total prefix-cumulative gain of a bistochastic P' subject
/// to P'_i dominating P_i for every agent. Throws ArgumentError unless m is
/// bistochastic.
SdEfficiency sd_efficiency(const Instance& instance, const AssignmentMatrix& m);
bool is_sd_efficient(const Instance& instance, const AssignmentMatrix& m);

}  // namespace randassign
