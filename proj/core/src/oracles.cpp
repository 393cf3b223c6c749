#include "randassign/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "randassign/errors.hpp"
#include "randassign/exactlp.hpp"
#include "randassign/rules.hpp"

namespace randassign {
namespace {

void require_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw ResourceError(std::string(what) + " enumerates n! permutations; n = " +
                        std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
}

// Columns are permutations; rows are the n^2 entry equalities followed by one
// envy row per ordered pair (i, i'), i != i'.
struct PermutationSystem {
  std::vector<DeterministicAssignment> perms;
  lp::LinearProgram program;
  std::size_t first_envy_row = 0;
};

PermutationSystem build_system(const Instance& instance, const AssignmentMatrix& m,
                               std::size_t extra_columns, std::size_t cap) {
  const std::size_t n = instance.size();
  require_bistochastic(m);
  require_size(instance, m.rows(), "assignment matrix");
  PermutationSystem sys{all_assignments(n, cap), {}, n * n};
  const std::size_t cols = sys.perms.size() + extra_columns;
  sys.program = lp::LinearProgram(cols);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(cols);
      for (std::size_t k = 0; k < sys.perms.size(); ++k) {
        if (sys.perms[k][i] == j) row[k] = 1;
      }
      sys.program.add_constraint(std::move(row), lp::Relation::equal, m(i, j));
    }
  }
  for (Agent i = 0; i < n; ++i) {
    for (Agent other = 0; other < n; ++other) {
      if (other == i) continue;
      std::vector<Rational> row(cols);
      for (std::size_t k = 0; k < sys.perms.size(); ++k) {
        if (instance.prefers(i, sys.perms[k][other], sys.perms[k][i])) row[k] = 1;
      }
      sys.program.add_constraint(std::move(row), lp::Relation::less_equal, Rational(1, 2));
    }
  }
  return sys;
}

Lottery lottery_from(const std::vector<DeterministicAssignment>& perms,
                     const std::vector<Rational>& x) {
  std::vector<Lottery::Entry> entries;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    if (x[k] != 0) entries.emplace_back(perms[k], x[k]);
  }
  return Lottery(std::move(entries));
}

}  // namespace

std::vector<DeterministicAssignment> all_assignments(std::size_t n, std::size_t cap) {
  require_cap(n, cap, "permutation enumeration");
  std::vector<Object> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Object{0});
  std::vector<DeterministicAssignment> out;
  do {
    out.emplace_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

EfDecomposability ef_decomposable(const Instance& instance, const AssignmentMatrix& m,
                                  std::size_t cap) {
  require_cap(instance.size(), cap, "ef_decomposable");
  PermutationSystem sys = build_system(instance, m, 0, cap);
  const lp::Feasibility f = lp::feasible(sys.program);
  EfDecomposability out;
  out.decomposable = f.feasible;
  if (f.feasible) {
    out.witness = lottery_from(sys.perms, f.witness);
  } else {
    out.farkas = f.farkas;
  }
  return out;
}

MinimaxEnvy minimax_envy(const Instance& instance, const AssignmentMatrix& m, std::size_t cap) {
  require_cap(instance.size(), cap, "minimax_envy");
  PermutationSystem sys = build_system(instance, m, 1, cap);
  const std::size_t t = sys.perms.size();
  auto& program = sys.program;
  for (std::size_t r = sys.first_envy_row; r < program.constraints.size(); ++r) {
    program.constraints[r].coefficients[t] = -1;
    program.constraints[r].rhs = 0;
  }
  program.objective.assign(t + 1, Rational(0));
  program.objective[t] = 1;
  program.sense = lp::Sense::minimize;

  const lp::LpResult result = lp::solve(program);
  if (result.status != lp::LpStatus::optimal) {
    throw std::logic_error("minimax-envy LP is not optimal on a bistochastic matrix");
  }
  return {result.objective_value, lottery_from(sys.perms, result.solution)};
}

ReversalSymmetry reversal_symmetric_implementable(const Instance& instance,
                                                  const AssignmentMatrix& m, std::size_t cap) {
  const std::size_t n = instance.size();
  require_cap(n, cap, "reversal_symmetric_implementable");
  require_bistochastic(m);
  require_size(instance, m.rows(), "assignment matrix");

  // One variable per unordered pair {order, reverse(order)}.
  std::vector<std::vector<Agent>> orders;
  std::vector<Agent> order(n);
  std::iota(order.begin(), order.end(), Agent{0});
  do {
    std::vector<Agent> rev(order.rbegin(), order.rend());
    if (order < rev) orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<std::pair<DeterministicAssignment, DeterministicAssignment>> outcomes;
  outcomes.reserve(orders.size());
  for (const auto& o : orders) {
    outcomes.emplace_back(serial_dictatorship(instance, o),
                          serial_dictatorship(instance, {o.rbegin(), o.rend()}));
  }

  const std::size_t cols = orders.size();
  lp::LinearProgram program(cols);
  program.add_constraint(std::vector<Rational>(cols, Rational(2)), lp::Relation::equal, 1);
  for (Agent i = 0; i < n; ++i) {
    for (Object j = 0; j < n; ++j) {
      std::vector<Rational> row(cols);
      for (std::size_t k = 0; k < cols; ++k) {
        row[k] = (outcomes[k].first[i] == j ? 1 : 0) + (outcomes[k].second[i] == j ? 1 : 0);
      }
      program.add_constraint(std::move(row), lp::Relation::equal, m(i, j));
    }
  }

  const lp::Feasibility f = lp::feasible(program);
  ReversalSymmetry out;
  out.implementable = f.feasible;
  if (!f.feasible) {
    out.farkas = f.farkas;
    return out;
  }
  std::vector<Lottery::Entry> entries;
  for (std::size_t k = 0; k < cols; ++k) {
    if (f.witness[k] == 0) continue;
    out.order_weights.emplace_back(orders[k], f.witness[k]);
    out.order_weights.emplace_back(std::vector<Agent>(orders[k].rbegin(), orders[k].rend()),
                                   f.witness[k]);
    entries.emplace_back(outcomes[k].first, f.witness[k]);
    entries.emplace_back(outcomes[k].second, f.witness[k]);
  }
  out.witness = Lottery(std::move(entries));
  return out;
}

}  // namespace randassign
