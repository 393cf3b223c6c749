#include "randassign/properties.hpp"

#include <algorithm>

#include "randassign/errors.hpp"
#include "randassign/exactlp.hpp"

namespace randassign {
namespace {

void require_square_for(const Instance& instance, const AssignmentMatrix& m) {
  if (!m.square()) throw ArgumentError("assignment matrix is not square");
  require_size(instance, m.rows(), "assignment matrix");
}

bool rows_equal(const AssignmentMatrix& m, Agent a, Agent b) {
  const auto x = m.row(a), y = m.row(b);
  return std::equal(x.begin(), x.end(), y.begin());
}

}  // namespace

bool sd_dominates(std::span<const Rational> x, std::span<const Rational> y,
                  std::span<const Object> preference) {
  if (x.size() != y.size() || x.size() != preference.size()) {
    throw ArgumentError("sd_dominates: length mismatch");
  }
  Rational cx = 0, cy = 0;
  for (Object o : preference) {
    if (o >= x.size()) throw ArgumentError("sd_dominates: object index out of range");
    cx += x[o];
    cy += y[o];
    if (cx < cy) return false;
  }
  return true;
}

std::optional<AgentPair> sd_ef_violation(const Instance& instance, const AssignmentMatrix& m) {
  require_square_for(instance, m);
  const std::size_t n = m.rows();
  for (Agent i = 0; i < n; ++i) {
    for (Agent k = 0; k < n; ++k) {
      if (k != i && !sd_dominates(m.row(i), m.row(k), instance.preference(i))) {
        return AgentPair{i, k};
      }
    }
  }
  return std::nullopt;
}

bool is_sd_ef(const Instance& instance, const AssignmentMatrix& m) {
  return !sd_ef_violation(instance, m);
}

std::optional<AgentPair> weak_sd_ef_violation(const Instance& instance,
                                              const AssignmentMatrix& m) {
  require_square_for(instance, m);
  const std::size_t n = m.rows();
  for (Agent i = 0; i < n; ++i) {
    for (Agent k = 0; k < n; ++k) {
      if (k == i || rows_equal(m, i, k)) continue;
      if (sd_dominates(m.row(k), m.row(i), instance.preference(i))) return AgentPair{i, k};
    }
  }
  return std::nullopt;
}

bool is_weak_sd_ef(const Instance& instance, const AssignmentMatrix& m) {
  return !weak_sd_ef_violation(instance, m);
}

std::optional<AgentPair> equal_treatment_violation(const Instance& instance,
                                                   const AssignmentMatrix& m) {
  require_square_for(instance, m);
  const std::size_t n = m.rows();
  for (Agent i = 0; i < n; ++i) {
    for (Agent k = i + 1; k < n; ++k) {
      if (instance.preferences()[i] == instance.preferences()[k] && !rows_equal(m, i, k)) {
        return AgentPair{i, k};
      }
    }
  }
  return std::nullopt;
}

bool equal_treatment_of_equals(const Instance& instance, const AssignmentMatrix& m) {
  return !equal_treatment_violation(instance, m);
}

std::optional<std::vector<Agent>> trading_cycle(const Instance& instance,
                                                const DeterministicAssignment& a) {
  require_size(instance, a.size(), "assignment");
  const std::size_t n = a.size();
  // 0 = unvisited, 1 = on stack, 2 = done.
  std::vector<int> state(n, 0);
  std::vector<Agent> stack;

  auto dfs = [&](auto&& self, Agent u) -> std::optional<std::vector<Agent>> {
    state[u] = 1;
    stack.push_back(u);
    for (Agent v = 0; v < n; ++v) {
      if (v == u || !instance.prefers(u, a[v], a[u])) continue;
      if (state[v] == 1) {
        auto start = std::find(stack.begin(), stack.end(), v);
        return std::vector<Agent>(start, stack.end());
      }
      if (state[v] == 0) {
        if (auto cycle = self(self, v)) return cycle;
      }
    }
    stack.pop_back();
    state[u] = 2;
    return std::nullopt;
  };

  for (Agent s = 0; s < n; ++s) {
    if (state[s] != 0) continue;
    if (auto cycle = dfs(dfs, s)) return cycle;
  }
  return std::nullopt;
}

bool is_pareto_optimal(const Instance& instance, const DeterministicAssignment& a) {
  return !trading_cycle(instance, a);
}

bool is_ex_post_efficient(const Instance& instance, const Lottery& lottery) {
  require_size(instance, lottery.size(), "lottery");
  return std::all_of(lottery.begin(), lottery.end(), [&](const Lottery::Entry& e) {
    return is_pareto_optimal(instance, e.first);
  });
}

SdEfficiency sd_efficiency(const Instance& instance, const AssignmentMatrix& m) {
  require_bistochastic(m);
  require_size(instance, m.rows(), "assignment matrix");
  const std::size_t n = m.rows();
  auto var = [n](std::size_t i, std::size_t j) { return i * n + j; };

  lp::LinearProgram program(n * n);
  program.sense = lp::Sense::maximize;
  program.objective.assign(n * n, Rational(0));

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n * n), col(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      row[var(i, j)] = 1;
      col[var(j, i)] = 1;
    }
    program.add_constraint(std::move(row), lp::Relation::equal, 1);
    program.add_constraint(std::move(col), lp::Relation::equal, 1);
  }
  // Prefix t = n always has cumulative 1 on both sides, so t < n suffices.
  for (Agent i = 0; i < n; ++i) {
    const auto pref = instance.preference(i);
    std::vector<Rational> prefix(n * n);
    Rational baseline = 0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      prefix[var(i, pref[t])] = 1;
      baseline += m(i, pref[t]);
      // Objective: sum over prefixes of the cumulative gain; the constant
      // baseline is subtracted afterwards.
      for (std::size_t u = 0; u <= t; ++u) program.objective[var(i, pref[u])] += 1;
      program.add_constraint(prefix, lp::Relation::greater_equal, baseline);
    }
  }

  const lp::LpResult result = lp::solve(program);
  if (result.status != lp::LpStatus::optimal) {
    throw std::logic_error("SD-efficiency LP is neither bounded nor feasible");
  }

  Rational baseline_total = 0;
  for (Agent i = 0; i < n; ++i) {
    const auto pref = instance.preference(i);
    Rational cum = 0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      cum += m(i, pref[t]);
      baseline_total += cum;
    }
  }

  SdEfficiency out;
  out.slack = result.objective_value - baseline_total;
  out.efficient = out.slack == 0;
  if (!out.efficient) {
    AssignmentMatrix better(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) better(i, j) = result.solution[var(i, j)];
    }
    out.dominating = std::move(better);
  }
  return out;
}

bool is_sd_efficient(const Instance& instance, const AssignmentMatrix& m) {
  return sd_efficiency(instance, m).efficient;
}

}  // namespace randassign
