#include "randassign/decomposers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "randassign/errors.hpp"
#include "randassign/matching.hpp"
#include "randassign/properties.hpp"

namespace randassign {

MatchingSelector lexicographic_selector() {
  return [](const Matrix& residual) { return perfect_matching_on_support(residual); };
}

std::vector<Lottery::Entry> birkhoff_peel(Matrix residual, const MatchingSelector& select) {
  const std::size_t n = residual.rows();
  std::vector<Lottery::Entry> steps;
  while (!residual.is_zero()) {
    auto sigma = select(residual);
    if (!sigma) {
      throw std::logic_error("no support matching on a residual with equal line sums");
    }
    Rational alpha = -1;
    for (Agent i = 0; i < n; ++i) {
      const Rational& x = residual(i, (*sigma)[i]);
      if (x <= 0) throw ArgumentError("matching selector left the residual's support");
      if (alpha < 0 || x < alpha) alpha = x;
    }
    for (Agent i = 0; i < n; ++i) residual(i, (*sigma)[i]) -= alpha;
    steps.emplace_back(std::move(*sigma), std::move(alpha));
  }
  return steps;
}

Lottery birkhoff(const AssignmentMatrix& m, const MatchingSelector& select) {
  require_bistochastic(m);
  return Lottery(birkhoff_peel(m, select));
}

Lottery birkhoff(const AssignmentMatrix& m) { return birkhoff(m, lexicographic_selector()); }

Lottery uniform_decomposition(std::size_t n, std::size_t cap) {
  if (n == 0) throw ArgumentError("uniform decomposition of size 0");
  if (n > cap) {
    throw ResourceError("uniform decomposition enumerates n! assignments; n = " +
                        std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
  std::vector<Object> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Object{0});
  long factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<long>(k);
  const Rational w(1, factorial);
  std::vector<Lottery::Entry> entries;
  do {
    entries.emplace_back(DeterministicAssignment(sigma), w);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return Lottery(std::move(entries));
}

Lottery decompose_three_agent(const Instance& instance, const AssignmentMatrix& m) {
  if (instance.size() != 3) throw ArgumentError("three-agent decomposer needs n = 3");
  require_bistochastic(m);
  require_size(instance, m.rows(), "assignment matrix");
  if (auto pair = sd_ef_violation(instance, m)) {
    throw PreconditionError("matrix is not SD-EF (agent " + std::to_string(pair->first + 1) +
                            " vs agent " + std::to_string(pair->second + 1) + ")");
  }

  const Rational p_star = m.min_entry();
  std::vector<Lottery::Entry> entries;
  Matrix residual = m;
  if (p_star > 0) {
    // Each entry lies on exactly two of the six permutations.
    const Rational half = p_star / 2;
    for (const auto& [a, w] : uniform_decomposition(3)) entries.emplace_back(a, half);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) residual(i, j) -= p_star;
    }
  }
  auto rest = birkhoff_peel(std::move(residual), lexicographic_selector());
  entries.insert(entries.end(), std::make_move_iterator(rest.begin()),
                 std::make_move_iterator(rest.end()));
  return Lottery(std::move(entries));
}

std::optional<TwoTypeStructure> detect_two_type(const Instance& instance) {
  const std::size_t n = instance.size();
  const auto& prefs = instance.preferences();
  TwoTypeStructure s;
  s.type_of.assign(n, 0);
  s.first_preference = prefs[0];

  std::optional<std::vector<Object>> second;
  for (Agent i = 0; i < n; ++i) {
    if (prefs[i] == prefs[0]) continue;
    if (!second) second = prefs[i];
    if (prefs[i] != *second) return std::nullopt;
    s.type_of[i] = 1;
  }
  if (!second) s.type_of[n - 1] = 1;

  for (Agent i = 0; i < n; ++i) (s.type_of[i] == 0 ? s.first_type : s.second_type).push_back(i);
  s.r = s.first_type.size();
  s.s = s.second_type.size();
  return s;
}

TwoTypeStructure attach_marginals(TwoTypeStructure s, const AssignmentMatrix& m) {
  const std::size_t n = s.type_of.size();
  if (!m.square() || m.rows() != n) throw ArgumentError("matrix size does not match the structure");
  auto same_rows = [&](const std::vector<Agent>& group) {
    for (Agent i : group) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j) != m(group.front(), j)) return false;
      }
    }
    return true;
  };
  if (!same_rows(s.first_type) || !same_rows(s.second_type)) {
    throw PreconditionError("rows differ between agents of the same type");
  }
  s.a.assign(n, Rational(0));
  s.b.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    s.a[j] = m(s.first_type.front(), j) * static_cast<long>(s.r);
    s.b[j] = 1 - s.a[j];
  }
  return s;
}

bool claim1_diagnostic(const TwoTypeStructure& s) {
  const std::size_t n = s.a.size();
  if (n == 0 || s.first_preference.size() != n) {
    throw ArgumentError("claim1_diagnostic needs marginals for every object");
  }
  std::vector<Rational> ranked(n);
  for (std::size_t k = 0; k < n; ++k) ranked[k] = s.a[s.first_preference[k]];
  Rational partial = 0;
  for (std::size_t t = 0; t < n; ++t) {
    partial += ranked[t] - ranked[n - 1 - t];
    if (partial < 0) return false;
  }
  return true;
}

namespace {

// 2k blocks: the k cyclic shifts of `block` and of its reversal.
std::vector<std::vector<Object>> shifts_and_reflections(const std::vector<Object>& block) {
  const std::size_t k = block.size();
  std::vector<Object> reflected(block.rbegin(), block.rend());
  std::vector<std::vector<Object>> out;
  out.reserve(2 * k);
  const std::vector<Object>* bases[] = {&block, &reflected};
  for (const auto* base : bases) {
    for (std::size_t shift = 0; shift < k; ++shift) {
      std::vector<Object> rotated(k);
      for (std::size_t t = 0; t < k; ++t) rotated[t] = (*base)[(t + shift) % k];
      out.push_back(std::move(rotated));
    }
  }
  return out;
}

}  // namespace

std::vector<DeterministicAssignment> shift_reflect_family(const TwoTypeStructure& s,
                                                          const DeterministicAssignment& seed) {
  std::vector<Object> top, bottom;
  for (Agent i : s.first_type) top.push_back(seed[i]);
  for (Agent i : s.second_type) bottom.push_back(seed[i]);

  std::vector<DeterministicAssignment> family;
  family.reserve(4 * s.r * s.s);
  std::vector<Object> objects(seed.size());
  for (const auto& upper : shifts_and_reflections(top)) {
    for (const auto& lower : shifts_and_reflections(bottom)) {
      for (std::size_t t = 0; t < s.r; ++t) objects[s.first_type[t]] = upper[t];
      for (std::size_t t = 0; t < s.s; ++t) objects[s.second_type[t]] = lower[t];
      family.emplace_back(objects);
    }
  }
  return family;
}

TwoTypeDecomposition decompose_two_type_traced(
    const Instance& instance, const AssignmentMatrix& m,
    const std::vector<DeterministicAssignment>& q_sequence) {
  require_bistochastic(m);
  require_size(instance, m.rows(), "assignment matrix");
  auto detected = detect_two_type(instance);
  if (!detected) throw PreconditionError("instance has three or more preference types");
  if (auto pair = sd_ef_violation(instance, m)) {
    throw PreconditionError("matrix is not SD-EF (agent " + std::to_string(pair->first + 1) +
                            " vs agent " + std::to_string(pair->second + 1) + ")");
  }
  TwoTypeStructure structure = attach_marginals(std::move(*detected), m);
  if (!claim1_diagnostic(structure)) {
    throw std::logic_error("partial-sum inequality failed on an SD-EF two-type matrix");
  }

  const std::size_t n = m.rows();
  Matrix residual = m;
  std::map<DeterministicAssignment, Rational> weights;
  std::vector<TwoTypeRound> rounds;

  while (!residual.is_zero()) {
    const std::size_t k = rounds.size();
    std::optional<DeterministicAssignment> seed;
    if (k < q_sequence.size()) {
      seed = q_sequence[k];
      if (seed->size() != n) throw ArgumentError("Q has the wrong size");
      for (Agent i = 0; i < n; ++i) {
        if (residual(i, (*seed)[i]) <= 0) {
          throw ArgumentError("Q number " + std::to_string(k + 1) +
                              " is not supported on the residual");
        }
      }
    } else {
      seed = perfect_matching_on_support(residual);
      if (!seed) throw std::logic_error("no support matching on a two-type residual");
    }

    const auto family = shift_reflect_family(structure, *seed);
    Matrix sum(n, n);
    for (const auto& q : family) {
      for (Agent i = 0; i < n; ++i) sum(i, q[i]) += 1;
    }
    Rational alpha = -1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (sum(i, j) == 0) continue;
        Rational ratio = residual(i, j) / sum(i, j);
        if (alpha < 0 || ratio < alpha) alpha = std::move(ratio);
      }
    }
    for (const auto& q : family) weights[q] += alpha;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (sum(i, j) != 0) residual(i, j) -= alpha * sum(i, j);
      }
    }
    rounds.push_back({std::move(*seed), std::move(sum), std::move(alpha)});
  }

  std::vector<Lottery::Entry> entries(weights.begin(), weights.end());
  return {Lottery(std::move(entries)), std::move(rounds), std::move(structure)};
}

Lottery decompose_two_type(const Instance& instance, const AssignmentMatrix& m,
                           const std::vector<DeterministicAssignment>& q_sequence) {
  return decompose_two_type_traced(instance, m, q_sequence).lottery;
}

}  // namespace randassign
