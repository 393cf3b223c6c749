#include "randassign/rules.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "randassign/errors.hpp"

namespace randassign {

DeterministicAssignment serial_dictatorship(const Instance& instance,
                                            const std::vector<Agent>& order) {
  const std::size_t n = instance.size();
  if (order.size() != n) throw ArgumentError("agent order has the wrong length");
  std::vector<bool> placed(n, false);
  for (Agent a : order) {
    if (a >= n || placed[a]) throw ArgumentError("agent order is not a permutation");
    placed[a] = true;
  }

  std::vector<bool> taken(n, false);
  std::vector<Object> objects(n);
  for (Agent a : order) {
    for (Object o : instance.preference(a)) {
      if (!taken[o]) {
        taken[o] = true;
        objects[a] = o;
        break;
      }
    }
  }
  return DeterministicAssignment(std::move(objects));
}

Lottery random_priority(const Instance& instance, std::size_t cap) {
  const std::size_t n = instance.size();
  if (n > cap) {
    throw ResourceError("random priority enumerates n! orders; n = " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(cap));
  }
  std::vector<Agent> order(n);
  std::iota(order.begin(), order.end(), Agent{0});
  // Ordered map: outcomes aggregate in lexicographic order regardless of
  // enumeration order.
  std::map<DeterministicAssignment, long> counts;
  long total = 0;
  do {
    ++counts[serial_dictatorship(instance, order)];
    ++total;
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<Lottery::Entry> entries;
  entries.reserve(counts.size());
  for (auto& [a, c] : counts) entries.emplace_back(a, Rational(c, total));
  return Lottery(std::move(entries));
}

EatingTrace probabilistic_serial_trace(const Instance& instance) {
  const std::size_t n = instance.size();
  EatingTrace trace{AssignmentMatrix(n, n), {}};
  std::vector<Rational> remaining(n, Rational(1));
  std::vector<bool> gone(n, false);
  std::vector<std::size_t> cursor(n, 0);  // position in each preference list
  Rational clock = 0;
  std::size_t left = n;

  while (left > 0) {
    std::vector<Object> eating(n);
    std::vector<long> eaters(n, 0);
    for (Agent i = 0; i < n; ++i) {
      while (gone[instance.preference(i)[cursor[i]]]) ++cursor[i];
      eating[i] = instance.preference(i)[cursor[i]];
      ++eaters[eating[i]];
    }

    Rational step = -1;
    for (Object o = 0; o < n; ++o) {
      if (eaters[o] == 0) continue;
      Rational t = remaining[o] / eaters[o];
      if (step < 0 || t < step) step = t;
    }

    for (Agent i = 0; i < n; ++i) trace.matrix(i, eating[i]) += step;
    clock += step;
    EatingEvent event{clock, {}};
    for (Object o = 0; o < n; ++o) {
      if (eaters[o] == 0) continue;
      remaining[o] -= step * eaters[o];
      if (remaining[o] == 0) {
        gone[o] = true;
        --left;
        event.depleted.push_back(o);
      }
    }
    trace.events.push_back(std::move(event));
  }
  return trace;
}

AssignmentMatrix probabilistic_serial(const Instance& instance) {
  return probabilistic_serial_trace(instance).matrix;
}

}  // namespace randassign
