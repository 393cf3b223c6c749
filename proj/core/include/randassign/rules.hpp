#pragma once

#include <cstddef>
#include <vector>

#include "randassign/types.hpp"

namespace randassign {

/// Default cap on n for anything that enumerates all n! agent orders.
inline constexpr std::size_t kOrderEnumerationCap = 8;

/// Agents in `order` pick, one by one, their favourite remaining object.
DeterministicAssignment serial_dictatorship(const Instance& instance,
                                            const std::vector<Agent>& order);

/// Exact random priority: the uniform mixture of serial dictatorships over
/// all n! agent orders. Throws ResourceError when n > cap.
Lottery random_priority(const Instance& instance, std::size_t cap = kOrderEnumerationCap);

/// One depletion event of the eating simulation.
struct EatingEvent {
  Rational time;                 // clock when the event fires
  std::vector<Object> depleted;  // objects finished at this instant
};

struct EatingTrace {
  AssignmentMatrix matrix;
  std::vector<EatingEvent> events;
};

/// Probabilistic serial with exact event times: every agent eats its best
/// remaining object at unit speed; objects finished at the same instant are
/// removed in one step.
AssignmentMatrix probabilistic_serial(const Instance& instance);
EatingTrace probabilistic_serial_trace(const Instance& instance);

}  // namespace randassign
