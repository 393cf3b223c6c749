#pragma once

#include <cstddef>
#include <vector>

#include "randassign/rational.hpp"

namespace randassign::lp {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { minimize, maximize };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::equal;
  Rational rhs;
};

/// Dense LP over exact rationals. Every variable has a finite lower bound
/// (zero unless set) and no upper bound.
struct LinearProgram {
  std::size_t num_variables = 0;
  std::vector<Constraint> constraints;
  /// Empty means the zero objective.
  std::vector<Rational> objective;
  Sense sense = Sense::minimize;
  /// Empty means all zero.
  std::vector<Rational> lower_bounds;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t variables) : num_variables(variables) {}

  /// Returns the index of the new row.
  std::size_t add_constraint(std::vector<Rational> coefficients, Relation relation,
                             Rational rhs);
  Rational lower_bound(std::size_t j) const {
    return lower_bounds.empty() ? Rational(0) : lower_bounds[j];
  }
  Rational cost(std::size_t j) const {
    return objective.empty() ? Rational(0) : objective[j];
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status);

/// Certificates use the minimisation form of the problem (the objective is
/// negated for `maximize`). Row multipliers y follow the sign convention
///   y_i >= 0 on >= rows, y_i <= 0 on <= rows, free on = rows.
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  /// Optimal point (status == optimal).
  std::vector<Rational> solution;
  /// Objective at `solution`, in the caller's sense.
  Rational objective_value;
  /// Optimal dual multipliers, one per constraint; reduced costs
  /// c - A^T y are nonnegative and complementary to x - l.
  std::vector<Rational> duals;
  /// Infeasibility certificate: A^T y <= 0 and y^T (b - A l) > 0.
  std::vector<Rational> farkas;
  /// Unboundedness certificate: a recession direction over the structural
  /// variables along which the (minimisation) objective strictly decreases.
  std::vector<Rational> ray;
  std::size_t pivots = 0;
};

/// Two-phase primal simplex with Bland's rule on a dense tableau. All-zero
/// rows are the only presolve. Every returned certificate is re-verified
/// before returning; a failed check throws std::logic_error.
/// Throws ArgumentError for malformed programs.
LpResult solve(const LinearProgram& program);

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;
  std::vector<Rational> farkas;
};

/// Ignores the objective.
Feasibility feasible(const LinearProgram& program);

// -- certificate checks (exact) ----------------------------------------------

bool satisfies_constraints(const LinearProgram& program, const std::vector<Rational>& x);
/// Primal feasibility, dual feasibility, complementary slackness.
bool verify_optimality(const LinearProgram& program, const LpResult& result);
bool verify_farkas(const LinearProgram& program, const std::vector<Rational>& y);
bool verify_ray(const LinearProgram& program, const std::vector<Rational>& ray);

}  // namespace randassign::lp
