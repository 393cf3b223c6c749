#include "randassign/exactlp.hpp"

#include <optional>
#include <stdexcept>

#include "randassign/errors.hpp"

namespace randassign::lp {

std::size_t LinearProgram::add_constraint(std::vector<Rational> coefficients,
                                          Relation relation, Rational rhs) {
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
  return constraints.size() - 1;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

void validate(const LinearProgram& p) {
  const std::size_t n = p.num_variables;
  if (!p.objective.empty() && p.objective.size() != n) {
    throw ArgumentError("objective length does not match the variable count");
  }
  if (!p.lower_bounds.empty() && p.lower_bounds.size() != n) {
    throw ArgumentError("lower-bound vector length does not match the variable count");
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (p.constraints[i].coefficients.size() != n) {
      throw ArgumentError("constraint " + std::to_string(i) +
                          " has the wrong number of coefficients");
    }
  }
}

Rational minimisation_cost(const LinearProgram& p, std::size_t j) {
  Rational c = p.cost(j);
  return p.sense == Sense::maximize ? Rational(-c) : c;
}

Rational row_activity(const Constraint& row, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (row.coefficients[j] != 0) s += row.coefficients[j] * x[j];
  }
  return s;
}

// Dense tableau in standard form: A x = b, x >= 0, with the reduced-cost row
// kept alongside. Column layout: structural | slack/surplus | artificial.
class Simplex {
 public:
  Simplex(const LinearProgram& program) : program_(program) {}

  LpResult run();

 private:
  enum class Outcome { optimal, unbounded };

  void build();
  void pivot(std::size_t row, std::size_t col);
  void price(const std::vector<Rational>& costs);
  Outcome iterate(bool allow_artificial, std::size_t& unbounded_col);
  std::vector<Rational> row_multipliers(const std::vector<Rational>& costs) const;

  const LinearProgram& program_;
  std::size_t n_ = 0;        // structural columns
  std::size_t cols_ = 0;     // total columns (rhs stored separately)
  std::size_t first_art_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> rhs_;
  std::vector<Rational> reduced_;
  Rational neg_objective_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> kept_rows_;   // tableau row -> program row
  std::vector<int> flip_;                // +1 / -1 per tableau row
  std::vector<std::size_t> unit_col_;    // initial identity column per row
  std::optional<std::size_t> trivial_infeasible_;
  std::size_t pivots_ = 0;
};

void Simplex::build() {
  n_ = program_.num_variables;
  const auto& rows = program_.constraints;

  std::vector<Rational> shifted(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    shifted[i] = rows[i].rhs;
    bool all_zero = true;
    for (std::size_t j = 0; j < n_; ++j) {
      if (rows[i].coefficients[j] == 0) continue;
      all_zero = false;
      Rational l = program_.lower_bound(j);
      if (l != 0) shifted[i] -= rows[i].coefficients[j] * l;
    }
    if (all_zero) {
      const Rational& b = shifted[i];
      bool ok = rows[i].relation == Relation::equal          ? b == 0
                : rows[i].relation == Relation::less_equal ? b >= 0
                                                           : b <= 0;
      if (!ok && !trivial_infeasible_) trivial_infeasible_ = i;
      continue;
    }
    kept_rows_.push_back(i);
  }
  if (trivial_infeasible_) return;

  const std::size_t m = kept_rows_.size();
  std::size_t slack_count = 0, art_count = 0;
  std::vector<Relation> rel(m);
  flip_.assign(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = rows[kept_rows_[r]];
    rel[r] = c.relation;
    if (shifted[kept_rows_[r]] < 0) {
      flip_[r] = -1;
      if (rel[r] == Relation::less_equal) rel[r] = Relation::greater_equal;
      else if (rel[r] == Relation::greater_equal) rel[r] = Relation::less_equal;
    }
    if (rel[r] != Relation::equal) ++slack_count;
    if (rel[r] != Relation::less_equal) ++art_count;
  }
  first_art_ = n_ + slack_count;
  cols_ = first_art_ + art_count;

  t_.assign(m, std::vector<Rational>(cols_));
  rhs_.resize(m);
  basis_.resize(m);
  unit_col_.resize(m);
  std::size_t next_slack = n_, next_art = first_art_;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = rows[kept_rows_[r]];
    for (std::size_t j = 0; j < n_; ++j) {
      if (c.coefficients[j] != 0) {
        t_[r][j] = flip_[r] > 0 ? c.coefficients[j] : Rational(-c.coefficients[j]);
      }
    }
    Rational b = shifted[kept_rows_[r]];
    rhs_[r] = flip_[r] > 0 ? b : Rational(-b);
    if (rel[r] == Relation::less_equal) {
      t_[r][next_slack] = 1;
      basis_[r] = unit_col_[r] = next_slack++;
    } else {
      if (rel[r] == Relation::greater_equal) t_[r][next_slack++] = -1;
      t_[r][next_art] = 1;
      basis_[r] = unit_col_[r] = next_art++;
    }
  }
}

void Simplex::pivot(std::size_t row, std::size_t col) {
  ++pivots_;
  auto& p = t_[row];
  if (p[col] != 1) {
    const Rational inv = 1 / p[col];
    for (auto& x : p) {
      if (x != 0) x *= inv;
    }
    rhs_[row] *= inv;
  }
  std::vector<std::size_t> nz;
  nz.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (p[j] != 0) nz.push_back(j);
  }
  auto eliminate = [&](std::vector<Rational>& target, Rational& target_rhs) {
    if (target[col] == 0) return;
    const Rational f = target[col];
    for (std::size_t j : nz) target[j] -= f * p[j];
    if (rhs_[row] != 0) target_rhs -= f * rhs_[row];
  };
  for (std::size_t r = 0; r < t_.size(); ++r) {
    if (r != row) eliminate(t_[r], rhs_[r]);
  }
  eliminate(reduced_, neg_objective_);
  basis_[row] = col;
}

void Simplex::price(const std::vector<Rational>& costs) {
  reduced_ = costs;
  neg_objective_ = 0;
  for (std::size_t r = 0; r < t_.size(); ++r) {
    const Rational& cb = costs[basis_[r]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (t_[r][j] != 0) reduced_[j] -= cb * t_[r][j];
    }
    neg_objective_ -= cb * rhs_[r];
  }
}

Simplex::Outcome Simplex::iterate(bool allow_artificial, std::size_t& unbounded_col) {
  const std::size_t limit = allow_artificial ? cols_ : first_art_;
  for (;;) {
    // Bland: lowest-index improving column, lowest-index leaving variable.
    std::size_t enter = limit;
    for (std::size_t j = 0; j < limit; ++j) {
      if (reduced_[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == limit) return Outcome::optimal;

    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (t_[r][enter] <= 0) continue;
      Rational ratio = rhs_[r] / t_[r][enter];
      if (!leave || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[*leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    if (!leave) {
      unbounded_col = enter;
      return Outcome::unbounded;
    }
    pivot(*leave, enter);
  }
}

// y_k = c_{u_k} - d_{u_k}, since the initial identity column u_k is e_k.
std::vector<Rational> Simplex::row_multipliers(const std::vector<Rational>& costs) const {
  std::vector<Rational> y(program_.constraints.size());
  for (std::size_t r = 0; r < t_.size(); ++r) {
    Rational v = costs[unit_col_[r]] - reduced_[unit_col_[r]];
    y[kept_rows_[r]] = flip_[r] > 0 ? v : Rational(-v);
  }
  return y;
}

LpResult Simplex::run() {
  LpResult result;
  build();

  if (trivial_infeasible_) {
    const auto& row = program_.constraints[*trivial_infeasible_];
    Rational b = row.rhs;
    for (std::size_t j = 0; j < n_; ++j) b -= row.coefficients[j] * program_.lower_bound(j);
    result.status = LpStatus::infeasible;
    result.farkas.assign(program_.constraints.size(), Rational(0));
    result.farkas[*trivial_infeasible_] = b > 0 ? 1 : -1;
    return result;
  }

  // Phase one: minimise the sum of artificials.
  std::vector<Rational> phase1(cols_);
  for (std::size_t j = first_art_; j < cols_; ++j) phase1[j] = 1;
  price(phase1);
  std::size_t unused = 0;
  iterate(true, unused);
  if (neg_objective_ != 0) {
    result.status = LpStatus::infeasible;
    result.farkas = row_multipliers(phase1);
    result.pivots = pivots_;
    return result;
  }

  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are linearly dependent and stay inert.
  for (std::size_t r = 0; r < t_.size(); ++r) {
    if (basis_[r] < first_art_) continue;
    for (std::size_t j = 0; j < first_art_; ++j) {
      if (t_[r][j] != 0) {
        pivot(r, j);
        break;
      }
    }
  }

  std::vector<Rational> phase2(cols_);
  for (std::size_t j = 0; j < n_; ++j) phase2[j] = minimisation_cost(program_, j);
  price(phase2);
  std::size_t enter = 0;
  if (iterate(false, enter) == Outcome::unbounded) {
    result.status = LpStatus::unbounded;
    result.ray.assign(n_, Rational(0));
    if (enter < n_) result.ray[enter] = 1;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (basis_[r] < n_) result.ray[basis_[r]] = -t_[r][enter];
    }
    result.pivots = pivots_;
    return result;
  }

  result.status = LpStatus::optimal;
  result.solution.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) result.solution[j] = program_.lower_bound(j);
  for (std::size_t r = 0; r < t_.size(); ++r) {
    if (basis_[r] < n_) result.solution[basis_[r]] += rhs_[r];
  }
  result.objective_value = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    Rational c = program_.cost(j);
    if (c != 0) result.objective_value += c * result.solution[j];
  }
  result.duals = row_multipliers(phase2);
  result.pivots = pivots_;
  return result;
}

// A^T y, over the structural columns.
std::vector<Rational> transpose_times(const LinearProgram& p, const std::vector<Rational>& y) {
  std::vector<Rational> out(p.num_variables);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (y[i] == 0) continue;
    const auto& a = p.constraints[i].coefficients;
    for (std::size_t j = 0; j < p.num_variables; ++j) {
      if (a[j] != 0) out[j] += a[j] * y[i];
    }
  }
  return out;
}

bool multiplier_signs_ok(const LinearProgram& p, const std::vector<Rational>& y) {
  if (y.size() != p.constraints.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    switch (p.constraints[i].relation) {
      case Relation::less_equal:
        if (y[i] > 0) return false;
        break;
      case Relation::greater_equal:
        if (y[i] < 0) return false;
        break;
      case Relation::equal:
        break;
    }
  }
  return true;
}

}  // namespace

bool satisfies_constraints(const LinearProgram& p, const std::vector<Rational>& x) {
  if (x.size() != p.num_variables) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < p.lower_bound(j)) return false;
  }
  for (const auto& row : p.constraints) {
    const Rational s = row_activity(row, x);
    switch (row.relation) {
      case Relation::less_equal:
        if (s > row.rhs) return false;
        break;
      case Relation::greater_equal:
        if (s < row.rhs) return false;
        break;
      case Relation::equal:
        if (s != row.rhs) return false;
        break;
    }
  }
  return true;
}

bool verify_optimality(const LinearProgram& p, const LpResult& r) {
  if (r.status != LpStatus::optimal) return false;
  if (!satisfies_constraints(p, r.solution)) return false;
  Rational value = 0;
  for (std::size_t j = 0; j < p.num_variables; ++j) value += p.cost(j) * r.solution[j];
  if (value != r.objective_value) return false;
  if (!multiplier_signs_ok(p, r.duals)) return false;
  const auto aty = transpose_times(p, r.duals);
  for (std::size_t j = 0; j < p.num_variables; ++j) {
    const Rational d = minimisation_cost(p, j) - aty[j];
    if (d < 0) return false;
    if (d != 0 && r.solution[j] != p.lower_bound(j)) return false;
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (r.duals[i] != 0 && row_activity(p.constraints[i], r.solution) != p.constraints[i].rhs) {
      return false;
    }
  }
  return true;
}

bool verify_farkas(const LinearProgram& p, const std::vector<Rational>& y) {
  if (!multiplier_signs_ok(p, y)) return false;
  const auto aty = transpose_times(p, y);
  Rational gap = 0;
  for (std::size_t i = 0; i < y.size(); ++i) gap += y[i] * p.constraints[i].rhs;
  for (std::size_t j = 0; j < p.num_variables; ++j) {
    if (aty[j] > 0) return false;
    gap -= aty[j] * p.lower_bound(j);
  }
  return gap > 0;
}

bool verify_ray(const LinearProgram& p, const std::vector<Rational>& ray) {
  if (ray.size() != p.num_variables) return false;
  Rational slope = 0;
  for (std::size_t j = 0; j < ray.size(); ++j) {
    if (ray[j] < 0) return false;
    slope += minimisation_cost(p, j) * ray[j];
  }
  if (slope >= 0) return false;
  for (const auto& row : p.constraints) {
    const Rational s = row_activity(row, ray);
    if (row.relation == Relation::equal && s != 0) return false;
    if (row.relation == Relation::less_equal && s > 0) return false;
    if (row.relation == Relation::greater_equal && s < 0) return false;
  }
  return true;
}

LpResult solve(const LinearProgram& program) {
  validate(program);
  Simplex simplex(program);
  LpResult result = simplex.run();
  bool certified = false;
  switch (result.status) {
    case LpStatus::optimal:
      certified = verify_optimality(program, result);
      break;
    case LpStatus::infeasible:
      certified = verify_farkas(program, result.farkas);
      break;
    case LpStatus::unbounded:
      certified = verify_ray(program, result.ray);
      break;
  }
  if (!certified) {
    throw std::logic_error(std::string("simplex produced an invalid ") +
                           to_string(result.status) + " certificate");
  }
  return result;
}

Feasibility feasible(const LinearProgram& program) {
  LinearProgram copy = program;
  copy.objective.clear();
  copy.sense = Sense::minimize;
  LpResult r = solve(copy);
  Feasibility f;
  f.feasible = r.status == LpStatus::optimal;
  f.witness = std::move(r.solution);
  f.farkas = std::move(r.farkas);
  return f;
}

}  // namespace randassign::lp
