#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randassign/rational.hpp"

namespace randassign {

using Agent = std::size_t;
using Object = std::size_t;

/// n agents with strict preferences over n objects. Agents and objects are
/// 0-indexed; object names exist only for I/O.
class Instance {
 public:
  /// Each entry of `preferences` lists object indices from best to worst.
  explicit Instance(std::vector<std::vector<Object>> preferences);
  Instance(std::vector<std::vector<Object>> preferences,
           std::vector<std::string> object_names);

  /// All agents share the preference 0 > 1 > ... > n-1.
  static Instance identical(std::size_t n);

  std::size_t size() const noexcept { return preferences_.size(); }

  std::span<const Object> preference(Agent i) const { return preferences_.at(i); }
  const std::vector<std::vector<Object>>& preferences() const noexcept {
    return preferences_;
  }

  /// Position of `o` in agent i's list; 0 is the favourite.
  std::size_t rank(Agent i, Object o) const { return ranks_.at(i).at(o); }
  bool prefers(Agent i, Object better, Object worse) const {
    return rank(i, better) < rank(i, worse);
  }

  const std::vector<std::string>& object_names() const noexcept { return names_; }
  const std::string& object_name(Object o) const { return names_.at(o); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.preferences_ == b.preferences_;
  }

 private:
  std::vector<std::vector<Object>> preferences_;
  std::vector<std::vector<std::size_t>> ranks_;
  std::vector<std::string> names_;
};

/// Default object labels: a, b, c, ... (o1, o2, ... beyond 26 objects).
std::vector<std::string> default_object_names(std::size_t n);

/// A perfect matching; entry i is the object agent i receives.
class DeterministicAssignment {
 public:
  explicit DeterministicAssignment(std::vector<Object> objects);

  static DeterministicAssignment identity(std::size_t n);

  std::size_t size() const noexcept { return objects_.size(); }
  Object operator[](Agent i) const { return objects_[i]; }
  Object object_of(Agent i) const { return objects_.at(i); }
  /// Inverse permutation: which agent holds object o.
  Agent holder_of(Object o) const;

  const std::vector<Object>& objects() const noexcept { return objects_; }

  friend auto operator<=>(const DeterministicAssignment&,
                          const DeterministicAssignment&) = default;
  friend bool operator==(const DeterministicAssignment&,
                         const DeterministicAssignment&) = default;

 private:
  std::vector<Object> objects_;
};

/// Dense matrix of exact rationals. Used for assignment matrices (square,
/// bistochastic), envy matrices, and intermediate residuals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Throws ArgumentError when the rows are ragged.
  explicit Matrix(const std::vector<std::vector<Rational>>& rows);

  static Matrix zeros(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n);
  static Matrix uniform(std::size_t n);
  static Matrix permutation(const DeterministicAssignment& a);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const Rational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  bool is_zero() const;
  Rational min_entry() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// p[i][j] = probability agent i receives object j.
using AssignmentMatrix = Matrix;
/// e[i][i'] = probability agent i envies agent i'.
using EnvyMatrix = Matrix;

/// Probability distribution over deterministic assignments. Canonical form:
/// sorted by assignment, duplicates merged, zero weights dropped; the
/// remaining weights are strictly positive and sum to exactly 1.
class Lottery {
 public:
  using Entry = std::pair<DeterministicAssignment, Rational>;

  /// Throws ArgumentError on negative weights, mixed sizes, an empty support,
  /// or weights that do not sum to 1.
  explicit Lottery(std::vector<Entry> entries);

  static Lottery point_mass(DeterministicAssignment a);

  std::size_t size() const noexcept { return entries_.front().first.size(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Weight of `a`, zero when absent.
  Rational weight_of(const DeterministicAssignment& a) const;

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<Entry> entries_;
};

// -- envy primitives ---------------------------------------------------------

/// True iff agent i strictly prefers the object of agent `other` to its own.
bool envies(const Instance& instance, const DeterministicAssignment& a, Agent i,
            Agent other);

EnvyMatrix envy_matrix(const Instance& instance, const Lottery& lottery);

/// Every envy probability is at most 1/2.
bool is_dec_ef(const Instance& instance, const Lottery& lottery);

AssignmentMatrix matrix_of(const Lottery& lottery);

enum class MatrixDefect {
  none,
  not_square,
  negative_entry,
  row_sum,
  column_sum,
};

struct MatrixCheck {
  MatrixDefect defect = MatrixDefect::none;
  /// Offending row or column (row-major flat index for negative entries).
  std::size_t index = 0;

  explicit operator bool() const noexcept { return defect == MatrixDefect::none; }
  std::string describe() const;
};

/// Bistochasticity check: square, nonnegative, unit row and column sums.
MatrixCheck validate_matrix(const Matrix& m);

/// Throws ArgumentError naming the defect when `m` is not bistochastic.
void require_bistochastic(const Matrix& m);

/// Throws ArgumentError unless both sizes equal instance.size().
void require_size(const Instance& instance, std::size_t n, const char* what);

}  // namespace randassign
