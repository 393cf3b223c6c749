#include "randassign/types.hpp"

#include <algorithm>
#include <map>

#include "randassign/errors.hpp"

namespace randassign {
namespace {

bool is_permutation_of_range(const std::vector<std::size_t>& values) {
  std::vector<bool> seen(values.size(), false);
  for (std::size_t v : values) {
    if (v >= values.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

std::vector<std::string> default_object_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + j))
                            : "o" + std::to_string(j + 1));
  }
  return names;
}

// -- Instance ----------------------------------------------------------------

Instance::Instance(std::vector<std::vector<Object>> preferences)
    : Instance(preferences, default_object_names(preferences.size())) {}

Instance::Instance(std::vector<std::vector<Object>> preferences,
                   std::vector<std::string> object_names)
    : preferences_(std::move(preferences)), names_(std::move(object_names)) {
  const std::size_t n = preferences_.size();
  if (n < 2) throw ArgumentError("an instance needs at least two agents");
  if (names_.size() != n) {
    throw ArgumentError("expected " + std::to_string(n) + " object names, got " +
                        std::to_string(names_.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (names_[j].empty()) throw ArgumentError("empty object name");
    for (std::size_t k = 0; k < j; ++k) {
      if (names_[j] == names_[k]) throw ArgumentError("duplicate object name '" + names_[j] + "'");
    }
  }
  ranks_.assign(n, std::vector<std::size_t>(n));
  for (Agent i = 0; i < n; ++i) {
    const auto& pref = preferences_[i];
    if (pref.size() != n || !is_permutation_of_range(pref)) {
      throw ArgumentError("preference of agent " + std::to_string(i + 1) +
                          " is not a permutation of the " + std::to_string(n) +
                          " objects");
    }
    for (std::size_t r = 0; r < n; ++r) ranks_[i][pref[r]] = r;
  }
}

Instance Instance::identical(std::size_t n) {
  std::vector<Object> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  return Instance(std::vector<std::vector<Object>>(n, order));
}

// -- DeterministicAssignment -------------------------------------------------

DeterministicAssignment::DeterministicAssignment(std::vector<Object> objects)
    : objects_(std::move(objects)) {
  if (objects_.empty() || !is_permutation_of_range(objects_)) {
    throw ArgumentError("assignment is not a permutation");
  }
}

DeterministicAssignment DeterministicAssignment::identity(std::size_t n) {
  std::vector<Object> objects(n);
  for (std::size_t i = 0; i < n; ++i) objects[i] = i;
  return DeterministicAssignment(std::move(objects));
}

Agent DeterministicAssignment::holder_of(Object o) const {
  auto it = std::find(objects_.begin(), objects_.end(), o);
  if (it == objects_.end()) throw ArgumentError("object index out of range");
  return static_cast<Agent>(it - objects_.begin());
}

// -- Matrix ------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(const std::vector<std::vector<Rational>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ArgumentError("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::uniform(std::size_t n) {
  Matrix m(n, n);
  const Rational share(1, static_cast<long>(n));
  for (auto& x : m.data_) x = share;
  return m;
}

Matrix Matrix::permutation(const DeterministicAssignment& a) {
  Matrix m(a.size(), a.size());
  for (Agent i = 0; i < a.size(); ++i) m(i, a[i]) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

Rational Matrix::min_entry() const {
  if (data_.empty()) throw ArgumentError("min_entry of an empty matrix");
  return *std::min_element(data_.begin(), data_.end());
}

// -- Lottery -----------------------------------------------------------------

Lottery::Lottery(std::vector<Entry> entries) {
  if (entries.empty()) throw ArgumentError("lottery has an empty support");
  const std::size_t n = entries.front().first.size();
  std::map<DeterministicAssignment, Rational> merged;
  Rational total = 0;
  for (auto& [assignment, weight] : entries) {
    if (assignment.size() != n) throw ArgumentError("lottery mixes assignment sizes");
    if (weight < 0) throw ArgumentError("negative lottery weight");
    total += weight;
    if (weight == 0) continue;
    merged[std::move(assignment)] += weight;
  }
  if (total != 1) {
    throw ArgumentError("lottery weights sum to " + to_string(total) + ", not 1");
  }
  entries_.assign(std::make_move_iterator(merged.begin()),
                  std::make_move_iterator(merged.end()));
}

Lottery Lottery::point_mass(DeterministicAssignment a) {
  std::vector<Entry> entries;
  entries.emplace_back(std::move(a), Rational(1));
  return Lottery(std::move(entries));
}

Rational Lottery::weight_of(const DeterministicAssignment& a) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), a,
                             [](const Entry& e, const DeterministicAssignment& key) {
                               return e.first < key;
                             });
  return (it != entries_.end() && it->first == a) ? it->second : Rational(0);
}

// -- envy primitives ---------------------------------------------------------

void require_size(const Instance& instance, std::size_t n, const char* what) {
  if (n != instance.size()) {
    throw ArgumentError(std::string(what) + " has size " + std::to_string(n) +
                        " but the instance has " + std::to_string(instance.size()) +
                        " agents");
  }
}

bool envies(const Instance& instance, const DeterministicAssignment& a, Agent i,
            Agent other) {
  require_size(instance, a.size(), "assignment");
  if (i >= a.size() || other >= a.size()) throw ArgumentError("agent index out of range");
  if (i == other) throw ArgumentError("envy is defined between distinct agents");
  return instance.prefers(i, a[other], a[i]);
}

EnvyMatrix envy_matrix(const Instance& instance, const Lottery& lottery) {
  const std::size_t n = instance.size();
  require_size(instance, lottery.size(), "lottery");
  EnvyMatrix e(n, n);
  for (const auto& [a, w] : lottery) {
    for (Agent i = 0; i < n; ++i) {
      const std::size_t own = instance.rank(i, a[i]);
      if (own == 0) continue;
      for (Agent k = 0; k < n; ++k) {
        if (k != i && instance.rank(i, a[k]) < own) e(i, k) += w;
      }
    }
  }
  return e;
}

bool is_dec_ef(const Instance& instance, const Lottery& lottery) {
  const EnvyMatrix e = envy_matrix(instance, lottery);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < e.rows(); ++i) {
    for (std::size_t k = 0; k < e.cols(); ++k) {
      if (e(i, k) > half) return false;
    }
  }
  return true;
}

AssignmentMatrix matrix_of(const Lottery& lottery) {
  const std::size_t n = lottery.size();
  AssignmentMatrix p(n, n);
  for (const auto& [a, w] : lottery) {
    for (Agent i = 0; i < n; ++i) p(i, a[i]) += w;
  }
  return p;
}

std::string MatrixCheck::describe() const {
  switch (defect) {
    case MatrixDefect::none:
      return "bistochastic";
    case MatrixDefect::not_square:
      return "matrix is not square";
    case MatrixDefect::negative_entry:
      return "negative entry at flat index " + std::to_string(index);
    case MatrixDefect::row_sum:
      return "row " + std::to_string(index + 1) + " does not sum to 1";
    case MatrixDefect::column_sum:
      return "column " + std::to_string(index + 1) + " does not sum to 1";
  }
  return "unknown defect";
}

MatrixCheck validate_matrix(const Matrix& m) {
  if (!m.square() || m.rows() == 0) return {MatrixDefect::not_square, 0};
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0) return {MatrixDefect::negative_entry, i * n + j};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += m(i, j);
    if (sum != 1) return {MatrixDefect::row_sum, i};
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += m(i, j);
    if (sum != 1) return {MatrixDefect::column_sum, j};
  }
  return {};
}

void require_bistochastic(const Matrix& m) {
  if (auto check = validate_matrix(m); !check) {
    throw ArgumentError("not a bistochastic matrix: " + check.describe());
  }
}

}  // namespace randassign
