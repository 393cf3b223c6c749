#include "randassign/matching.hpp"

#include <numeric>

#include "randassign/errors.hpp"

namespace randassign {
namespace {

// Kuhn's augmenting paths on the positive support, restricted to rows and
// columns that are still free.
class SupportGraph {
 public:
  SupportGraph(const Matrix& m) : n_(m.rows()), adj_(n_, std::vector<bool>(n_)) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) adj_[i][j] = m(i, j) > 0;
    }
  }

  bool has_perfect_matching(const std::vector<bool>& row_used,
                            const std::vector<bool>& col_used) const {
    std::vector<long> match_col(n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_used[i]) continue;
      std::vector<bool> visited(n_, false);
      if (!augment(i, row_used, col_used, match_col, visited)) return false;
    }
    return true;
  }

  bool edge(std::size_t i, std::size_t j) const { return adj_[i][j]; }

 private:
  bool augment(std::size_t i, const std::vector<bool>& row_used,
               const std::vector<bool>& col_used, std::vector<long>& match_col,
               std::vector<bool>& visited) const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!adj_[i][j] || col_used[j] || visited[j]) continue;
      visited[j] = true;
      if (match_col[j] < 0 ||
          augment(static_cast<std::size_t>(match_col[j]), row_used, col_used, match_col,
                  visited)) {
        match_col[j] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<bool>> adj_;
};

void require_order(const std::vector<std::size_t>& order, std::size_t n, const char* what) {
  std::vector<bool> seen(n, false);
  if (order.size() != n) throw ArgumentError(std::string(what) + " has the wrong length");
  for (std::size_t v : order) {
    if (v >= n || seen[v]) throw ArgumentError(std::string(what) + " is not a permutation");
    seen[v] = true;
  }
}

}  // namespace

std::optional<DeterministicAssignment> perfect_matching_on_support(
    const Matrix& m, const std::vector<Agent>& agent_order,
    const std::vector<Object>& object_order) {
  if (!m.square()) throw ArgumentError("matching needs a square matrix");
  const std::size_t n = m.rows();
  require_order(agent_order, n, "agent order");
  require_order(object_order, n, "object order");

  SupportGraph graph(m);
  std::vector<bool> row_used(n, false), col_used(n, false);
  if (!graph.has_perfect_matching(row_used, col_used)) return std::nullopt;

  // Fix rows one at a time to their earliest object that still leaves a
  // perfect matching on the remaining rows and columns.
  std::vector<Object> sigma(n);
  for (Agent i : agent_order) {
    row_used[i] = true;
    bool fixed = false;
    for (Object j : object_order) {
      if (col_used[j] || !graph.edge(i, j)) continue;
      col_used[j] = true;
      if (graph.has_perfect_matching(row_used, col_used)) {
        sigma[i] = j;
        fixed = true;
        break;
      }
      col_used[j] = false;
    }
    if (!fixed) return std::nullopt;  // unreachable once a matching exists
  }
  return DeterministicAssignment(std::move(sigma));
}

std::optional<DeterministicAssignment> perfect_matching_on_support(const Matrix& m) {
  if (!m.square()) throw ArgumentError("matching needs a square matrix");
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return perfect_matching_on_support(m, order, order);
}

}  // namespace randassign
