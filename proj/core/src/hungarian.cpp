#include "vecmap/hungarian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vecmap {

CostMatrix CostMatrix::transposed() const {
  CostMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Assignment solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (n > m) {
    throw std::invalid_argument("assignment needs rows <= cols");
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (!std::isfinite(cost(r, c))) {
        throw std::invalid_argument("cost matrix entries must be finite");
      }
    }
  }

  Assignment result;
  result.row_to_col.assign(n, -1);
  if (n == 0) return result;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; index 0 is the virtual root of each augmenting tree.
  std::vector<double> row_potential(n + 1, 0.0);
  std::vector<double> col_potential(m + 1, 0.0);
  std::vector<std::size_t> col_owner(m + 1, 0);
  std::vector<std::size_t> way(m + 1, 0);

  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_slack(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = col_owner[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= m; ++c) {
        if (used[c]) continue;
        const double reduced =
            cost(row0 - 1, c - 1) - row_potential[row0] - col_potential[c];
        if (reduced < min_slack[c]) {
          min_slack[c] = reduced;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= m; ++c) {
        if (used[c]) {
          row_potential[col_owner[c]] += delta;
          col_potential[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      col_owner[col0] = col_owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  for (std::size_t c = 1; c <= m; ++c) {
    if (col_owner[c] != 0) {
      result.row_to_col[col_owner[c] - 1] = static_cast<int>(c - 1);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    result.total_cost += cost(r, static_cast<std::size_t>(result.row_to_col[r]));
  }
  return result;
}

}  // namespace vecmap
