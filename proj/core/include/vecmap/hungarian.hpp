#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vecmap {

// Dense row-major cost matrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CostMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  // row_to_col[r] is the column assigned to row r.
  std::vector<int> row_to_col;
  // Sum of the chosen entries, accumulated in row order.
  double total_cost = 0.0;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// solved with the shortest-augmenting-path Hungarian method in
// O(rows^2 * cols). Throws std::invalid_argument when rows > cols or when an
// entry is not finite.
Assignment solve_assignment(const CostMatrix& cost);

}  // namespace vecmap
