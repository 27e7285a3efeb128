#pragma once

#include <cstddef>
#include <vector>

namespace lexrank {

// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, double fill = 0.0)
      : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const { return n_; }

  double& operator()(int i, int j) { return cells_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j]; }

  double row_sum(int i) const {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
  }

 private:
  int n_ = 0;
  std::vector<double> cells_;
};

}  // namespace lexrank
