// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace corrnoise {

// Dense symmetric N x N matrix with a single packed copy of each (i, j) pair:
// the upper triangle plus diagonal, row-major.  Reads and writes through
// operator() resolve to the canonical element, so the matrix is symmetric by
// construction and a write to (j, i) is a write to (i, j).
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n, double fill = 0.0);

  static SymmetricMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[index(i, j)];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[index(i, j)];
  }

  // Full n x n row-major copy (both triangles), for kernels that prefer
  // contiguous row access.
  std::vector<double> to_dense() const;

  double trace() const noexcept;
  double frobenius_norm() const noexcept;

  // max_{i,j} |a_ij - b_ij|; dimensions must match.
  double max_abs_difference(const SymmetricMatrix& other) const;

  bool all_finite() const noexcept;

  const std::vector<double>& packed() const noexcept { return data_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }

  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace corrnoise
