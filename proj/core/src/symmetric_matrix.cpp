// Apache License, Version 2.0, refer to LICENSE.txt
#include "corrnoise/symmetric_matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "corrnoise/errors.hpp"

namespace corrnoise {

SymmetricMatrix::SymmetricMatrix(std::size_t n, double fill)
    : n_(n), data_(n * (n + 1) / 2, fill) {
  if (n == 0) throw ParameterError("SymmetricMatrix: dimension must be >= 1");
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> SymmetricMatrix::to_dense() const {
  std::vector<double> dense(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const double v = (*this)(i, j);
      dense[i * n_ + j] = v;
      dense[j * n_ + i] = v;
    }
  }
  return dense;
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double d = (*this)(i, i);
    sum += d * d;
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double v = (*this)(i, j);
      sum += 2.0 * v * v;
    }
  }
  return std::sqrt(sum);
}

double SymmetricMatrix::max_abs_difference(const SymmetricMatrix& other) const {
  if (other.size() != n_)
    throw ParameterError("max_abs_difference: dimension mismatch");
  double worst = 0.0;
  for (std::size_t idx = 0; idx < data_.size(); ++idx)
    worst = std::max(worst, std::abs(data_[idx] - other.data_[idx]));
  return worst;
}

bool SymmetricMatrix::all_finite() const noexcept {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace corrnoise
