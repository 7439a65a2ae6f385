// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "corrnoise/symmetric_matrix.hpp"

namespace corrnoise {

// Absolute tolerance for unit-diagonal / entry-range / PSD checks.  Well
// above the eigensolver residual, well below any noise level of interest.
inline constexpr double kDefaultTolerance = 1e-8;

// All eigenvalues of a symmetric matrix, descending:
// values[0] = lambda_1 >= ... >= values[n-1] = lambda_N.
struct Spectrum {
  std::vector<double> values;
  // Guarantee on the internal iterate: ||A v - lambda v|| <= residual
  // tolerance * ||A|| for each eigenpair.
  double residual_tolerance = 0.0;
};

// Correlation-matrix validity per the standard definition: symmetric PSD,
// unit diagonal, entries in [-1, 1].  The condition number lambda_1/lambda_N
// is +infinity when the matrix is singular at the tolerance.
struct ValidityReport {
  bool unit_diagonal = false;
  bool entries_in_range = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool positive_semidefinite = false;
  double condition_number = 0.0;

  bool valid() const noexcept {
    return unit_diagonal && entries_in_range && positive_semidefinite;
  }
};

// Full spectrum by cyclic Jacobi rotations.  Convergence when the
// off-diagonal Frobenius mass falls below 1e-12 * ||A||_F (or tol * ||A||_F
// if tighter is not requested); hard cap of 100 sweeps, after which a
// ConvergenceError is thrown rather than returning a truncated result.
// Deterministic for a given input.
Spectrum eigenvalues(const SymmetricMatrix& m, double tol = kDefaultTolerance);

// Smallest eigenvalue only.  Equals eigenvalues(m).values.back() but runs on
// a cheaper path: Householder tridiagonalization followed by Sturm-count
// bisection, which refines one endpoint of the spectrum without resolving
// the interior.
double min_eigenvalue(const SymmetricMatrix& m, double tol = kDefaultTolerance);

// {lambda_1, lambda_N} by the same tridiagonal bisection path.
std::pair<double, double> extreme_eigenvalues(const SymmetricMatrix& m,
                                              double tol = kDefaultTolerance);

// Row intervals (center A_ii, radius = sum of |off-diagonal| in row i).
// Every eigenvalue lies in the union of the intervals.
std::vector<std::pair<double, double>> gershgorin_intervals(
    const SymmetricMatrix& m);

// Lower-triangular Cholesky factor, packed row-major.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  // j <= i required.
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * (i + 1) / 2 + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * (i + 1) / 2 + j];
  }

  // y = L z.
  std::vector<double> apply(const std::vector<double>& z) const;

  // L L^T, for reconstruction checks.
  SymmetricMatrix reconstruct() const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// Cholesky factorization; requires a positive-definite input.  A pivot at or
// below tol fails with a ParameterError naming the pivot index.
CholeskyFactor cholesky(const SymmetricMatrix& m,
                        double tol = kDefaultTolerance);

// Checks unit diagonal (|a_ii - 1| <= tol), entry range (|a_ij| <= 1 + tol),
// positive semidefiniteness (lambda_N >= -tol), and reports the condition
// number (infinite when lambda_N <= tol).  Failures are carried in the
// report, never thrown.
ValidityReport validate_correlation(const SymmetricMatrix& m,
                                    double tol = kDefaultTolerance);

}  // namespace corrnoise
