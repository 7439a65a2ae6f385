// Apache License, Version 2.0, refer to LICENSE.txt
#include "corrnoise/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "corrnoise/errors.hpp"

namespace corrnoise {

namespace {

constexpr std::size_t kMaxJacobiSweeps = 100;
constexpr double kJacobiRelTarget = 1e-12;

double off_diagonal_frobenius(const std::vector<double>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = a[i * n + j];
      sum += 2.0 * v * v;
    }
  return std::sqrt(sum);
}

// One cyclic sweep of two-sided Jacobi rotations over the strict upper
// triangle.  Pivots with |a_pq| <= skip are left alone; the caller picks
// skip so the leftover mass stays below the convergence target.
void jacobi_sweep(std::vector<double>& a, std::size_t n, double skip) {
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double apq = a[p * n + q];
      if (std::abs(apq) <= skip) continue;
      const double app = a[p * n + p];
      const double aqq = a[q * n + q];
      const double tau = (aqq - app) / (2.0 * apq);
      const double t = (tau >= 0.0)
                           ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                           : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      a[p * n + p] = app - t * apq;
      a[q * n + q] = aqq + t * apq;
      a[p * n + q] = 0.0;
      a[q * n + p] = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a[i * n + p];
        const double aiq = a[i * n + q];
        const double nip = c * aip - s * aiq;
        const double niq = s * aip + c * aiq;
        a[i * n + p] = nip;
        a[p * n + i] = nip;
        a[i * n + q] = niq;
        a[q * n + i] = niq;
      }
    }
  }
}

void check_input(const SymmetricMatrix& m, double tol, const char* who) {
  if (tol <= 0.0)
    throw ParameterError(std::string(who) + ": tolerance must be positive");
  if (!m.all_finite())
    throw ParameterError(std::string(who) + ": entries must be finite");
}

// Householder reduction to symmetric tridiagonal form (diagonal d,
// subdiagonal e).  Similarity transforms only; eigenvalues are preserved.
void tridiagonalize(std::vector<double> a, std::size_t n,
                    std::vector<double>& d, std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n > 1 ? n - 1 : 0, 0.0);
  std::vector<double> v(n, 0.0), w(n, 0.0), p(n, 0.0);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double x = a[i * n + k];
      xnorm2 += x * x;
    }
    const double x1 = a[(k + 1) * n + k];
    if (xnorm2 == 0.0) {
      e[k] = 0.0;
      continue;
    }
    const double xnorm = std::sqrt(xnorm2);
    const double alpha = (x1 >= 0.0) ? -xnorm : xnorm;
    v[k + 1] = x1 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i * n + k];
    const double vnorm2 = xnorm2 - 2.0 * alpha * x1 + alpha * alpha;
    if (vnorm2 == 0.0) {
      e[k] = alpha;
      continue;
    }
    const double beta = 2.0 / vnorm2;

    for (std::size_t i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a[i * n + j] * v[j];
      p[i] = beta * s;
    }
    double pv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) pv += p[i] * v[i];
    const double coef = 0.5 * beta * pv;
    for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - coef * v[i];

    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] -= v[i] * w[j] + w[i] * v[j];

    a[(k + 1) * n + k] = alpha;
    a[k * n + (k + 1)] = alpha;
    for (std::size_t i = k + 2; i < n; ++i) {
      a[i * n + k] = 0.0;
      a[k * n + i] = 0.0;
    }
    e[k] = alpha;
  }
  if (n > 1) e[n - 2] = a[(n - 1) * n + (n - 2)];
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
}

// Number of eigenvalues of the tridiagonal (d, e) strictly below x, by the
// classic Sturm / LDL^T pivot count.
std::size_t sturm_count_below(const std::vector<double>& d,
                              const std::vector<double>& e, double x,
                              double pivmin) {
  std::size_t count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    double denom = q;
    if (std::abs(denom) < pivmin) denom = (denom < 0.0) ? -pivmin : pivmin;
    q = d[i] - x - e[i - 1] * e[i - 1] / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

struct TridiagonalForm {
  std::vector<double> d;
  std::vector<double> e;
  double lo = 0.0;      // Gershgorin lower bound
  double hi = 0.0;      // Gershgorin upper bound
  double pivmin = 0.0;  // Sturm pivot floor
};

TridiagonalForm make_tridiagonal(const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  TridiagonalForm t;
  tridiagonalize(m.to_dense(), n, t.d, t.e);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double max_e2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = (i > 0) ? std::abs(t.e[i - 1]) : 0.0;
    const double right = (i + 1 < n) ? std::abs(t.e[i]) : 0.0;
    lo = std::min(lo, t.d[i] - left - right);
    hi = std::max(hi, t.d[i] + left + right);
    if (i + 1 < n) max_e2 = std::max(max_e2, t.e[i] * t.e[i]);
  }
  t.lo = lo;
  t.hi = hi;
  t.pivmin = std::max(1.0, max_e2) * std::numeric_limits<double>::min() /
             std::numeric_limits<double>::epsilon();
  return t;
}

// Bisects for the boundary where sturm_count_below first reaches
// `threshold`; the limit point is eigenvalue number `threshold` from below.
double bisect_eigenvalue(const TridiagonalForm& t, std::size_t threshold) {
  double lo = t.lo;
  double hi = t.hi;
  const double scale =
      std::max({1.0, std::abs(lo), std::abs(hi)});
  const double width_target = 1e-14 * scale;
  for (int iter = 0; iter < 200 && (hi - lo) > width_target; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_below(t.d, t.e, mid, t.pivmin) >= threshold)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Spectrum eigenvalues(const SymmetricMatrix& m, double tol) {
  check_input(m, tol, "eigenvalues");
  const std::size_t n = m.size();

  Spectrum out;
  if (n == 1) {
    out.values = {m(0, 0)};
    out.residual_tolerance = 0.0;
    return out;
  }

  std::vector<double> a = m.to_dense();
  const double norm_f = m.frobenius_norm();
  const double rel_target = std::min(kJacobiRelTarget, tol);
  const double target = rel_target * norm_f;
  const double skip = target / (2.0 * static_cast<double>(n));

  bool converged = false;
  std::size_t sweeps = 0;
  for (;;) {
    if (off_diagonal_frobenius(a, n) <= target) {
      converged = true;
      break;
    }
    if (sweeps >= kMaxJacobiSweeps) break;
    jacobi_sweep(a, n, skip);
    ++sweeps;
  }
  if (!converged)
    throw ConvergenceError(
        "eigenvalues: cyclic Jacobi did not converge within " +
        std::to_string(kMaxJacobiSweeps) + " sweeps");

  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  out.residual_tolerance = rel_target;
  return out;
}

double min_eigenvalue(const SymmetricMatrix& m, double tol) {
  check_input(m, tol, "min_eigenvalue");
  if (m.size() == 1) return m(0, 0);
  const TridiagonalForm t = make_tridiagonal(m);
  return bisect_eigenvalue(t, 1);
}

std::pair<double, double> extreme_eigenvalues(const SymmetricMatrix& m,
                                              double tol) {
  check_input(m, tol, "extreme_eigenvalues");
  if (m.size() == 1) return {m(0, 0), m(0, 0)};
  const TridiagonalForm t = make_tridiagonal(m);
  const double smallest = bisect_eigenvalue(t, 1);
  const double largest = bisect_eigenvalue(t, m.size());
  return {largest, smallest};
}

std::vector<std::pair<double, double>> gershgorin_intervals(
    const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::pair<double, double>> intervals(n);
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    intervals[i] = {m(i, i), radius};
  }
  return intervals;
}

CholeskyFactor::CholeskyFactor(std::size_t n)
    : n_(n), data_(n * (n + 1) / 2, 0.0) {
  if (n == 0) throw ParameterError("CholeskyFactor: dimension must be >= 1");
}

std::vector<double> CholeskyFactor::apply(const std::vector<double>& z) const {
  if (z.size() != n_) throw ParameterError("CholeskyFactor::apply: size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* row = &data_[i * (i + 1) / 2];
    for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
    y[i] = s;
  }
  return y;
}

SymmetricMatrix CholeskyFactor::reconstruct() const {
  SymmetricMatrix m(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k)
        s += (*this)(i, k) * (*this)(j, k);
      m(i, j) = s;
    }
  return m;
}

CholeskyFactor cholesky(const SymmetricMatrix& m, double tol) {
  check_input(m, tol, "cholesky");
  const std::size_t n = m.size();
  CholeskyFactor L(n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
    if (!(diag > tol))
      throw ParameterError("cholesky: matrix not positive definite at pivot " +
                           std::to_string(j) + " (value " +
                           std::to_string(diag) + ")");
    const double ljj = std::sqrt(diag);
    L(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / ljj;
    }
  }
  return L;
}

ValidityReport validate_correlation(const SymmetricMatrix& m, double tol) {
  if (tol <= 0.0)
    throw ParameterError("validate_correlation: tolerance must be positive");
  const std::size_t n = m.size();
  ValidityReport report;

  if (!m.all_finite()) {
    report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.max_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.condition_number = std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  report.unit_diagonal = true;
  for (std::size_t i = 0; i < n && report.unit_diagonal; ++i)
    if (std::abs(m(i, i) - 1.0) > tol) report.unit_diagonal = false;

  report.entries_in_range = true;
  for (std::size_t i = 0; i < n && report.entries_in_range; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(m(i, j)) > 1.0 + tol) {
        report.entries_in_range = false;
        break;
      }

  const auto [largest, smallest] = extreme_eigenvalues(m, tol);
  report.min_eigenvalue = smallest;
  report.max_eigenvalue = largest;
  report.positive_semidefinite = smallest >= -tol;
  report.condition_number = (smallest <= tol)
                                ? std::numeric_limits<double>::infinity()
                                : largest / smallest;
  return report;
}

}  // namespace corrnoise
