// Apache License, Version 2.0, refer to LICENSE.txt
#include "corrnoise/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "corrnoise/errors.hpp"
#include "corrnoise/rng.hpp"

namespace corrnoise {

SymmetricMatrix gaussian_sample_correlation(const SymmetricMatrix& sigma,
                                            const GaussianSampleSpec& spec) {
  if (spec.sample_size < 2)
    throw ParameterError(
        "gaussian_sample_correlation: sample_size must be >= 2");
  const std::size_t n_vars = sigma.size();
  const std::size_t n_obs = spec.sample_size;
  const CholeskyFactor L = cholesky(sigma);

  // Data matrix, observations by variables.
  std::vector<double> data(n_obs * n_vars);
  auto engine = make_engine(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(n_vars);
  for (std::size_t t = 0; t < n_obs; ++t) {
    for (std::size_t j = 0; j < n_vars; ++j) z[j] = normal(engine);
    const std::vector<double> x = L.apply(z);
    std::copy(x.begin(), x.end(), data.begin() + t * n_vars);
  }

  // Center each variable and normalize to unit Euclidean length; the sample
  // correlation is then a plain Gram matrix (PSD by construction, with rank
  // at most n_obs - 1).
  std::vector<double> mean(n_vars, 0.0);
  for (std::size_t t = 0; t < n_obs; ++t)
    for (std::size_t j = 0; j < n_vars; ++j) mean[j] += data[t * n_vars + j];
  for (std::size_t j = 0; j < n_vars; ++j)
    mean[j] /= static_cast<double>(n_obs);

  std::vector<double> centered(n_obs * n_vars);
  std::vector<double> inv_norm(n_vars, 0.0);
  for (std::size_t j = 0; j < n_vars; ++j) {
    double norm2 = 0.0;
    for (std::size_t t = 0; t < n_obs; ++t) {
      const double c = data[t * n_vars + j] - mean[j];
      centered[j * n_obs + t] = c;  // transpose: variables contiguous
      norm2 += c * c;
    }
    inv_norm[j] = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
  }

  SymmetricMatrix r(n_vars, 0.0);
  for (std::size_t i = 0; i < n_vars; ++i) {
    r(i, i) = 1.0;
    const double* ci = &centered[i * n_obs];
    for (std::size_t j = i + 1; j < n_vars; ++j) {
      const double* cj = &centered[j * n_obs];
      double dot = 0.0;
      for (std::size_t t = 0; t < n_obs; ++t) dot += ci[t] * cj[t];
      r(i, j) = std::clamp(dot * inv_norm[i] * inv_norm[j], -1.0, 1.0);
    }
  }
  return r;
}

DiffSummary diff_summary(const SymmetricMatrix& generated,
                         const SymmetricMatrix& tmpl, std::size_t bins,
                         std::optional<std::pair<double, double>> range) {
  if (generated.size() != tmpl.size())
    throw ParameterError("diff_summary: dimension mismatch");
  if (bins == 0) throw ParameterError("diff_summary: need at least one bin");

  const std::size_t n = generated.size();
  DiffSummary out;
  out.n_offdiag = n * (n - 1) / 2;

  std::vector<double> diffs;
  diffs.reserve(out.n_offdiag);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = generated(i, j) - tmpl(i, j);
      diffs.push_back(d);
      sum += d;
      out.max_abs = std::max(out.max_abs, std::abs(d));
    }

  const std::size_t count = diffs.size();
  out.mean = count > 0 ? sum / static_cast<double>(count) : 0.0;
  double var = 0.0;
  for (double d : diffs) var += (d - out.mean) * (d - out.mean);
  out.sd = count > 0 ? std::sqrt(var / static_cast<double>(count)) : 0.0;

  double lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
    if (!(lo < hi)) throw ParameterError("diff_summary: empty range");
  } else {
    const double half = out.max_abs > 0.0 ? out.max_abs : 1e-12;
    lo = -half;
    hi = half;
  }

  out.histogram.resize(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.histogram[b].left = lo + width * static_cast<double>(b);
    out.histogram[b].right =
        (b + 1 == bins) ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (double d : diffs) {
    std::ptrdiff_t b =
        static_cast<std::ptrdiff_t>(std::floor((d - lo) / width));
    // Out-of-range differences land in the edge bins so counts conserve.
    b = std::clamp<std::ptrdiff_t>(b, 0,
                                   static_cast<std::ptrdiff_t>(bins) - 1);
    ++out.histogram[static_cast<std::size_t>(b)].count;
  }
  return out;
}

SpectrumComparison spectrum_compare(const SymmetricMatrix& a,
                                    const SymmetricMatrix& b) {
  if (a.size() != b.size())
    throw ParameterError("spectrum_compare: dimension mismatch");
  SpectrumComparison out;
  out.first = eigenvalues(a);
  out.second = eigenvalues(b);
  for (std::size_t i = 0; i < out.first.values.size(); ++i)
    out.max_gap = std::max(
        out.max_gap, std::abs(out.first.values[i] - out.second.values[i]));
  return out;
}

}  // namespace corrnoise
