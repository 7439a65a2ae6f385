// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "corrnoise/spectra.hpp"
#include "corrnoise/symmetric_matrix.hpp"

namespace corrnoise {

// The comparison arm: Gaussian data simulated from a template, reduced to a
// sample correlation matrix.
struct GaussianSampleSpec {
  std::size_t sample_size = 0;  // number of observation vectors, >= 2
  std::uint64_t seed = 0;
};

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
};

// Distribution of entrywise differences between a generated matrix and its
// template, over the strict upper triangle.
struct DiffSummary {
  std::vector<HistogramBin> histogram;
  double mean = 0.0;
  double sd = 0.0;
  double max_abs = 0.0;
  std::size_t n_offdiag = 0;  // bin counts always sum to this
};

inline constexpr std::size_t kDefaultDiffBins = 81;
inline constexpr std::pair<double, double> kDefaultDiffRange{-0.4, 0.4};

// Draws sample_size iid N-dimensional mean-zero Gaussian vectors with
// covariance sigma (through its Cholesky factor) and returns their Pearson
// sample correlation matrix.  Unit diagonal by construction and always PSD;
// rank is at most sample_size - 1, so the result is singular whenever
// sample_size <= N.  Singularity is reported by validation, not rejected
// here.  Means are subtracted per variable; the n vs n-1 variance divisor
// cancels out of the correlation.
SymmetricMatrix gaussian_sample_correlation(const SymmetricMatrix& sigma,
                                            const GaussianSampleSpec& spec);

// Histogram + moments of the upper-triangle differences.  Bins are uniform
// over the caller's range, or [-max_abs, +max_abs] when none is given;
// differences outside the range land in the edge bins so counts conserve.
// sd is the population standard deviation about the sample mean.
DiffSummary diff_summary(
    const SymmetricMatrix& generated, const SymmetricMatrix& tmpl,
    std::size_t bins,
    std::optional<std::pair<double, double>> range = std::nullopt);

struct SpectrumComparison {
  Spectrum first;
  Spectrum second;
  double max_gap = 0.0;  // max_j |lambda_j(a) - lambda_j(b)|
};

// Sorted spectra of both matrices plus the largest positionwise eigenvalue
// gap; the data behind "the eigenvalues are indistinguishable" checks.
SpectrumComparison spectrum_compare(const SymmetricMatrix& a,
                                    const SymmetricMatrix& b);

}  // namespace corrnoise
