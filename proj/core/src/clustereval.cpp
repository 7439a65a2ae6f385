// Apache License, Version 2.0, refer to LICENSE.txt
#include "corrnoise/clustereval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "corrnoise/errors.hpp"
#include "corrnoise/parallel.hpp"
#include "corrnoise/rng.hpp"
#include "corrnoise/spectra.hpp"

namespace corrnoise {

namespace {

constexpr double kSwapImprovementFloor = 1e-12;

std::vector<double> dense_copy(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = d(i, j);
      dist[j * n + i] = d(i, j);
    }
  return dist;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return (n % 2 == 1) ? values[n / 2]
                      : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void summarize(ScenarioResult& result) {
  std::vector<double> ks, ars;
  ks.reserve(result.replicates.size());
  ars.reserve(result.replicates.size());
  int min_k = std::numeric_limits<int>::max();
  int max_k = 0;
  for (const ReplicateOutcome& rep : result.replicates) {
    ks.push_back(static_cast<double>(rep.chosen_k));
    ars.push_back(rep.adjusted_rand);
    min_k = std::min(min_k, rep.chosen_k);
    max_k = std::max(max_k, rep.chosen_k);
  }
  result.min_k = min_k;
  result.max_k = max_k;
  result.median_k = median_of(std::move(ks));
  result.median_adjusted_rand = median_of(std::move(ars));
}

}  // namespace

DissimilarityMatrix::DissimilarityMatrix(std::size_t n, double fill)
    : m_(n, fill) {
  if (fill < 0.0)
    throw ParameterError("DissimilarityMatrix: entries must be nonnegative");
}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    if (value != 0.0)
      throw ParameterError("DissimilarityMatrix: diagonal must stay zero");
    return;
  }
  if (!(value >= 0.0))
    throw ParameterError("DissimilarityMatrix: entries must be nonnegative");
  m_(i, j) = value;
}

DissimilarityMatrix correlation_to_dissimilarity(const SymmetricMatrix& s) {
  const std::size_t n = s.size();
  DissimilarityMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d.set(i, j, std::clamp(1.0 - s(i, j), 0.0, 2.0));
  return d;
}

PamResult pam_detailed(const DissimilarityMatrix& d, int k,
                       std::uint64_t /*seed*/) {
  const std::size_t n = d.size();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw ParameterError("pam: k must lie in [1, n]; got k = " +
                         std::to_string(k) + " with n = " + std::to_string(n));
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::vector<double> dist = dense_copy(d);

  std::vector<std::size_t> medoids;
  medoids.reserve(kk);
  std::vector<char> is_medoid(n, 0);
  std::vector<double> nearest(n, 0.0);

  // BUILD: seed with the point of minimum total dissimilarity, then greedily
  // add the candidate with the largest cost reduction.  Strict comparisons
  // break ties toward the lower index.
  {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += dist[i * n + j];
      if (total < best) {
        best = total;
        best_i = i;
      }
    }
    medoids.push_back(best_i);
    is_medoid[best_i] = 1;
    for (std::size_t j = 0; j < n; ++j) nearest[j] = dist[best_i * n + j];
  }
  while (medoids.size() < kk) {
    double best_gain = -1.0;
    std::size_t best_c = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        gain += std::max(nearest[j] - dist[c * n + j], 0.0);
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    medoids.push_back(best_c);
    is_medoid[best_c] = 1;
    for (std::size_t j = 0; j < n; ++j)
      nearest[j] = std::min(nearest[j], dist[best_c * n + j]);
  }

  // SWAP: apply the best strictly-improving (medoid, candidate) exchange
  // until none exists.  The cost change of every pair is evaluated exactly in
  // one O(n^2 + n k) pass by splitting each point's contribution into a part
  // shared by all medoids and a correction for the point's own medoid.
  std::vector<double> d1(n), d2(n);
  std::vector<std::size_t> slot_of(n);
  auto refresh_nearest = [&] {
    for (std::size_t j = 0; j < n; ++j) {
      double b1 = std::numeric_limits<double>::infinity();
      double b2 = std::numeric_limits<double>::infinity();
      std::size_t s1 = 0;
      for (std::size_t s = 0; s < medoids.size(); ++s) {
        const double v = dist[medoids[s] * n + j];
        if (v < b1) {
          b2 = b1;
          b1 = v;
          s1 = s;
        } else if (v < b2) {
          b2 = v;
        }
      }
      d1[j] = b1;
      d2[j] = b2;
      slot_of[j] = s1;
    }
  };
  refresh_nearest();

  std::vector<double> per_medoid(kk, 0.0);
  if (kk < n) {
    for (;;) {
      double best_delta = -kSwapImprovementFloor;
      std::size_t best_slot = 0;
      std::size_t best_h = n;
      for (std::size_t h = 0; h < n; ++h) {
        if (is_medoid[h]) continue;
        double shared = 0.0;
        std::fill(per_medoid.begin(), per_medoid.end(), 0.0);
        const double* dh = &dist[h * n];
        for (std::size_t j = 0; j < n; ++j) {
          if (j == h) continue;
          const double shared_term = std::min(dh[j] - d1[j], 0.0);
          shared += shared_term;
          per_medoid[slot_of[j]] +=
              std::min(dh[j], d2[j]) - d1[j] - shared_term;
        }
        const double base = shared - d1[h];
        for (std::size_t s = 0; s < kk; ++s) {
          const double delta = base + per_medoid[s];
          if (delta < best_delta) {
            best_delta = delta;
            best_slot = s;
            best_h = h;
          }
        }
      }
      if (best_h == n) break;
      is_medoid[medoids[best_slot]] = 0;
      medoids[best_slot] = best_h;
      is_medoid[best_h] = 1;
      refresh_nearest();
    }
  }

  PamResult result;
  result.medoids = medoids;
  result.partition.k = k;
  result.partition.labels.resize(n);
  result.total_cost = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t s1 = 0;
    for (std::size_t s = 0; s < kk; ++s) {
      const double v = dist[medoids[s] * n + j];
      if (v < best) {
        best = v;
        s1 = s;
      }
    }
    result.partition.labels[j] = static_cast<int>(s1) + 1;
    result.total_cost += best;
  }
  return result;
}

Partition pam(const DissimilarityMatrix& d, int k, std::uint64_t seed) {
  return pam_detailed(d, k, seed).partition;
}

double silhouette_width(const DissimilarityMatrix& d, const Partition& p) {
  const std::size_t n = d.size();
  if (p.labels.size() != n)
    throw ParameterError("silhouette_width: partition length mismatch");
  const int k = p.k;
  if (k < 2) throw ParameterError("silhouette_width: requires k >= 2");

  std::vector<std::size_t> cluster_size(static_cast<std::size_t>(k), 0);
  for (int label : p.labels) {
    if (label < 1 || label > k)
      throw ParameterError("silhouette_width: label outside [1, k]");
    ++cluster_size[static_cast<std::size_t>(label - 1)];
  }
  for (std::size_t c = 0; c < cluster_size.size(); ++c)
    if (cluster_size[c] == 0)
      throw ParameterError("silhouette_width: cluster " +
                           std::to_string(c + 1) + " is empty");

  double total = 0.0;
  std::vector<double> sum_to(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(sum_to.begin(), sum_to.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum_to[static_cast<std::size_t>(p.labels[j] - 1)] += d(i, j);

    const std::size_t own = static_cast<std::size_t>(p.labels[i] - 1);
    if (cluster_size[own] == 1) continue;  // singletons contribute 0
    const double a =
        sum_to[own] / static_cast<double>(cluster_size[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < sum_to.size(); ++c)
      if (c != own)
        b = std::min(b, sum_to[c] / static_cast<double>(cluster_size[c]));
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;  // a = b = 0 contributes 0
  }
  return total / static_cast<double>(n);
}

KChoice choose_k(const DissimilarityMatrix& d, int k_max, std::uint64_t seed) {
  const std::size_t n = d.size();
  if (k_max < 2 || static_cast<std::size_t>(k_max) + 1 > n)
    throw ParameterError("choose_k: k_max must lie in [2, n - 1]");
  KChoice best;
  best.silhouette = -2.0;
  for (int k = 2; k <= k_max; ++k) {
    Partition part = pam(d, k, seed);
    const double s = silhouette_width(d, part);
    if (s > best.silhouette) {  // strict: ties keep the smaller k
      best.k = k;
      best.partition = std::move(part);
      best.silhouette = s;
    }
  }
  return best;
}

double adjusted_rand(const Partition& p, const Partition& q) {
  const std::size_t n = p.labels.size();
  if (q.labels.size() != n)
    throw ParameterError("adjusted_rand: partition length mismatch");
  if (n == 0) throw ParameterError("adjusted_rand: empty partitions");
  if (n == 1) return 1.0;  // single-point partitions are always identical

  int kp = 0, kq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.labels[i] < 1 || q.labels[i] < 1)
      throw ParameterError("adjusted_rand: labels must be >= 1");
    kp = std::max(kp, p.labels[i]);
    kq = std::max(kq, q.labels[i]);
  }

  std::vector<long long> table(static_cast<std::size_t>(kp) * kq, 0);
  std::vector<long long> row(kp, 0), col(kq, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = static_cast<std::size_t>(p.labels[i] - 1);
    const std::size_t c = static_cast<std::size_t>(q.labels[i] - 1);
    ++table[r * kq + c];
    ++row[r];
    ++col[c];
  }

  auto pairs = [](long long x) {
    return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1);
  };
  double index = 0.0;
  for (long long cell : table) index += pairs(cell);
  double sum_row = 0.0, sum_col = 0.0;
  for (long long r : row) sum_row += pairs(r);
  for (long long c : col) sum_col += pairs(c);

  const double expected =
      sum_row * sum_col / pairs(static_cast<long long>(n));
  const double maximum = 0.5 * (sum_row + sum_col);
  const double denom = maximum - expected;
  const double numer = index - expected;
  if (denom == 0.0) return numer == 0.0 ? 1.0 : 0.0;
  return numer / denom;
}

Partition groups_partition(const CorrelationTemplate& t) {
  t.validate();
  Partition p;
  p.k = static_cast<int>(t.groups.size());
  p.labels.reserve(t.dimension());
  for (std::size_t g = 0; g < t.groups.size(); ++g)
    p.labels.insert(p.labels.end(), t.groups[g].size,
                    static_cast<int>(g) + 1);
  return p;
}

ScenarioResult run_scenario(const CorrelationTemplate& t,
                            const NoiseSpec& spec, const Partition& truth,
                            std::size_t replicates, int k_max) {
  t.validate();
  if (truth.labels.size() != t.dimension())
    throw ParameterError(
        "run_scenario: truth partition length must equal the template "
        "dimension");
  if (replicates == 0)
    throw ParameterError("run_scenario: need at least one replicate");

  // Fail fast on inadmissible noise before fanning out.
  perturb_template(t, spec.with_seed(0));

  ScenarioResult result;
  result.replicates.resize(replicates);
  parallel_for_index(replicates, [&](std::size_t r) {
    const NoiseSpec rep_spec = spec.with_seed(substream_seed(spec.seed, r));
    const SymmetricMatrix s = perturb_template(t, rep_spec);
    const DissimilarityMatrix d = correlation_to_dissimilarity(s);
    const KChoice choice = choose_k(d, k_max, rep_spec.seed);
    result.replicates[r] = {choice.k, adjusted_rand(choice.partition, truth)};
  });
  summarize(result);
  return result;
}

SymmetricMatrix observation_correlation(const ObservationTable& data) {
  if (data.rows < 2 || data.cols < 2)
    throw ParameterError(
        "observation_correlation: need at least 2 observations and 2 "
        "measurements");
  if (data.values.size() != data.rows * data.cols)
    throw ParameterError("observation_correlation: value count mismatch");

  std::vector<double> centered(data.rows * data.cols);
  std::vector<double> inv_norm(data.rows);
  for (std::size_t i = 0; i < data.rows; ++i) {
    const double* row = &data.values[i * data.cols];
    double mean = 0.0;
    for (std::size_t j = 0; j < data.cols; ++j) mean += row[j];
    mean /= static_cast<double>(data.cols);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < data.cols; ++j) {
      const double c = row[j] - mean;
      centered[i * data.cols + j] = c;
      norm2 += c * c;
    }
    if (norm2 <= 0.0)
      throw ParameterError("observation_correlation: observation " +
                           std::to_string(i) +
                           " is constant; its correlations are undefined");
    inv_norm[i] = 1.0 / std::sqrt(norm2);
  }

  SymmetricMatrix r(data.rows, 0.0);
  for (std::size_t i = 0; i < data.rows; ++i) {
    r(i, i) = 1.0;
    const double* ci = &centered[i * data.cols];
    for (std::size_t j = i + 1; j < data.rows; ++j) {
      const double* cj = &centered[j * data.cols];
      double dot = 0.0;
      for (std::size_t t = 0; t < data.cols; ++t) dot += ci[t] * cj[t];
      r(i, j) = std::clamp(dot * inv_norm[i] * inv_norm[j], -1.0, 1.0);
    }
  }
  return r;
}

Partition two_species_truth(const ObservationTable& data) {
  Partition p;
  p.k = 2;
  p.labels.reserve(data.species.size());
  for (int s : data.species) p.labels.push_back(s == 0 ? 1 : 2);
  return p;
}

ScenarioResult iris_scenario(const ObservationTable& data,
                             const std::optional<NoiseSpec>& spec,
                             std::size_t replicates, int k_max) {
  if (replicates == 0)
    throw ParameterError("iris_scenario: need at least one replicate");
  if (data.species.size() != data.rows)
    throw ParameterError("iris_scenario: one species label per row required");

  const SymmetricMatrix r0 = observation_correlation(data);
  const Partition truth = two_species_truth(data);
  const std::size_t n = r0.size();

  ScenarioResult result;
  result.replicates.resize(replicates);

  const bool with_noise = spec.has_value() && spec->epsilon > 0.0;
  if (!with_noise) {
    // Deterministic: one clustering, replicated.
    const DissimilarityMatrix d = correlation_to_dissimilarity(r0);
    const KChoice choice = choose_k(d, k_max);
    const ReplicateOutcome outcome{choice.k,
                                   adjusted_rand(choice.partition, truth)};
    std::fill(result.replicates.begin(), result.replicates.end(), outcome);
    summarize(result);
    return result;
  }

  // Observation correlations from few measurements are rank-deficient, so
  // the PD admissibility bound usually has no room; in that case the noise
  // is injected without the certificate and flagged.
  const double lambda_n = min_eigenvalue(r0);
  result.pd_certified = spec->epsilon < lambda_n;

  parallel_for_index(replicates, [&](std::size_t rep) {
    const NoiseSpec rep_spec = spec->with_seed(substream_seed(spec->seed, rep));
    SymmetricMatrix s(n, 0.0);
    if (result.pd_certified) {
      s = perturb_general(r0, rep_spec);
    } else {
      const SymmetricMatrix e = noise_carrier(rep_spec, n);
      s = r0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          s(i, j) += rep_spec.epsilon * e(i, j);
    }
    const DissimilarityMatrix d = correlation_to_dissimilarity(s);
    const KChoice choice = choose_k(d, k_max, rep_spec.seed);
    result.replicates[rep] = {choice.k,
                              adjusted_rand(choice.partition, truth)};
  });
  summarize(result);
  return result;
}

}  // namespace corrnoise
