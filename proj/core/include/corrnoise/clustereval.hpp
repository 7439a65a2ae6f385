// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "corrnoise/noise.hpp"
#include "corrnoise/symmetric_matrix.hpp"
#include "corrnoise/templates.hpp"

namespace corrnoise {

// Symmetric nonnegative dissimilarities with a zero diagonal.
class DissimilarityMatrix {
 public:
  explicit DissimilarityMatrix(std::size_t n, double fill = 0.0);

  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return i == j ? 0.0 : m_(i, j);
  }
  void set(std::size_t i, std::size_t j, double value);

 private:
  SymmetricMatrix m_;
};

// Cluster assignment; labels take values 1..k.
struct Partition {
  std::vector<int> labels;
  int k = 0;
};

struct PamResult {
  Partition partition;
  std::vector<std::size_t> medoids;
  double total_cost = 0.0;  // sum of dissimilarities to assigned medoids
};

struct KChoice {
  int k = 0;
  Partition partition;
  double silhouette = 0.0;
};

struct ReplicateOutcome {
  int chosen_k = 0;
  double adjusted_rand = 0.0;
};

struct ScenarioResult {
  std::vector<ReplicateOutcome> replicates;
  int min_k = 0;
  int max_k = 0;
  double median_k = 0.0;
  double median_adjusted_rand = 0.0;
  // False when noise was injected without the positive-definiteness
  // certificate (eps >= computed lambda_N, as with rank-deficient
  // observation correlations); clustering proceeds regardless.
  bool pd_certified = true;
};

// Rows are observations, columns are measurements; species holds the truth
// class code per row.
struct ObservationTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  std::vector<int> species;
};

// d_ij = 1 - s_ij clamped to [0, 2], zero diagonal.
DissimilarityMatrix correlation_to_dissimilarity(const SymmetricMatrix& s);

// Classic BUILD + SWAP k-medoids.  BUILD greedily seeds k medoids
// minimizing total dissimilarity; SWAP repeatedly applies the best
// strictly-improving (medoid, non-medoid) exchange until none exists.
// Deterministic: ties break toward the lower medoid slot, then the lower
// candidate index; assignment ties break toward the lower medoid slot.
// The seed parameter is reserved for randomized variants and is unused by
// the exact BUILD + SWAP search.
PamResult pam_detailed(const DissimilarityMatrix& d, int k,
                       std::uint64_t seed = 0);
Partition pam(const DissimilarityMatrix& d, int k, std::uint64_t seed = 0);

// Mean over points of s(i) = (b(i) - a(i)) / max(a(i), b(i)), where a is
// the mean within-cluster dissimilarity excluding self and b the smallest
// mean dissimilarity to another cluster.  Singletons contribute 0, as does
// the degenerate a = b = 0 case.  Requires k >= 2 and no empty cluster.
double silhouette_width(const DissimilarityMatrix& d, const Partition& p);

// Runs pam for k = 2..k_max and keeps the k with the largest average
// silhouette width; ties break toward smaller k.
KChoice choose_k(const DissimilarityMatrix& d, int k_max,
                 std::uint64_t seed = 0);

// Chance-corrected pair-counting agreement (Hubert-Arabie form): 1 for
// identical partitions, about 0 for independent ones.  Symmetric and
// invariant under label permutation.  When the correction denominator is 0
// with a 0 numerator (e.g. both partitions trivial and equal) the value is
// 1 by convention.
double adjusted_rand(const Partition& p, const Partition& q);

// Ground-truth partition induced by a template's groups.
Partition groups_partition(const CorrelationTemplate& t);

// Generates `replicates` noisy matrices from the template (routing by
// structure kind), clusters each through choose_k on 1 - S, and scores
// against the truth.  Replicate r uses substream_seed(spec.seed, r), so
// results are independent of execution order and may run in parallel.
ScenarioResult run_scenario(const CorrelationTemplate& t,
                            const NoiseSpec& spec, const Partition& truth,
                            std::size_t replicates, int k_max);

// Pearson correlation between observation rows, over raw measurement
// values.  (Rescaling the columns makes the nearly-indistinguishable
// species pair separate from the distinct one; raw profiles reproduce the
// textbook two-group structure.)
SymmetricMatrix observation_correlation(const ObservationTable& data);

// Truth that merges every species except code 0 into one class.
Partition two_species_truth(const ObservationTable& data);

// The real-data pipeline: observation correlation from the table, optional
// noise injection per spec, clustering, and scoring against the two-species
// truth.  When eps >= computed lambda_N (the observation correlation is
// typically rank-deficient) the noise is applied without the PD certificate
// and the result is flagged pd_certified = false.
ScenarioResult iris_scenario(const ObservationTable& data,
                             const std::optional<NoiseSpec>& spec,
                             std::size_t replicates, int k_max = 10);

}  // namespace corrnoise
