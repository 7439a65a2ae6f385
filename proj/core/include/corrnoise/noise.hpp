// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "corrnoise/symmetric_matrix.hpp"
#include "corrnoise/templates.hpp"

namespace corrnoise {

// How the noise-carrying unit vectors are produced.
//
// SphereUniform:  iid standard-normal M-vectors normalized to unit length,
//                 hence uniform on the M-sphere.
// IidNormalized:  iid mean-zero base vectors normalized to unit length.
//                 With the normal base (the one implemented) this coincides
//                 with SphereUniform; kept as a distinct name because the
//                 CLT behavior sqrt(M) * u^T v -> N(0,1) is the property of
//                 interest, not sphere uniformity.
// AlphaMixed:     lifts each column u_i to (alpha_i, sqrt(1-alpha_i^2) u_i),
//                 with alpha_i drawn from a chosen density on [-1, 1]; dot
//                 products become alpha_i alpha_j +
//                 sqrt((1-alpha_i^2)(1-alpha_j^2)) u_i^T u_j.
enum class VectorGenerator { SphereUniform, AlphaMixed, IidNormalized };

// Continuous densities on [-1, 1] for the alpha mixing weights.  AbsX and
// ArcMinusCircle favor extreme values; BetaSymmetric is a Beta(a, b)
// rescaled from [0, 1] to [-1, 1].
struct AlphaDensity {
  enum class Kind { AbsX, ArcMinusCircle, BetaSymmetric };

  Kind kind = Kind::AbsX;
  double a = 2.0;  // Beta shape parameters (BetaSymmetric only)
  double b = 2.0;

  double pdf(double x) const;
  double cdf(double x) const;
  // Inverse CDF by bisection to 1e-10.
  double quantile(double p) const;
};

struct NoiseSpec {
  double epsilon = 0.0;  // maximum entrywise noise magnitude
  std::size_t m = 2;     // noise-space dimension M (>= 2)
  VectorGenerator generator = VectorGenerator::SphereUniform;
  std::optional<AlphaDensity> density;  // AlphaMixed only
  std::uint64_t seed = 0;

  NoiseSpec with_seed(std::uint64_t s) const {
    NoiseSpec out = *this;
    out.seed = s;
    return out;
  }
};

struct NoiseBudget {
  double kappa_max = 0.0;  // > 1
};

// N unit columns in M-dimensional space, column-major.
struct UnitVectorSet {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> columns;  // m * n values

  double dot(std::size_t i, std::size_t j) const noexcept;
};

// Draws n unit vectors per the spec's generator (normal base, normalized).
// Deterministic given spec.seed.
UnitVectorSet sample_unit_vectors(const NoiseSpec& spec, std::size_t n);

// E = U^T U: unit diagonal, entries in [-1, 1], positive semidefinite by
// construction (eigenvalues in [0, n]).
SymmetricMatrix gram_noise(const UnitVectorSet& u);

// Gram matrix of the lifted columns (alpha_i, sqrt(1-alpha_i^2) u_i):
// entries alpha_i alpha_j + sqrt((1-alpha_i^2)(1-alpha_j^2)) u_i^T u_j.
// Still unit-diagonal and PSD.  Requires |alpha_i| <= 1.
SymmetricMatrix alpha_mix_with(const UnitVectorSet& u,
                               const std::vector<double>& alphas);

// Samples the alphas from the density, then mixes.
SymmetricMatrix alpha_mix(const UnitVectorSet& u, const AlphaDensity& density,
                          std::uint64_t seed);

// The noise carrier for an n-dimensional target, routed by generator kind.
SymmetricMatrix noise_carrier(const NoiseSpec& spec, std::size_t n);

// S = Sigma + eps * (E - I) for a generic positive-definite correlation
// matrix Sigma.  Admissible iff eps < lambda_N(Sigma) (computed internally);
// then S has unit diagonal, |S_ij - Sigma_ij| <= eps, lambda_N(S) >=
// lambda_N(Sigma) - eps > 0, and kappa(S) <= (lambda_1(Sigma) + (N-1) eps)
// / (lambda_N(Sigma) - eps).  eps = 0 returns Sigma unchanged.
SymmetricMatrix perturb_general(const SymmetricMatrix& sigma,
                                const NoiseSpec& spec);

// Largest noise level that keeps the generic condition-number bound at or
// below budget.kappa_max:
//   eps = (kappa_max * lambda_N - lambda_1) / (kappa_max + (N - 1)),
// additionally capped strictly below lambda_N.  Throws AdmissibilityError
// when kappa_max * lambda_N <= lambda_1 (no positive eps exists).
double epsilon_for_kappa(double lambda1, double lambdaN,
                         const NoiseBudget& budget, std::size_t n);
double epsilon_for_kappa(const SpectralBounds& bounds,
                         const NoiseBudget& budget);

// Constant-correlation recipe: S_ij = rho_k + eps u_i^T u_j within group k,
// delta + eps u_i^T u_j between groups, 1 on the diagonal, with one shared
// vector set of size N.  Requires 0 <= eps < 1 - rho_max (and the template's
// 0 <= delta < rho_min).  kappa(S) <= (N (1 + eps) + 1) / (1 - rho_max - eps).
SymmetricMatrix perturb_blocks(const CorrelationTemplate& t,
                               const NoiseSpec& spec);

// Toeplitz recipe: S = Sigma + eps (U^T U - I) with
// 0 <= eps < (1 - rho_max) / (1 + rho_max).
SymmetricMatrix perturb_toeplitz(const CorrelationTemplate& t,
                                 const NoiseSpec& spec);

// Hub recipe (linear decay): S = Sigma + eps (U^T U - I) with
// 0 <= eps < min_k { 1 - rho_k - (3/4) tau_k }.  Templates with gamma != 1
// carry no analytic certificate and must be routed through perturb_general.
SymmetricMatrix perturb_hub(const CorrelationTemplate& t,
                            const NoiseSpec& spec);

// Kind-based routing: blocks / toeplitz / hub, with hub gamma != 1 falling
// back to perturb_general on the built template.
SymmetricMatrix perturb_template(const CorrelationTemplate& t,
                                 const NoiseSpec& spec);

// Density of the dot product of two independent uniform unit vectors in
// R^M:  f(z; M) = Gamma(M/2) / (Gamma((M-1)/2) sqrt(pi)) * (1-z^2)^((M-3)/2)
// on [-1, 1].  U-shaped at M = 2 (returns +infinity at z = +/-1, an
// integrable endpoint singularity), uniform 1/2 at M = 3, mound-shaped and
// asymptotically Gaussian beyond.
double dot_density(double z, std::size_t m);

// Standard error of noisy correlation entries: eps / sqrt(M).
double noise_se(double epsilon, std::size_t m);

}  // namespace corrnoise
