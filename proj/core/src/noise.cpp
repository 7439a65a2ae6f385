// Apache License, Version 2.0, refer to LICENSE.txt
#include "corrnoise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "corrnoise/errors.hpp"
#include "corrnoise/rng.hpp"
#include "corrnoise/spectra.hpp"

namespace corrnoise {

namespace {

constexpr double kQuantileBisectionTol = 1e-10;

// Dedicated substream tag so the alpha draws never collide with the unit
// vector draws of the same spec seed.
constexpr std::uint64_t kAlphaStreamTag = 0xA1FAull;

void check_noise_dimension(std::size_t m) {
  if (m < 2)
    throw ParameterError("noise space dimension m must be >= 2");
}

SymmetricMatrix add_scaled_noise(const SymmetricMatrix& sigma,
                                 const NoiseSpec& spec) {
  if (spec.epsilon == 0.0) return sigma;
  const std::size_t n = sigma.size();
  const SymmetricMatrix e = noise_carrier(spec, n);
  SymmetricMatrix s = sigma;
  // Diagonal untouched: Sigma_ii + eps * (E_ii - 1) = Sigma_ii exactly.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      s(i, j) += spec.epsilon * e(i, j);
  return s;
}

void check_epsilon_range(double epsilon, double epsilon_max,
                         const std::string& constraint) {
  if (!(epsilon >= 0.0))
    throw AdmissibilityError("noise level epsilon must be nonnegative; got " +
                             std::to_string(epsilon));
  if (!(epsilon < epsilon_max))
    throw AdmissibilityError(
        "noise level epsilon = " + std::to_string(epsilon) +
        " is outside the admissible range [0, " + std::to_string(epsilon_max) +
        "); binding constraint: " + constraint);
}

}  // namespace

double AlphaDensity::pdf(double x) const {
  if (!(x >= -1.0 && x <= 1.0))
    throw ParameterError("AlphaDensity::pdf: x must lie in [-1, 1]");
  switch (kind) {
    case Kind::AbsX:
      return std::abs(x);
    case Kind::ArcMinusCircle:
      return (2.0 - 2.0 * std::sqrt(std::max(0.0, 1.0 - x * x))) /
             (4.0 - std::numbers::pi);
    case Kind::BetaSymmetric: {
      if (!(a > 0.0 && b > 0.0))
        throw ParameterError("AlphaDensity: Beta shapes must be positive");
      const double u = 0.5 * (x + 1.0);
      if (u <= 0.0 || u >= 1.0) {
        // Endpoint values: finite iff the shape exponent is >= 1.
        if ((u <= 0.0 && a < 1.0) || (u >= 1.0 && b < 1.0))
          return std::numeric_limits<double>::infinity();
        if ((u <= 0.0 && a > 1.0) || (u >= 1.0 && b > 1.0)) return 0.0;
      }
      const double log_norm = std::lgamma(a + b) - std::lgamma(a) -
                              std::lgamma(b);
      return 0.5 * std::exp(log_norm + (a - 1.0) * std::log(u) +
                            (b - 1.0) * std::log1p(-u));
    }
  }
  return 0.0;
}

double AlphaDensity::cdf(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  switch (kind) {
    case Kind::AbsX:
      return x < 0.0 ? 0.5 * (1.0 - x * x) : 0.5 * (1.0 + x * x);
    case Kind::ArcMinusCircle: {
      const double circ =
          x * std::sqrt(std::max(0.0, 1.0 - x * x)) + std::asin(x);
      return (2.0 * (x + 1.0) - (circ + 0.5 * std::numbers::pi)) /
             (4.0 - std::numbers::pi);
    }
    case Kind::BetaSymmetric:
      if (!(a > 0.0 && b > 0.0))
        throw ParameterError("AlphaDensity: Beta shapes must be positive");
      return boost::math::ibeta(a, b, 0.5 * (x + 1.0));
  }
  return 0.0;
}

double AlphaDensity::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError("AlphaDensity::quantile: p must lie in [0, 1]");
  if (p == 0.0) return -1.0;
  if (p == 1.0) return 1.0;
  double lo = -1.0;
  double hi = 1.0;
  while (hi - lo > kQuantileBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double UnitVectorSet::dot(std::size_t i, std::size_t j) const noexcept {
  const double* ci = &columns[i * m];
  const double* cj = &columns[j * m];
  double s = 0.0;
  for (std::size_t r = 0; r < m; ++r) s += ci[r] * cj[r];
  return s;
}

UnitVectorSet sample_unit_vectors(const NoiseSpec& spec, std::size_t n) {
  check_noise_dimension(spec.m);
  if (n == 0)
    throw ParameterError("sample_unit_vectors: need at least one vector");

  UnitVectorSet set;
  set.m = spec.m;
  set.n = n;
  set.columns.resize(spec.m * n);

  auto engine = make_engine(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    double* col = &set.columns[c * spec.m];
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t r = 0; r < spec.m; ++r) {
        col[r] = normal(engine);
        norm2 += col[r] * col[r];
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < spec.m; ++r) col[r] *= inv;
  }
  return set;
}

SymmetricMatrix gram_noise(const UnitVectorSet& u) {
  SymmetricMatrix e(u.n, 0.0);
  for (std::size_t i = 0; i < u.n; ++i) {
    e(i, i) = 1.0;
    for (std::size_t j = i + 1; j < u.n; ++j)
      e(i, j) = std::clamp(u.dot(i, j), -1.0, 1.0);
  }
  return e;
}

SymmetricMatrix alpha_mix_with(const UnitVectorSet& u,
                               const std::vector<double>& alphas) {
  if (alphas.size() != u.n)
    throw ParameterError("alpha_mix_with: one alpha per column required");
  for (double a : alphas)
    if (!(std::abs(a) <= 1.0))
      throw ParameterError("alpha_mix_with: |alpha| must be <= 1");

  std::vector<double> lift(u.n);
  for (std::size_t i = 0; i < u.n; ++i)
    lift[i] = std::sqrt(std::max(0.0, 1.0 - alphas[i] * alphas[i]));

  SymmetricMatrix e(u.n, 0.0);
  for (std::size_t i = 0; i < u.n; ++i) {
    e(i, i) = 1.0;
    for (std::size_t j = i + 1; j < u.n; ++j)
      e(i, j) = std::clamp(
          alphas[i] * alphas[j] + lift[i] * lift[j] * u.dot(i, j), -1.0, 1.0);
  }
  return e;
}

SymmetricMatrix alpha_mix(const UnitVectorSet& u, const AlphaDensity& density,
                          std::uint64_t seed) {
  auto engine = make_engine(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> alphas(u.n);
  for (std::size_t i = 0; i < u.n; ++i)
    alphas[i] = density.quantile(uniform(engine));
  return alpha_mix_with(u, alphas);
}

SymmetricMatrix noise_carrier(const NoiseSpec& spec, std::size_t n) {
  const UnitVectorSet u = sample_unit_vectors(spec, n);
  switch (spec.generator) {
    case VectorGenerator::SphereUniform:
    case VectorGenerator::IidNormalized:
      return gram_noise(u);
    case VectorGenerator::AlphaMixed: {
      if (!spec.density)
        throw ParameterError(
            "noise_carrier: AlphaMixed generator requires a density");
      return alpha_mix(u, *spec.density,
                       substream_seed(spec.seed, kAlphaStreamTag));
    }
  }
  throw ParameterError("noise_carrier: unknown generator");
}

SymmetricMatrix perturb_general(const SymmetricMatrix& sigma,
                                const NoiseSpec& spec) {
  const std::size_t n = sigma.size();
  if (!sigma.all_finite())
    throw ParameterError("perturb_general: sigma entries must be finite");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(sigma(i, i) - 1.0) > kDefaultTolerance)
      throw ParameterError("perturb_general: sigma must have a unit diagonal");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(sigma(i, j)) > 1.0 + kDefaultTolerance)
        throw ParameterError(
            "perturb_general: sigma entries must lie in [-1, 1]");
  }
  const double lambda_n = min_eigenvalue(sigma);
  if (!(spec.epsilon >= 0.0) || !(spec.epsilon < lambda_n))
    throw AdmissibilityError(
        "noise level epsilon = " + std::to_string(spec.epsilon) +
        " must satisfy 0 <= epsilon < lambda_N(Sigma) = " +
        std::to_string(lambda_n));
  return add_scaled_noise(sigma, spec);
}

double epsilon_for_kappa(double lambda1, double lambdaN,
                         const NoiseBudget& budget, std::size_t n) {
  if (!(budget.kappa_max > 1.0))
    throw ParameterError("epsilon_for_kappa: kappa_max must exceed 1");
  if (n == 0) throw ParameterError("epsilon_for_kappa: n must be >= 1");
  const double numerator = budget.kappa_max * lambdaN - lambda1;
  if (!(numerator > 0.0))
    throw AdmissibilityError(
        "infeasible budget: kappa_max * lambda_N = " +
        std::to_string(budget.kappa_max * lambdaN) +
        " does not exceed lambda_1 = " + std::to_string(lambda1));
  double eps = numerator / (budget.kappa_max + static_cast<double>(n - 1));
  // Always below lambda_N mathematically; the cap guards rounding.
  eps = std::min(eps, lambdaN * (1.0 - 1e-12));
  return eps;
}

double epsilon_for_kappa(const SpectralBounds& bounds,
                         const NoiseBudget& budget) {
  return epsilon_for_kappa(bounds.lambda1_upper, bounds.lambdaN_lower, budget,
                           bounds.n);
}

SymmetricMatrix perturb_blocks(const CorrelationTemplate& t,
                               const NoiseSpec& spec) {
  t.validate();
  if (t.kind() != StructureKind::ConstantCorrelation)
    throw ParameterError(
        "perturb_blocks: template kind must be constant_correlation");
  const double rho_max = t.rho_max();
  check_epsilon_range(spec.epsilon, 1.0 - rho_max,
                      "epsilon < 1 - rho_max required by the "
                      "constant-correlation recipe");
  return add_scaled_noise(build_template(t), spec);
}

SymmetricMatrix perturb_toeplitz(const CorrelationTemplate& t,
                                 const NoiseSpec& spec) {
  t.validate();
  if (t.kind() != StructureKind::Toeplitz)
    throw ParameterError("perturb_toeplitz: template kind must be toeplitz");
  const double rho_max = t.rho_max();
  check_epsilon_range(spec.epsilon, (1.0 - rho_max) / (1.0 + rho_max),
                      "epsilon < (1 - rho_max) / (1 + rho_max) required by "
                      "the Toeplitz recipe");
  return add_scaled_noise(build_template(t), spec);
}

SymmetricMatrix perturb_hub(const CorrelationTemplate& t,
                            const NoiseSpec& spec) {
  t.validate();
  if (t.kind() != StructureKind::HubToeplitz)
    throw ParameterError("perturb_hub: template kind must be hub_toeplitz");
  double eps_max = std::numeric_limits<double>::infinity();
  for (const GroupSpec& g : t.groups) {
    if (g.gamma != 1.0)
      throw ParameterError(
          "perturb_hub: bounds are proven for linear decay only (gamma = 1); "
          "route gamma != 1 templates through perturb_general");
    eps_max = std::min(eps_max, 1.0 - g.rho - 0.75 * g.tau);
  }
  check_epsilon_range(spec.epsilon, eps_max,
                      "epsilon < min_k {1 - rho_k - (3/4) tau_k} required by "
                      "the hub recipe");
  return add_scaled_noise(build_template(t), spec);
}

SymmetricMatrix perturb_template(const CorrelationTemplate& t,
                                 const NoiseSpec& spec) {
  t.validate();
  switch (t.kind()) {
    case StructureKind::ConstantCorrelation:
      return perturb_blocks(t, spec);
    case StructureKind::Toeplitz:
      return perturb_toeplitz(t, spec);
    case StructureKind::HubToeplitz: {
      for (const GroupSpec& g : t.groups)
        if (g.gamma != 1.0) return perturb_general(build_template(t), spec);
      return perturb_hub(t, spec);
    }
  }
  throw ParameterError("perturb_template: unknown structure kind");
}

double dot_density(double z, std::size_t m) {
  check_noise_dimension(m);
  if (!(std::abs(z) <= 1.0))
    throw ParameterError("dot_density: z must lie in [-1, 1]");
  const double md = static_cast<double>(m);
  const double log_const = std::lgamma(0.5 * md) -
                           std::lgamma(0.5 * (md - 1.0)) -
                           0.5 * std::log(std::numbers::pi);
  const double one_minus_z2 = std::max(0.0, (1.0 - z) * (1.0 + z));
  // pow(0, 0) = 1 covers the m = 3 endpoints; pow(0, -1/2) = +inf is the
  // documented integrable singularity at m = 2.
  return std::exp(log_const) * std::pow(one_minus_z2, 0.5 * (md - 3.0));
}

double noise_se(double epsilon, std::size_t m) {
  check_noise_dimension(m);
  return epsilon / std::sqrt(static_cast<double>(m));
}

}  // namespace corrnoise
