// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "corrnoise/symmetric_matrix.hpp"

namespace corrnoise {

enum class StructureKind { ConstantCorrelation, Toeplitz, HubToeplitz };

const char* to_string(StructureKind kind) noexcept;

// One diagonal block of a template.
//
// ConstantCorrelation: all off-diagonal entries equal rho.
// Toeplitz:            entries rho^|i-j| (autoregressive decay).
// HubToeplitz:         symmetric Toeplitz block built from the hub row
//                      alpha_1 = 1, alpha_i = rho - tau*(i-2), which decays
//                      from rho (hub to neighbor) down to rho_min at the far
//                      end.  gamma != 1 bends the decay:
//                      alpha_i = rho - ((i-2)/(g-2))^gamma * (rho - rho_min).
struct GroupSpec {
  StructureKind kind = StructureKind::ConstantCorrelation;
  std::size_t size = 0;
  double rho = 0.0;    // within-group correlation / decay factor / hub maximum
  double tau = 0.0;    // hub first-row step (HubToeplitz only)
  double gamma = 1.0;  // hub decay exponent; 1 = linear

  static GroupSpec constant(std::size_t size, double rho);
  static GroupSpec toeplitz(std::size_t size, double rho);
  static GroupSpec hub(std::size_t size, double rho_max, double rho_min,
                       double gamma = 1.0);

  // Hub correlation at the far end of the first row: rho - tau*(size-2).
  double rho_min() const noexcept;
};

// Block-diagonal template: groups along the diagonal, a flat baseline delta
// between groups for constant-correlation assemblies, zeros otherwise.
// All groups must share one structure kind.
struct CorrelationTemplate {
  std::vector<GroupSpec> groups;
  double delta = 0.0;

  std::size_t dimension() const noexcept;
  StructureKind kind() const;
  double rho_max() const;
  double rho_min_over_groups() const;

  // Throws ParameterError naming the offending group or field.
  void validate() const;
};

// Analytic spectral certificate for a template.  All quantities are proven
// bounds, not estimates: lambdaN_lower <= lambda_N(Sigma) and
// lambda_1(Sigma) <= lambda1_upper hold for every matrix the template
// builds, and kappa_bound(eps) bounds the condition number of any noisy
// matrix generated at level eps < epsilon_max.
struct SpectralBounds {
  StructureKind kind = StructureKind::ConstantCorrelation;
  std::size_t n = 0;
  double rho_max = 0.0;
  double lambda1_upper = 0.0;
  double lambdaN_lower = 0.0;
  double epsilon_max = 0.0;  // strict supremum of admissible noise levels

  // Monotone increasing on [0, epsilon_max); throws ParameterError outside.
  double kappa_bound(double epsilon) const;
};

// Assembles the N x N template matrix.  Unit diagonal exactly; off-block
// entries are delta (constant-correlation) or zero.
SymmetricMatrix build_template(const CorrelationTemplate& t);

// First row of a hub block of size g: entry 1 is 1, entry 2 is rho_max,
// entry g is rho_min, monotone nonincreasing in between for gamma > 0.
// Requires g >= 3 (the decay divides by g - 2).
std::vector<double> hub_first_row(std::size_t g, double rho_max,
                                  double rho_min, double gamma);

// Certificate for the template, or nullopt for hub templates with
// gamma != 1, whose bounds are only proven for the linear decay; callers
// fall back to a computed smallest eigenvalue in that case.
std::optional<SpectralBounds> analytic_bounds(const CorrelationTemplate& t);

// Constant-correlation only: the same matrix assembled through the shifted
// decomposition blockdiag(Sigma_k - delta*J) + delta*J_N, where J is the
// all-ones matrix.  Entrywise identical to build_template; exposed so tests
// can verify the decomposition's exact eigenstructure.
SymmetricMatrix shifted_block_matrix(const CorrelationTemplate& t);

// Poisson kernel P_rho(theta) = (1 - rho^2) / (1 - 2 rho cos(theta) + rho^2)
// on [-pi, pi], the symbol of the infinite Toeplitz operator with entries
// rho^|i-j|.  Its range [ (1-rho)/(1+rho), (1+rho)/(1-rho) ] is the envelope
// that contains every finite Toeplitz-section eigenvalue; maximum at
// theta = 0, minimum at theta = +/-pi.  Used for bound-consistency tests.
double poisson_kernel(double rho, double theta);

}  // namespace corrnoise
