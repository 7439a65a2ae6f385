// Apache License, Version 2.0, refer to LICENSE.txt
#include "corrnoise/templates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "corrnoise/errors.hpp"

namespace corrnoise {

namespace {

std::string group_tag(std::size_t index) {
  return "group " + std::to_string(index);
}

}  // namespace

const char* to_string(StructureKind kind) noexcept {
  switch (kind) {
    case StructureKind::ConstantCorrelation:
      return "constant_correlation";
    case StructureKind::Toeplitz:
      return "toeplitz";
    case StructureKind::HubToeplitz:
      return "hub_toeplitz";
  }
  return "unknown";
}

GroupSpec GroupSpec::constant(std::size_t size, double rho) {
  if (size == 0) throw ParameterError("constant group: size must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0))
    throw ParameterError("constant group: rho must lie in [0, 1)");
  return GroupSpec{StructureKind::ConstantCorrelation, size, rho, 0.0, 1.0};
}

GroupSpec GroupSpec::toeplitz(std::size_t size, double rho) {
  if (size == 0) throw ParameterError("toeplitz group: size must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0))
    throw ParameterError("toeplitz group: rho must lie in [0, 1)");
  return GroupSpec{StructureKind::Toeplitz, size, rho, 0.0, 1.0};
}

GroupSpec GroupSpec::hub(std::size_t size, double rho_max, double rho_min,
                         double gamma) {
  if (size < 3)
    throw ParameterError(
        "hub group: size must be >= 3 (the first-row decay divides by size - 2)");
  if (!(rho_max >= 0.0 && rho_max < 1.0))
    throw ParameterError("hub group: rho_max must lie in [0, 1)");
  if (!(rho_min > -1.0 && rho_min <= rho_max))
    throw ParameterError("hub group: rho_min must lie in (-1, rho_max]");
  if (!(gamma > 0.0)) throw ParameterError("hub group: gamma must be positive");
  const double tau = (rho_max - rho_min) / static_cast<double>(size - 2);
  return GroupSpec{StructureKind::HubToeplitz, size, rho_max, tau, gamma};
}

double GroupSpec::rho_min() const noexcept {
  if (kind != StructureKind::HubToeplitz) return rho;
  return rho - tau * static_cast<double>(size >= 2 ? size - 2 : 0);
}

std::size_t CorrelationTemplate::dimension() const noexcept {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size;
  return n;
}

StructureKind CorrelationTemplate::kind() const {
  if (groups.empty())
    throw ParameterError("template: at least one group is required");
  return groups.front().kind;
}

double CorrelationTemplate::rho_max() const {
  double v = 0.0;
  for (const auto& g : groups) v = std::max(v, g.rho);
  return v;
}

double CorrelationTemplate::rho_min_over_groups() const {
  double v = 1.0;
  for (const auto& g : groups) v = std::min(v, g.rho);
  return v;
}

void CorrelationTemplate::validate() const {
  if (groups.empty())
    throw ParameterError("template: at least one group is required");
  const StructureKind common = groups.front().kind;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const GroupSpec& g = groups[k];
    if (g.kind != common)
      throw ParameterError("template: " + group_tag(k) +
                           " has a different structure kind; groups must be "
                           "homogeneous");
    if (g.size == 0)
      throw ParameterError("template: " + group_tag(k) + " has size 0");
    if (!(g.rho >= 0.0 && g.rho < 1.0))
      throw ParameterError("template: " + group_tag(k) +
                           " rho out of [0, 1)");
    if (g.kind == StructureKind::HubToeplitz) {
      if (g.size < 3)
        throw ParameterError("template: " + group_tag(k) +
                             " hub groups need size >= 3");
      if (!(g.gamma > 0.0))
        throw ParameterError("template: " + group_tag(k) +
                             " gamma must be positive");
      if (!(g.tau >= 0.0))
        throw ParameterError("template: " + group_tag(k) +
                             " tau must be nonnegative");
      const double rmin = g.rho_min();
      if (!(rmin > -1.0 && rmin < 1.0))
        throw ParameterError("template: " + group_tag(k) +
                             " first-row entries leave (-1, 1)");
    }
  }
  if (delta != 0.0) {
    if (common != StructureKind::ConstantCorrelation)
      throw ParameterError(
          "template: delta applies only to constant-correlation assemblies");
    const double rho_min = rho_min_over_groups();
    if (!(delta >= 0.0 && delta < rho_min))
      throw ParameterError(
          "template: delta must satisfy 0 <= delta < min_k rho_k (= " +
          std::to_string(rho_min) + ")");
  }
}

std::vector<double> hub_first_row(std::size_t g, double rho_max,
                                  double rho_min, double gamma) {
  if (g < 3)
    throw ParameterError(
        "hub_first_row: g must be >= 3 (decay divides by g - 2)");
  if (!(rho_min <= rho_max && rho_min > -1.0 && rho_max < 1.0))
    throw ParameterError(
        "hub_first_row: need -1 < rho_min <= rho_max < 1");
  if (!(gamma > 0.0))
    throw ParameterError("hub_first_row: gamma must be positive");

  std::vector<double> row(g);
  row[0] = 1.0;
  const double span = rho_max - rho_min;
  for (std::size_t i = 2; i <= g; ++i) {
    const double frac =
        static_cast<double>(i - 2) / static_cast<double>(g - 2);
    row[i - 1] = rho_max - std::pow(frac, gamma) * span;
  }
  return row;
}

SymmetricMatrix build_template(const CorrelationTemplate& t) {
  t.validate();
  const std::size_t n = t.dimension();
  const StructureKind kind = t.kind();
  const double off_block =
      (kind == StructureKind::ConstantCorrelation) ? t.delta : 0.0;

  SymmetricMatrix m(n, off_block);
  std::size_t offset = 0;
  for (const GroupSpec& g : t.groups) {
    switch (kind) {
      case StructureKind::ConstantCorrelation:
        for (std::size_t i = 0; i < g.size; ++i)
          for (std::size_t j = i + 1; j < g.size; ++j)
            m(offset + i, offset + j) = g.rho;
        break;
      case StructureKind::Toeplitz:
        for (std::size_t i = 0; i < g.size; ++i)
          for (std::size_t j = i + 1; j < g.size; ++j)
            m(offset + i, offset + j) =
                std::pow(g.rho, static_cast<double>(j - i));
        break;
      case StructureKind::HubToeplitz: {
        const std::vector<double> row =
            hub_first_row(g.size, g.rho, g.rho_min(), g.gamma);
        for (std::size_t i = 0; i < g.size; ++i)
          for (std::size_t j = i + 1; j < g.size; ++j)
            m(offset + i, offset + j) = row[j - i];
        break;
      }
    }
    offset += g.size;
  }
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double SpectralBounds::kappa_bound(double epsilon) const {
  if (!(epsilon >= 0.0 && epsilon < epsilon_max))
    throw ParameterError("kappa_bound: epsilon must lie in [0, " +
                         std::to_string(epsilon_max) + ")");
  const double nd = static_cast<double>(n);
  if (kind == StructureKind::ConstantCorrelation)
    return (nd * (1.0 + epsilon) + 1.0) / (1.0 - rho_max - epsilon);
  return (lambda1_upper + (nd - 1.0) * epsilon) / (lambdaN_lower - epsilon);
}

std::optional<SpectralBounds> analytic_bounds(const CorrelationTemplate& t) {
  t.validate();
  const StructureKind kind = t.kind();
  SpectralBounds b;
  b.kind = kind;
  b.n = t.dimension();
  b.rho_max = t.rho_max();

  switch (kind) {
    case StructureKind::ConstantCorrelation:
      b.lambda1_upper = static_cast<double>(b.n) + 1.0;
      b.lambdaN_lower = 1.0 - b.rho_max;
      b.epsilon_max = 1.0 - b.rho_max;
      break;
    case StructureKind::Toeplitz:
      b.lambda1_upper = (1.0 + b.rho_max) / (1.0 - b.rho_max);
      b.lambdaN_lower = (1.0 - b.rho_max) / (1.0 + b.rho_max);
      b.epsilon_max = b.lambdaN_lower;
      break;
    case StructureKind::HubToeplitz: {
      double upper = 0.0;
      double lower = std::numeric_limits<double>::infinity();
      for (const GroupSpec& g : t.groups) {
        if (g.gamma != 1.0) return std::nullopt;
        const double gd = static_cast<double>(g.size);
        upper = std::max(upper, 1.0 + (gd - 1.0) * g.rho -
                                    g.tau * (gd - 2.0) * (gd - 1.0) / 2.0);
        lower = std::min(lower, 1.0 - g.rho - 0.75 * g.tau);
      }
      b.lambda1_upper = upper;
      b.lambdaN_lower = lower;
      b.epsilon_max = lower;
      break;
    }
  }
  return b;
}

SymmetricMatrix shifted_block_matrix(const CorrelationTemplate& t) {
  t.validate();
  if (t.kind() != StructureKind::ConstantCorrelation)
    throw ParameterError(
        "shifted_block_matrix: only constant-correlation templates decompose "
        "as blockdiag(Sigma_k - delta*J) + delta*J");

  const std::size_t n = t.dimension();
  // A part: blocks Sigma_k - delta*J on the diagonal, zero elsewhere.
  SymmetricMatrix m(n, 0.0);
  std::size_t offset = 0;
  for (const GroupSpec& g : t.groups) {
    for (std::size_t i = 0; i < g.size; ++i) {
      m(offset + i, offset + i) = 1.0 - t.delta;
      for (std::size_t j = i + 1; j < g.size; ++j)
        m(offset + i, offset + j) = g.rho - t.delta;
    }
    offset += g.size;
  }
  // + delta * J_N.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) += t.delta;
  return m;
}

double poisson_kernel(double rho, double theta) {
  if (!(rho > 0.0 && rho < 1.0))
    throw ParameterError("poisson_kernel: rho must lie in (0, 1)");
  return (1.0 - rho * rho) /
         (1.0 - 2.0 * rho * std::cos(theta) + rho * rho);
}

}  // namespace corrnoise
