// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corrnoise/errors.hpp"
#include "corrnoise/spectra.hpp"
#include "corrnoise/templates.hpp"

using namespace corrnoise;

namespace {

CorrelationTemplate single(GroupSpec g) {
  CorrelationTemplate t;
  t.groups = {g};
  return t;
}

CorrelationTemplate table1_template() {
  CorrelationTemplate t;
  t.groups = {GroupSpec::constant(100, 0.7), GroupSpec::constant(50, 0.7),
              GroupSpec::constant(80, 0.4)};
  t.delta = 0.25;
  return t;
}

}  // namespace

TEST_CASE("build_template: single constant-correlation group") {
  const SymmetricMatrix m = build_template(single(GroupSpec::constant(3, 0.5)));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m(i, i) == 1.0);
    for (std::size_t j = i + 1; j < 3; ++j) CHECK(m(i, j) == 0.5);
  }
}

TEST_CASE("build_template: single Toeplitz group decays as rho^|i-j|") {
  const SymmetricMatrix m = build_template(single(GroupSpec::toeplitz(4, 0.9)));
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(m(0, 2) == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(m(0, 3) == doctest::Approx(0.729).epsilon(1e-15));
  CHECK(m(1, 3) == doctest::Approx(0.81).epsilon(1e-15));
}

TEST_CASE("build_template: hub group from prescribed first row") {
  const SymmetricMatrix m =
      build_template(single(GroupSpec::hub(4, 0.7, 0.3)));
  CHECK(m(0, 1) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(m(0, 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m(0, 3) == doctest::Approx(0.3).epsilon(1e-14));
  // Toeplitz fill: entry (1, 2) repeats the hub-to-neighbor value.
  CHECK(m(1, 2) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(m(1, 3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("build_template: between-group entries") {
  const SymmetricMatrix blocks = build_template(table1_template());
  CHECK(blocks(0, 100) == 0.25);
  CHECK(blocks(0, 1) == 0.7);
  CHECK(blocks(150, 229) == 0.25);
  CHECK(blocks(150, 151) == 0.4);

  CorrelationTemplate toep;
  toep.groups = {GroupSpec::toeplitz(3, 0.5), GroupSpec::toeplitz(3, 0.5)};
  const SymmetricMatrix m = build_template(toep);
  CHECK(m(0, 3) == 0.0);
  CHECK(m(2, 5) == 0.0);
}

TEST_CASE("hub_first_row: linear and curved decays") {
  const auto linear = hub_first_row(4, 0.7, 0.3, 1.0);
  CHECK(linear[0] == 1.0);
  CHECK(linear[1] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(linear[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(linear[3] == doctest::Approx(0.3).epsilon(1e-15));

  const auto tiny = hub_first_row(3, 0.8, 0.2, 2.0);
  CHECK(tiny[0] == 1.0);
  CHECK(tiny[1] == doctest::Approx(0.8));
  CHECK(tiny[2] == doctest::Approx(0.2));

  const auto curved = hub_first_row(5, 0.8, 0.0, 2.0);
  CHECK(curved[1] == doctest::Approx(0.8));
  CHECK(curved[2] == doctest::Approx(0.8 - 0.8 / 9.0));
  CHECK(curved[3] == doctest::Approx(0.8 - 0.8 * 4.0 / 9.0));
  CHECK(curved[4] == doctest::Approx(0.0));
}

TEST_CASE("hub_first_row: monotone nonincreasing for gamma > 0") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t g = 3 + eng() % 40;
    const double rho_max = 0.95 * u(eng);
    const double rho_min = rho_max * u(eng);
    const double gamma = 0.25 + 3.0 * u(eng);
    const auto row = hub_first_row(g, rho_max, rho_min, gamma);
    CHECK(row[1] == doctest::Approx(rho_max));
    CHECK(row[g - 1] == doctest::Approx(rho_min));
    for (std::size_t i = 2; i < g; ++i) CHECK(row[i] <= row[i - 1] + 1e-14);
  }
}

TEST_CASE("hub_first_row: g < 3 is rejected") {
  CHECK_THROWS_AS(hub_first_row(2, 0.5, 0.1, 1.0), ParameterError);
}

TEST_CASE("analytic_bounds: constant-correlation certificate") {
  const auto b = analytic_bounds(table1_template());
  REQUIRE(b.has_value());
  CHECK(b->lambda1_upper == doctest::Approx(231.0));
  CHECK(b->lambdaN_lower == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b->epsilon_max == doctest::Approx(0.3).epsilon(1e-12));
  const double expected =
      (230.0 * 1.29 + 1.0) / (1.0 - 0.7 - 0.29);  // about 2.977e4
  CHECK(b->kappa_bound(0.29) == doctest::Approx(expected));
  CHECK(std::abs(b->kappa_bound(0.29) - 29770.0) < 1.0);
}

TEST_CASE("analytic_bounds: Toeplitz certificate at rho = 0.9") {
  const auto b = analytic_bounds(single(GroupSpec::toeplitz(20, 0.9)));
  REQUIRE(b.has_value());
  CHECK(b->lambda1_upper == doctest::Approx(19.0));
  CHECK(b->lambdaN_lower == doctest::Approx(1.0 / 19.0));
  CHECK(b->epsilon_max == doctest::Approx(1.0 / 19.0));
}

TEST_CASE("analytic_bounds: hub certificate") {
  // g=10, rho=0.7, tau=0.05 -> lambda_N >= 1 - 0.7 - 0.0375 = 0.2625.
  const auto b =
      analytic_bounds(single(GroupSpec::hub(10, 0.7, 0.7 - 0.05 * 8)));
  REQUIRE(b.has_value());
  CHECK(b->lambdaN_lower == doctest::Approx(0.2625).epsilon(1e-12));
  CHECK(b->epsilon_max == doctest::Approx(0.2625).epsilon(1e-12));
  const double ev_big = 1.0 + 9.0 * 0.7 - 0.05 * 8.0 * 9.0 / 2.0;
  CHECK(b->lambda1_upper == doctest::Approx(ev_big));
}

TEST_CASE("analytic_bounds: hub with gamma != 1 has no certificate") {
  CHECK_FALSE(analytic_bounds(single(GroupSpec::hub(10, 0.7, 0.2, 2.0)))
                  .has_value());
}

TEST_CASE("kappa_bound: domain and monotonicity") {
  const auto b = analytic_bounds(single(GroupSpec::constant(10, 0.5)));
  REQUIRE(b.has_value());
  CHECK_THROWS_AS(b->kappa_bound(b->epsilon_max), ParameterError);
  CHECK_THROWS_AS(b->kappa_bound(-0.1), ParameterError);
  double prev = b->kappa_bound(0.0);
  for (double eps = 0.05; eps < b->epsilon_max; eps += 0.05) {
    const double cur = b->kappa_bound(eps);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("shifted_block_matrix: identical to the direct assembly") {
  const CorrelationTemplate t = table1_template();
  const SymmetricMatrix direct = build_template(t);
  const SymmetricMatrix shifted = shifted_block_matrix(t);
  CHECK(shifted.max_abs_difference(direct) <= 1e-15);
}

TEST_CASE("shifted_block_matrix: rejects non-constant kinds") {
  CHECK_THROWS_AS(shifted_block_matrix(single(GroupSpec::toeplitz(4, 0.5))),
                  ParameterError);
}

TEST_CASE("shifted decomposition: A-part block eigenvalues") {
  // Sigma_k - delta*J for g=5, rho=0.6, delta=0.25 has eigenvalues
  // g(rho - delta) + (1 - rho) = 2.15 and 1 - rho = 0.4 (multiplicity 4).
  SymmetricMatrix block(5, 0.6 - 0.25);
  for (std::size_t i = 0; i < 5; ++i) block(i, i) = 1.0 - 0.25;
  const Spectrum s = eigenvalues(block);
  CHECK(s.values[0] == doctest::Approx(2.15).epsilon(1e-10));
  for (std::size_t i = 1; i < 5; ++i)
    CHECK(s.values[i] == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("shifted decomposition: smallest eigenvalue is 1 - rho_max") {
  const Spectrum s = eigenvalues(shifted_block_matrix(table1_template()));
  CHECK(std::abs(s.values.back() - 0.3) <= 1e-8);
}

TEST_CASE("poisson_kernel: extrema match the Toeplitz envelope") {
  const double rho = 0.5;
  CHECK(poisson_kernel(rho, 0.0) ==
        doctest::Approx((1.0 + rho) / (1.0 - rho)).epsilon(1e-12));
  CHECK(poisson_kernel(rho, std::numbers::pi) ==
        doctest::Approx((1.0 - rho) / (1.0 + rho)).epsilon(1e-12));
  CHECK(poisson_kernel(rho, std::numbers::pi) ==
        doctest::Approx(poisson_kernel(rho, -std::numbers::pi)));
  const double ratio = poisson_kernel(0.8, 0.0) /
                       poisson_kernel(0.8, std::numbers::pi);
  CHECK(std::isfinite(ratio));
  CHECK(ratio > 1.0);
  CHECK_THROWS_AS(poisson_kernel(1.0, 0.0), ParameterError);
}

TEST_CASE("template validation: structural errors name the offender") {
  CorrelationTemplate mixed;
  mixed.groups = {GroupSpec::constant(3, 0.5), GroupSpec::toeplitz(3, 0.5)};
  CHECK_THROWS_WITH_AS(mixed.validate(), doctest::Contains("group 1"),
                       ParameterError);

  CorrelationTemplate delta_on_toeplitz;
  delta_on_toeplitz.groups = {GroupSpec::toeplitz(4, 0.5)};
  delta_on_toeplitz.delta = 0.1;
  CHECK_THROWS_AS(delta_on_toeplitz.validate(), ParameterError);

  CorrelationTemplate delta_too_big;
  delta_too_big.groups = {GroupSpec::constant(4, 0.3)};
  delta_too_big.delta = 0.3;
  CHECK_THROWS_AS(delta_too_big.validate(), ParameterError);

  // rho = 0 groups force delta = 0.
  CorrelationTemplate zero_rho;
  zero_rho.groups = {GroupSpec::constant(4, 0.0), GroupSpec::constant(4, 0.5)};
  zero_rho.delta = 0.1;
  CHECK_THROWS_AS(zero_rho.validate(), ParameterError);
  zero_rho.delta = 0.0;
  CHECK_NOTHROW(zero_rho.validate());

  CHECK_THROWS_AS(GroupSpec::constant(3, 1.0), ParameterError);
  CHECK_THROWS_AS(GroupSpec::hub(2, 0.5, 0.1), ParameterError);
  CHECK_THROWS_AS(GroupSpec::hub(5, 0.5, 0.6), ParameterError);
}

TEST_CASE("invariant: every valid template is a valid correlation matrix") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 12; ++rep) {
    CorrelationTemplate t;
    const int kind = rep % 3;
    const std::size_t n_groups = 1 + eng() % 3;
    for (std::size_t g = 0; g < n_groups; ++g) {
      const std::size_t size = 3 + eng() % 12;
      const double rho = 0.05 + 0.85 * u(eng);
      if (kind == 0)
        t.groups.push_back(GroupSpec::constant(size, rho));
      else if (kind == 1)
        t.groups.push_back(GroupSpec::toeplitz(size, rho));
      else
        t.groups.push_back(GroupSpec::hub(size, rho, rho * u(eng)));
    }
    if (kind == 0) t.delta = 0.5 * t.rho_min_over_groups();
    const ValidityReport report = validate_correlation(build_template(t));
    CHECK(report.valid());
    CHECK(std::isfinite(report.condition_number));
  }
}

TEST_CASE("invariant: constant-correlation block spectrum") {
  // 1 - rho_k appears with multiplicity g_k - 1; the smallest eigenvalue is
  // exactly 1 - rho_max.
  std::mt19937_64 eng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 6; ++rep) {
    CorrelationTemplate t;
    const std::size_t n_groups = 2 + eng() % 3;
    double rho = 0.15;
    for (std::size_t g = 0; g < n_groups; ++g) {
      t.groups.push_back(GroupSpec::constant(2 + eng() % 10, rho));
      rho += 0.08 + 0.1 * u(eng);  // distinct, well separated values
    }
    t.delta = 0.1;
    const Spectrum s = eigenvalues(build_template(t));
    CHECK(std::abs(s.values.back() - (1.0 - t.rho_max())) <= 1e-8);
    for (const GroupSpec& g : t.groups) {
      const double target = 1.0 - g.rho;
      std::size_t hits = 0;
      for (double v : s.values)
        if (std::abs(v - target) <= 1e-7) ++hits;
      CHECK(hits == g.size - 1);
    }
  }
}

TEST_CASE("invariant: Toeplitz envelope sharpens with size") {
  const double rho = 0.5;
  const double limit = (1.0 + rho) / (1.0 - rho);
  double lambda1_small = 0.0, lambda1_big = 0.0;
  for (std::size_t g : {20, 200}) {
    const Spectrum s = eigenvalues(build_template(single(GroupSpec::toeplitz(g, rho))));
    for (double v : s.values) {
      CHECK(v >= (1.0 - rho) / (1.0 + rho) - 1e-10);
      CHECK(v <= limit + 1e-10);
    }
    (g == 20 ? lambda1_small : lambda1_big) = s.values.front();
  }
  CHECK(lambda1_big > lambda1_small);
  CHECK(limit - lambda1_big < limit - lambda1_small);
}

TEST_CASE("invariant: hub bounds hold on randomized grids") {
  std::mt19937_64 eng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 15; ++rep) {
    const std::size_t g = 4 + eng() % 27;
    const double rho = 0.05 + 0.8 * u(eng);
    const double tau_cap =
        std::min((1.0 - rho) / 0.75, (rho + 0.95) / static_cast<double>(g - 2));
    const double tau = 0.9 * tau_cap * u(eng);
    const double rho_min = rho - tau * static_cast<double>(g - 2);
    const CorrelationTemplate t = single(GroupSpec::hub(g, rho, rho_min));
    const auto b = analytic_bounds(t);
    REQUIRE(b.has_value());
    const Spectrum s = eigenvalues(build_template(t));
    CHECK(s.values.front() <= b->lambda1_upper + 1e-9);
    CHECK(s.values.back() >= b->lambdaN_lower - 1e-9);
  }
}

TEST_CASE("invariant: certificates are sound for all kinds") {
  std::mt19937_64 eng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 12; ++rep) {
    CorrelationTemplate t;
    const int kind = rep % 3;
    const std::size_t n_groups = 1 + eng() % 3;
    for (std::size_t g = 0; g < n_groups; ++g) {
      const std::size_t size = 4 + eng() % 10;
      const double rho = 0.1 + 0.7 * u(eng);
      if (kind == 0)
        t.groups.push_back(GroupSpec::constant(size, rho));
      else if (kind == 1)
        t.groups.push_back(GroupSpec::toeplitz(size, rho));
      else {
        const double tau_cap = std::min(
            (1.0 - rho) / 0.75, (rho + 0.95) / static_cast<double>(size - 2));
        const double rho_min =
            rho - 0.8 * tau_cap * u(eng) * static_cast<double>(size - 2);
        t.groups.push_back(GroupSpec::hub(size, rho, rho_min));
      }
    }
    const auto b = analytic_bounds(t);
    REQUIRE(b.has_value());
    const Spectrum s = eigenvalues(build_template(t));
    CHECK(b->lambdaN_lower <= s.values.back() + 1e-9);
    CHECK(s.values.front() <= b->lambda1_upper + 1e-9);
  }
}
