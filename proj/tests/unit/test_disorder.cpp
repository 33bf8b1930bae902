#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "vitkerr/disorder.hpp"
#include "vitkerr/errors.hpp"
#include "vitkerr/merit.hpp"
#include "vitkerr/numerics.hpp"
#include "vitkerr/susceptibility.hpp"

using namespace vitkerr;

namespace {

bool within_3se(cplx mean, cplx se, cplx exact) {
  return std::abs(mean - exact) <= 3.0 * std::hypot(se.real(), se.imag());
}

DisorderSpec spec(DisorderFamily f, double s3, double s4 = 0.0) {
  DisorderSpec d;
  d.family = f;
  d.sigma3 = s3;
  d.sigma4 = s4;
  return d;
}

}  // namespace

TEST_CASE("orientational closed form matches theta quadrature") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> det(-3, 3), g(1e-3, 1), o(0.2, 3);
  for (int i = 0; i < 300; ++i) {
    Emitter e;
    e.delta31 = det(rng);
    e.delta32 = det(rng);
    e.rates.gamma31_c = 0.5;
    e.rates.gamma21_c = g(rng);
    e.omega_c = o(rng);
    e.k = -1.0;
    const cplx q = orientational_average_quadrature(e);
    CHECK(fixtures::rel(orientational_average(e), q) < 1e-8);
  }
}

TEST_CASE("real closed form agrees with the complex form at gamma21 = 0") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> det(-3, 3), o(0.2, 3);
  for (int i = 0; i < 300; ++i) {
    Emitter e;
    e.delta31 = det(rng);
    e.delta32 = det(rng);
    e.rates.gamma31_c = 0.5;
    e.omega_c = o(rng);
    e.k = -1.0;
    CHECK(fixtures::rel(orientational_average_real_form(e), orientational_average_complex_form(e)) < 1e-10);
  }
}

TEST_CASE("orientational limits") {
  Emitter e;
  e.delta31 = 0.4;
  e.rates.gamma31_c = 0.5;
  e.rates.gamma21_c = 0.01;
  e.k = -1.0;
  e.omega_c = 1e-7;
  CHECK(fixtures::rel(orientational_average(e), e.k / cplx(0.4, 0.5)) < 1e-9);
  e.omega_c = 0.0;
  CHECK(orientational_average(e) == e.k / cplx(0.4, 0.5));
  e.omega_c = 1.2;
  e.delta32 = 0.4;
  e.rates.gamma21_c = 0.0;
  CHECK(orientational_average(e) == cplx(0.0, 0.0));
}

TEST_CASE("Lorentzian closed forms reduce correctly") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 200; ++i) {
    SystemParams p = fixtures::random_params(rng);
    Emitter e = resolve(p);
    CHECK(fixtures::rel(lorentzian_kerr_average(e, 0, 0), chi_homogeneous(e, I0Variant::simplified)) < 1e-14);
    e.omega_s = 0.0;
    CHECK(lorentzian_vit_average(e, 0.0) == chi_vit(e));
    CHECK(fixtures::rel(lorentzian_kerr_average(e, 2.0, 3.0), lorentzian_vit_average(e, 2.0)) < 1e-12);
    e.omega_c = 0.0;
    CHECK(fixtures::rel(lorentzian_vit_average(e, 2.0),
                        e.k / cplx(e.delta31, e.rates.gamma31_c + 2.0)) < 1e-14);
  }
}

TEST_CASE("match_fwhm") {
  CHECK(match_fwhm(0.0) == 0.0);
  CHECK(match_fwhm(1.0) == doctest::Approx(1.17741).epsilon(1e-5));
  CHECK(match_fwhm(5.0) == doctest::Approx(5.8871).epsilon(1e-5));
}

TEST_CASE("Cauchy Monte Carlo agrees with the Lorentzian closed forms") {
  const auto grid = numerics::linspace(-3, 3, 21);
  {
    const SystemParams p = fixtures::fig2();
    DisorderSpec d = spec(DisorderFamily::lorentzian, 6.0);
    d.n_samples = 40000;
    const auto mc = average_monte_carlo(p, d, grid);
    const auto an = average_energy_lorentzian_vit(p, d, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(within_3se(mc.chi_mean[g], mc.stderr_chi[g], an.chi_mean[g]));
    }
  }
  {
    const SystemParams p = fixtures::fig3(0.5);
    DisorderSpec d = spec(DisorderFamily::lorentzian, fixtures::fig3_sigma_l(), fixtures::fig3_sigma_l());
    d.n_samples = 40000;
    const auto mc = average_monte_carlo(p, d, grid);
    const auto an = average_energy_lorentzian_kerr(p, d, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(within_3se(mc.chi_mean[g], mc.stderr_chi[g], an.chi_mean[g]));
    }
  }
}

TEST_CASE("Monte Carlo with zero width is the homogeneous chi") {
  const SystemParams p = fixtures::fig3(0.3);
  const std::vector<double> grid{-0.5, 0.0, 0.02};
  for (auto f : {DisorderFamily::gaussian, DisorderFamily::lorentzian}) {
    DisorderSpec d = spec(f, 0.0);
    d.n_samples = 50;
    const auto mc = average_monte_carlo(p, d, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(fixtures::rel(mc.chi_mean[g], chi_homogeneous(resolve(p, grid[g]), I0Variant::full)) < 1e-13);
      CHECK(std::abs(mc.stderr_chi[g]) < 1e-13 * std::abs(mc.chi_mean[g]));
    }
  }
}

TEST_CASE("Monte Carlo standard error falls as 1/sqrt(n)") {
  const SystemParams p = fixtures::fig2();
  const std::vector<double> grid{0.3};
  DisorderSpec d = spec(DisorderFamily::gaussian, 6.0);
  d.n_samples = 20000;
  const double a = std::abs(average_monte_carlo(p, d, grid).stderr_chi[0]);
  d.n_samples = 40000;
  const double b = std::abs(average_monte_carlo(p, d, grid).stderr_chi[0]);
  CHECK(b / a == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("Monte Carlo is bit-identical across worker counts") {
  const SystemParams p = fixtures::fig3(0.5);
  const auto grid = numerics::linspace(-1, 1, 17);
  for (auto mode : {CorrelationMode::correlated, CorrelationMode::independent}) {
    DisorderSpec d = spec(DisorderFamily::gaussian, 5.0, 5.0);
    d.correlation_mode = mode;
    d.n_samples = 3000;
    const auto a = average_monte_carlo(p, d, grid, 1);
    const auto b = average_monte_carlo(p, d, grid, 8);
    CHECK(a.chi_mean == b.chi_mean);
    CHECK(a.stderr_chi == b.stderr_chi);
  }
}

TEST_CASE("Monte Carlo rejects bad inputs") {
  const std::vector<double> grid{0.0};
  DisorderSpec d = spec(DisorderFamily::none, 1.0);
  CHECK_THROWS_AS(average_monte_carlo(fixtures::fig2(), d, grid), ConfigError);
  d.family = DisorderFamily::gaussian;
  d.n_samples = (std::uint64_t{1} << 40) + 1;
  CHECK_THROWS_AS(average_monte_carlo(fixtures::fig2(), d, grid), ConfigError);
}

TEST_CASE("Gaussian quadrature") {
  const auto grid = numerics::linspace(-2, 2, 41);
  SUBCASE("zero width collapses to one node") {
    const SystemParams p = fixtures::fig2();
    const auto q = average_quadrature_gaussian(p, spec(DisorderFamily::gaussian, 0.0), grid);
    CHECK(q.n_effective == 1);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(q.chi_mean[g] == chi_homogeneous(resolve(p, grid[g]), I0Variant::simplified));
    }
  }
  SUBCASE("self-convergence 101 vs 201 nodes") {
    for (auto mode : {CorrelationMode::correlated, CorrelationMode::independent}) {
      DisorderSpec d = spec(DisorderFamily::gaussian, 6.0);
      d.correlation_mode = mode;
      d.quadrature_nodes = 101;
      const auto a = average_quadrature_gaussian(fixtures::fig2(), d, grid);
      d.quadrature_nodes = 201;
      const auto b = average_quadrature_gaussian(fixtures::fig2(), d, grid);
      for (std::size_t g = 0; g < grid.size(); ++g) CHECK(fixtures::rel(a.chi_mean[g], b.chi_mean[g]) < 1e-6);
    }
  }
  SUBCASE("agrees with Monte Carlo") {
    DisorderSpec d = spec(DisorderFamily::gaussian, 5.0, 5.0);
    d.n_samples = 40000;
    const SystemParams p = fixtures::fig3(0.5);
    const auto q = average_quadrature_gaussian(p, d, grid);
    const auto mc = average_monte_carlo(p, d, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(within_3se(mc.chi_mean[g], mc.stderr_chi[g], q.chi_mean[g]));
    }
    d.correlation_mode = CorrelationMode::independent;
    const SystemParams p2 = fixtures::fig2();
    const auto q2 = average_quadrature_gaussian(p2, d, grid);
    const auto mc2 = average_monte_carlo(p2, d, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CHECK(within_3se(mc2.chi_mean[g], mc2.stderr_chi[g], q2.chi_mean[g]));
    }
  }
  SUBCASE("few nodes raise a warning") {
    DisorderSpec d = spec(DisorderFamily::gaussian, 1.0);
    d.quadrature_nodes = 21;
    CHECK_FALSE(average_quadrature_gaussian(fixtures::fig2(), d, grid).warnings.empty());
  }
}

TEST_CASE("VIT survives correlated Gaussian disorder and degrades without correlation") {
  const auto grid = numerics::linspace(-3, 3, 601);
  DisorderSpec d = spec(DisorderFamily::gaussian, 6.0);
  const auto corr = average_quadrature_gaussian(fixtures::fig2(), d, grid);
  std::vector<double> im(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) im[g] = corr.chi_mean[g].imag();
  const VitLinewidth lw = extract_gamma_vit(grid, im);
  CHECK(std::abs(lw.center) < 0.011);
  CHECK(lw.contrast > 0.3);

  d.correlation_mode = CorrelationMode::independent;
  const auto ind = average_quadrature_gaussian(fixtures::fig2(), d, grid);
  for (std::size_t g = 0; g < grid.size(); ++g) im[g] = ind.chi_mean[g].imag();
  double contrast = 0.0;
  try {
    contrast = extract_gamma_vit(grid, im).contrast;
  } catch (const NoTransparency&) {
  }
  CHECK(contrast < lw.contrast);
}
