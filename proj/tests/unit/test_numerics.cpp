#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "vitkerr/numerics.hpp"

using namespace vitkerr::numerics;

TEST_CASE("Gauss-Hermite integrates polynomials exactly") {
  for (int n : {1, 2, 5, 51, 101, 201}) {
    const auto r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double m0 = 0, m2 = 0, m4 = 0, m1 = 0;
    for (int k = 0; k < n; ++k) {
      const double x = r.nodes[k];
      m0 += r.weights[k];
      m1 += r.weights[k] * x;
      m2 += r.weights[k] * x * x;
      m4 += r.weights[k] * x * x * x * x;
      if (k > 0) CHECK(r.nodes[k] > r.nodes[k - 1]);
    }
    const double sp = std::sqrt(std::numbers::pi);
    CHECK(m0 == doctest::Approx(sp).epsilon(1e-13));
    CHECK(std::abs(m1) < 1e-13);
    if (n >= 2) CHECK(m2 == doctest::Approx(sp / 2).epsilon(1e-13));
    if (n >= 3) CHECK(m4 == doctest::Approx(3 * sp / 4).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Hermite integrates a shifted Gaussian characteristic function") {
  // int exp(-t^2) cos(a t) dt = sqrt(pi) exp(-a^2/4)
  const auto r = gauss_hermite(101);
  double s = 0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * std::cos(3.0 * r.nodes[k]);
  CHECK(s == doctest::Approx(std::sqrt(std::numbers::pi) * std::exp(-9.0 / 4)).epsilon(1e-12));
}

TEST_CASE("adaptive integration of a sharp complex Lorentzian") {
  const double g = 1e-3;
  auto f = [&](double x) { return 1.0 / std::complex<double>(x, g); };
  const auto r = integrate_adaptive(f, -1.0, 1.0, 1e-300, 1e-12);
  // int_{-1}^{1} dx / (x + i g) = -2 i atan(1/g)
  const std::complex<double> exact(0.0, -2.0 * std::atan(1.0 / g));
  CHECK(std::abs(r.value - exact) / std::abs(exact) < 1e-11);
}

TEST_CASE("golden section") {
  const double x = golden_section_max([](double t) { return -(t - 0.3) * (t - 0.3); }, -1, 2, 1e-10);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("counter RNG is a pure function of (seed, stream, counter)") {
  CounterRng a(42), b(42), c(43);
  CHECK(a.bits(3, 17) == b.bits(3, 17));
  CHECK(a.bits(3, 17) != c.bits(3, 17));
  CHECK(a.bits(3, 17) != a.bits(4, 17));
  std::set<std::uint64_t> seen;
  double mean = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = a.uniform(0, i);
    CHECK_UNARY(u > 0.0);
    CHECK_UNARY(u < 1.0);
    mean += u;
  }
  CHECK(mean / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("inverse normal cdf") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  for (double x : {-6.0, -3.0, -1.2, 0.4, 2.5, 5.0}) {
    const double u = 0.5 * std::erfc(-x / std::sqrt(2.0));
    CHECK(inverse_normal_cdf(u) == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i % 10 == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}

TEST_CASE("line fit and grids") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(1));
  CHECK(f.r_squared == doctest::Approx(1));
  const auto g = linspace(-1, 1, 5);
  CHECK(g[2] == 0.0);
  CHECK(g.back() == 1.0);
  const auto l = logspace(1e-4, 1, 5);
  CHECK(l[1] == doctest::Approx(1e-3));
}
