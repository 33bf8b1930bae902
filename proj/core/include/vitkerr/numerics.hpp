#pragma once

// Small numerical toolbox shared by the averaging engines, the merit
// optimizer and the tests.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace vitkerr::numerics {

// Gauss-Hermite rule for the weight exp(-t^2). Nodes ascending.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_hermite(int n);

struct AdaptiveResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7/15) integration of a complex integrand on [a, b].
// Subdivides until each panel's error is below max(abs_tol, rel_tol*|I|)
// scaled by its share of the interval.
AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, double abs_tol = 1e-14, double rel_tol = 1e-13,
                                  int max_depth = 60);

// Golden-section search for the maximum of a unimodal f on [a, b].
// Returns the abscissa of the maximum; stops when b - a < tol.
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol);

// Counter-based random stream: the value at (stream, counter) depends only on
// the seed and those two indices, so any schedule reproduces the same draws.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const;
  // Uniform in the open interval (0, 1).
  double uniform(std::uint64_t stream, std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

// Quantile of the standard normal distribution, u in (0, 1).
double inverse_normal_cdf(double u);

// Runs body(i) for i in [0, n) on `workers` threads. Each index is visited
// exactly once; callers write results into per-index slots so the output
// does not depend on the worker count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// n points evenly spaced on [lo, hi] (n >= 2), endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);
// n points evenly spaced in log10 on [lo, hi], lo > 0.
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace vitkerr::numerics
