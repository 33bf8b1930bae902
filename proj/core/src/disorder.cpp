#include "vitkerr/disorder.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "vitkerr/errors.hpp"
#include "vitkerr/numerics.hpp"
#include "vitkerr/susceptibility.hpp"

namespace vitkerr {

namespace {

// Building a 201-node rule costs more than one grid point of the average, so
// rules are built once per node count.
std::shared_ptr<const numerics::QuadratureRule> cached_gauss_hermite(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const numerics::QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const numerics::QuadratureRule>(numerics::gauss_hermite(n));
  return slot;
}

constexpr cplx I{0.0, 1.0};
// Sample counters are 4k + axis; keep 4k well inside 64 bits.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 40;

AveragedChi make_result(std::span<const double> grid, AverageMethod method) {
  AveragedChi out;
  out.grid.assign(grid.begin(), grid.end());
  out.chi_mean.assign(grid.size(), cplx{});
  out.stderr_chi.assign(grid.size(), cplx{});
  out.method = method;
  return out;
}

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("averaging grid is empty");
}

void require_no_signal(const SystemParams& p, const char* what) {
  if (p.fields.omega_s_rabi != 0.0) {
    throw ConfigError(std::string(what) + " requires omega_s_rabi = 0");
  }
}

}  // namespace

std::string_view to_string(AverageMethod m) {
  switch (m) {
    case AverageMethod::homogeneous: return "homogeneous";
    case AverageMethod::analytic_orientational: return "analytic_orientational";
    case AverageMethod::analytic_lorentzian_vit: return "analytic_lorentzian_vit";
    case AverageMethod::analytic_lorentzian_kerr: return "analytic_lorentzian_kerr";
    case AverageMethod::mc: return "mc";
    case AverageMethod::quadrature: return "quadrature";
    case AverageMethod::quadrature_orientational: return "quadrature_orientational";
  }
  return "mc";
}

cplx orientational_average_complex_form(const Emitter& e) {
  const cplx D31{e.delta31, e.rates.gamma31_c};
  const cplx D21{e.delta21(), e.rates.gamma21_c};
  const double o2 = e.omega_c * e.omega_c;
  if (o2 == 0.0) return e.k / D31;
  if (D21 == cplx(0.0, 0.0)) return 0.0;
  // <1/(cos^2 - Z)> = i sgn(Im Z) / sqrt(Z (1 - Z)), principal root.
  const cplx z = D31 * D21 / o2;
  const double sgn = z.imag() < 0.0 ? -1.0 : 1.0;
  const cplx root = std::sqrt(z * (1.0 - z));
  if (!(std::abs(root) > kDegenerateThreshold)) {
    throw DegenerateParameters("orientational average: D31 D21 / Omega0^2 hits 0 or 1");
  }
  return -e.k * D21 / o2 * (I * sgn) / root;
}

cplx orientational_average_real_form(const Emitter& e) {
  const double d31 = e.delta31;
  const double d21 = e.delta21();
  const double g31 = e.rates.gamma31_c;
  const double o2 = e.omega_c * e.omega_c;
  const double a = d21 * (d31 * (o2 - d21 * d31) + d21 * g31 * g31);
  const double b = d21 * g31 * (o2 - 2.0 * d21 * d31);
  const double om = std::hypot(a, b);
  if (om == 0.0) return 0.0;
  return -e.k * std::abs(d21) / std::numbers::sqrt2 * cplx(b, a + om) / (om * std::sqrt(a + om));
}

cplx orientational_average(const Emitter& e) {
  if (e.omega_c == 0.0) return e.k / cplx(e.delta31, e.rates.gamma31_c);
  if (e.rates.gamma21_c == 0.0) {
    const double d21 = e.delta21();
    if (d21 == 0.0) return 0.0;
    const cplx v = orientational_average_real_form(e);
    if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
  }
  return orientational_average_complex_form(e);
}

cplx orientational_average_quadrature(const Emitter& e, double rel_tol) {
  // cos^2 is symmetric about 0 and pi/2, so a quarter period carries the mean.
  auto f = [&](double theta) {
    Emitter t = e;
    t.omega_c = e.omega_c * std::cos(theta);
    return chi_vit(t);
  };
  const double h = std::numbers::pi / 2;
  auto r = numerics::integrate_adaptive(f, 0.0, h, 1e-300, rel_tol, 60);
  return r.value / h;
}

cplx lorentzian_vit_average(const Emitter& e, double sigma3) {
  return chi_vit(broadened(e, sigma3, 0.0));
}

cplx lorentzian_kerr_average(const Emitter& e, double sigma3, double sigma4,
                             KerrDetuning detuning) {
  Emitter b = broadened(e, sigma3, sigma4);
  if (detuning == KerrDetuning::far_detuned) {
    // Delta41 -> Delta_s: drop the Raman part of the three-photon detuning.
    b.delta42 -= b.delta21();
  }
  return chi_homogeneous(b, I0Variant::simplified);
}

double match_fwhm(double sigma_gaussian) {
  if (!(sigma_gaussian >= 0.0)) throw ConfigError("match_fwhm: width must be >= 0");
  return std::sqrt(2.0 * std::numbers::ln2) * sigma_gaussian;
}

AveragedChi average_orientational_analytic(const SystemParams& p, std::span<const double> grid) {
  require_grid(grid);
  require_no_signal(p, "orientational average");
  p.validate();
  AveragedChi out = make_result(grid, AverageMethod::analytic_orientational);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.chi_mean[g] = orientational_average(resolve(p, grid[g]));
  }
  out.n_effective = 1;
  return out;
}

AveragedChi average_orientational_quadrature(const SystemParams& p, std::span<const double> grid,
                                             int workers) {
  require_grid(grid);
  require_no_signal(p, "orientational average");
  p.validate();
  AveragedChi out = make_result(grid, AverageMethod::quadrature_orientational);
  numerics::parallel_for(grid.size(), workers, [&](std::size_t g) {
    out.chi_mean[g] = orientational_average_quadrature(resolve(p, grid[g]));
  });
  out.n_effective = 1;
  return out;
}

AveragedChi average_energy_lorentzian_vit(const SystemParams& p, const DisorderSpec& spec,
                                          std::span<const double> grid) {
  require_grid(grid);
  require_no_signal(p, "Lorentzian VIT average");
  p.validate();
  spec.validate();
  if (spec.correlation_mode != CorrelationMode::correlated) {
    throw ConfigError("the Lorentzian closed form needs correlated disorder");
  }
  AveragedChi out = make_result(grid, AverageMethod::analytic_lorentzian_vit);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.chi_mean[g] = lorentzian_vit_average(resolve(p, grid[g]), spec.sigma3);
  }
  out.n_effective = 1;
  return out;
}

AveragedChi average_energy_lorentzian_kerr(const SystemParams& p, const DisorderSpec& spec,
                                           std::span<const double> grid, KerrDetuning detuning) {
  require_grid(grid);
  p.validate();
  spec.validate();
  if (spec.correlation_mode != CorrelationMode::correlated) {
    throw ConfigError("the Lorentzian closed form needs correlated disorder");
  }
  AveragedChi out = make_result(grid, AverageMethod::analytic_lorentzian_kerr);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.chi_mean[g] = lorentzian_kerr_average(resolve(p, grid[g]), spec.sigma3, spec.sigma4, detuning);
  }
  out.n_effective = 1;
  return out;
}

AveragedChi average_monte_carlo(const SystemParams& p, const DisorderSpec& spec,
                                std::span<const double> grid, int workers) {
  require_grid(grid);
  p.validate();
  spec.validate();
  if (spec.family == DisorderFamily::none) {
    throw ConfigError("Monte Carlo averaging needs a disorder family");
  }
  if (spec.n_samples > kMaxSamples) {
    throw ConfigError("n_samples exceeds 2^40");
  }
  const numerics::CounterRng rng(spec.seed);
  const std::uint64_t n = spec.n_samples;
  const bool independent = spec.correlation_mode == CorrelationMode::independent;

  auto draw = [&](double u, double sigma) {
    if (sigma == 0.0) return 0.0;
    if (spec.family == DisorderFamily::lorentzian) {
      return sigma * std::tan(std::numbers::pi * (u - 0.5));
    }
    return sigma * numerics::inverse_normal_cdf(u);
  };

  AveragedChi out = make_result(grid, AverageMethod::mc);
  numerics::parallel_for(grid.size(), workers, [&](std::size_t g) {
    const Emitter base = resolve(p, grid[g]);
    cplx mean{};
    double m2_re = 0.0;
    double m2_im = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
      Emitter e = base;
      const std::uint64_t c = 4 * k;
      if (spec.family == DisorderFamily::orientational) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform(g, c);
        e.omega_c = base.omega_c * std::cos(theta);
      } else {
        const double d31 = draw(rng.uniform(g, c), spec.sigma3);
        const double d32 = independent ? draw(rng.uniform(g, c + 1), spec.sigma3) : d31;
        const double d42 = draw(rng.uniform(g, c + 2), spec.sigma4);
        e = shifted(base, d31, d32, d42);
      }
      const cplx x = chi_homogeneous(e, I0Variant::full);
      // Welford update, fixed sample order.
      const double inv = 1.0 / static_cast<double>(k + 1);
      const cplx delta = x - mean;
      mean += delta * inv;
      m2_re += delta.real() * (x.real() - mean.real());
      m2_im += delta.imag() * (x.imag() - mean.imag());
    }
    out.chi_mean[g] = mean;
    if (n > 1) {
      const double nn = static_cast<double>(n);
      out.stderr_chi[g] = {std::sqrt(m2_re / (nn - 1) / nn), std::sqrt(m2_im / (nn - 1) / nn)};
    }
  });
  out.n_effective = n;
  return out;
}

namespace {

// One Gaussian axis of the shifted-contour rule.
struct Axis {
  std::vector<double> t;        // real node offsets
  std::vector<cplx> w;          // complex weights, sum -> 1 as n grows
  double shift = 0.0;           // imaginary offset magnitude (= sigma)
};

Axis make_axis(double sigma, double direction, const numerics::QuadratureRule& rule) {
  Axis a;
  if (sigma == 0.0) {
    a.t = {0.0};
    a.w = {1.0};
    return a;
  }
  // delta = t + i d sigma, t = sqrt(2) sigma s:
  //   N(delta) d delta -> w(s)/sqrt(pi) exp(1/2) exp(-i d sqrt(2) s) ds.
  const double norm = std::exp(0.5) / std::sqrt(std::numbers::pi);
  a.shift = sigma;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = rule.nodes[k];
    a.t.push_back(std::numbers::sqrt2 * sigma * s);
    a.w.push_back(rule.weights[k] * norm * std::exp(cplx(0.0, -direction * std::numbers::sqrt2 * s)));
  }
  return a;
}

}  // namespace

AveragedChi average_quadrature_gaussian(const SystemParams& p, const DisorderSpec& spec,
                                        std::span<const double> grid, int workers) {
  require_grid(grid);
  p.validate();
  spec.validate();
  if (spec.family != DisorderFamily::gaussian) {
    throw ConfigError("quadrature averaging is implemented for gaussian disorder only");
  }
  AveragedChi out = make_result(grid, AverageMethod::quadrature);
  if (spec.quadrature_nodes < 51) {
    out.warnings.push_back("quadrature_nodes = " + std::to_string(spec.quadrature_nodes) +
                           " is below 51; the average may not be converged");
  }
  const auto rule_ptr = cached_gauss_hermite(spec.quadrature_nodes);
  const numerics::QuadratureRule& rule = *rule_ptr;
  const bool independent = spec.correlation_mode == CorrelationMode::independent;
  // With no signal field chi does not depend on delta42.
  const double sigma42 = p.fields.omega_s_rabi == 0.0 ? 0.0 : spec.sigma4;

  const Axis a31 = make_axis(spec.sigma3, +1.0, rule);
  const Axis a32 = make_axis(independent ? spec.sigma3 : 0.0, -1.0, rule);
  const Axis a42 = make_axis(sigma42, +1.0, rule);
  out.n_effective = static_cast<std::uint64_t>(a31.t.size() * a32.t.size() * a42.t.size());

  numerics::parallel_for(grid.size(), workers, [&](std::size_t g) {
    const Emitter base = resolve(p, grid[g]);
    cplx sum{};
    for (std::size_t i = 0; i < a31.t.size(); ++i) {
      for (std::size_t j = 0; j < a32.t.size(); ++j) {
        for (std::size_t k = 0; k < a42.t.size(); ++k) {
          const cplx w = a31.w[i] * a32.w[j] * a42.w[k];
          if (w == cplx(0.0, 0.0)) continue;
          Emitter e;
          if (independent) {
            e = shifted(base, a31.t[i], a32.t[j], a42.t[k]);
            e.rates.gamma31_c += a31.shift;
            e.rates.gamma21_c += a31.shift + a32.shift;
            e.rates.gamma32_c += a32.shift;
            e.rates.gamma41_c += a31.shift + a32.shift + a42.shift;
            sum += w * chi_homogeneous(e, I0Variant::full);
          } else {
            e = shifted(base, a31.t[i], a31.t[i], a42.t[k]);
            e = broadened(e, a31.shift, a42.shift);
            sum += w * chi_homogeneous(e, I0Variant::simplified);
          }
        }
      }
    }
    out.chi_mean[g] = sum;
  });
  return out;
}

AveragedChi average(const SystemParams& p, const DisorderSpec& spec, std::span<const double> grid,
                    int workers, bool use_mc) {
  switch (spec.family) {
    case DisorderFamily::none: {
      require_grid(grid);
      p.validate();
      AveragedChi out = make_result(grid, AverageMethod::homogeneous);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        out.chi_mean[g] = chi_homogeneous(resolve(p, grid[g]), I0Variant::full);
      }
      out.n_effective = 1;
      return out;
    }
    case DisorderFamily::orientational:
      return use_mc ? average_monte_carlo(p, spec, grid, workers)
                    : average_orientational_analytic(p, grid);
    case DisorderFamily::lorentzian:
      if (use_mc || spec.correlation_mode == CorrelationMode::independent) {
        return average_monte_carlo(p, spec, grid, workers);
      }
      return p.fields.omega_s_rabi == 0.0 ? average_energy_lorentzian_vit(p, spec, grid)
                                          : average_energy_lorentzian_kerr(p, spec, grid);
    case DisorderFamily::gaussian:
      return use_mc ? average_monte_carlo(p, spec, grid, workers)
                    : average_quadrature_gaussian(p, spec, grid, workers);
  }
  throw ConfigError("unknown disorder family");
}

}  // namespace vitkerr
