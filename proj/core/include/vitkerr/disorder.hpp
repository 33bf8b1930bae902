#pragma once

// Ensemble averages of the probe susceptibility over static disorder:
// closed forms for orientational and Lorentzian disorder, and two numerical
// engines (seeded Monte Carlo, Gauss-Hermite quadrature) for everything else.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vitkerr/params.hpp"

namespace vitkerr {

enum class AverageMethod {
  homogeneous,
  analytic_orientational,
  analytic_lorentzian_vit,
  analytic_lorentzian_kerr,
  mc,
  quadrature,
  quadrature_orientational,
};

std::string_view to_string(AverageMethod m);

struct AveragedChi {
  std::vector<double> grid;
  std::vector<cplx> chi_mean;
  std::vector<cplx> stderr_chi;  // (se of Re, se of Im) per point; zero for deterministic methods
  AverageMethod method = AverageMethod::mc;
  std::uint64_t n_effective = 0;  // samples (mc) or nodes per axis product (quadrature)
  std::vector<std::string> warnings;
};

// --- single-point forms -----------------------------------------------------

// <chi> over a uniformly distributed dipole angle, Omega_c = Omega0 cos(theta)
// with Omega0 = e.omega_c, in the VIT limit. Uses the real closed form when
// gamma21 = 0 and the complex form otherwise.
cplx orientational_average(const Emitter& e);
// The real closed form only (gamma21 = 0 is assumed, not checked).
cplx orientational_average_real_form(const Emitter& e);
// The complex form only, valid for any gamma21.
cplx orientational_average_complex_form(const Emitter& e);
// Adaptive quadrature of chi_vit(Omega0 cos theta) over theta.
cplx orientational_average_quadrature(const Emitter& e, double rel_tol = 1e-13);

// Cauchy-distributed delta31 = delta32 (width sigma3): the VIT line with
// gamma31 -> gamma31 + sigma3.
cplx lorentzian_vit_average(const Emitter& e, double sigma3);

// Which three-photon detuning enters the signal dressing of the Kerr average.
// far_detuned replaces Delta41 by Delta_s (valid for |Delta_p| << |Delta_s|).
enum class KerrDetuning { exact, far_detuned };

// Correlated Cauchy disorder on delta31 (sigma3) and delta42 (sigma4) with the
// weak-probe I0: gamma31 -> Sigma31, gamma41 -> Sigma41.
cplx lorentzian_kerr_average(const Emitter& e, double sigma3, double sigma4,
                             KerrDetuning detuning = KerrDetuning::exact);

// FWHM-matched Lorentzian HWHM for a Gaussian standard deviation.
double match_fwhm(double sigma_gaussian);

// --- grid engines -------------------------------------------------------------

AveragedChi average_orientational_analytic(const SystemParams& p, std::span<const double> grid);
AveragedChi average_orientational_quadrature(const SystemParams& p, std::span<const double> grid,
                                             int workers = 1);
AveragedChi average_energy_lorentzian_vit(const SystemParams& p, const DisorderSpec& spec,
                                          std::span<const double> grid);
AveragedChi average_energy_lorentzian_kerr(const SystemParams& p, const DisorderSpec& spec,
                                           std::span<const double> grid,
                                           KerrDetuning detuning = KerrDetuning::exact);

// Monte Carlo mean of the full-I0 homogeneous chi. Sample k at grid point g
// draws its uniforms from stream g, counters 4k..4k+3, so the result depends
// only on (seed, n_samples, grid), never on the worker count.
AveragedChi average_monte_carlo(const SystemParams& p, const DisorderSpec& spec,
                                std::span<const double> grid, int workers = 1);

// Deterministic Gaussian average. Each Gaussian axis is integrated with a
// Gauss-Hermite rule on the contour shifted by i sigma into the half-plane
// where chi is analytic, which turns the sum into homogeneous chi values with
// extra damping and complex weights. Tensor product over independent axes.
AveragedChi average_quadrature_gaussian(const SystemParams& p, const DisorderSpec& spec,
                                        std::span<const double> grid, int workers = 1);

// Dispatches on spec.family: none -> homogeneous full-I0 chi, orientational -> analytic, lorentzian -> analytic
// (VIT form when Omega_s = 0), gaussian -> quadrature unless use_mc is set.
AveragedChi average(const SystemParams& p, const DisorderSpec& spec, std::span<const double> grid,
                    int workers = 1, bool use_mc = false);

}  // namespace vitkerr
