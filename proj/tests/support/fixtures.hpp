#pragma once

#include <cmath>
#include <random>

#include "vitkerr/params.hpp"

namespace fixtures {

inline vitkerr::SystemParams fig2() {
  vitkerr::SystemParams p;
  p.rates.kappa = 1e-4;
  p.rates.gamma_pd = 0.01;
  p.rates.gamma_ivr = 10.0;
  p.fields.omega_p_rabi = 1e-4;
  p.fields.omega_c_rabi = 1.2;
  return p;
}

inline constexpr double kFig3SigmaG = 5.0;
inline constexpr double kFig3DeltaS = 50.0;

inline double fig3_sigma_l() { return std::sqrt(2.0 * std::log(2.0)) * kFig3SigmaG; }

// gamma21 = 0.002, Omega_c = 0.8, Delta_s = 50, Omega_s from lambda_s with the
// Lorentzian Sigma41.
inline vitkerr::SystemParams fig3(double lambda_s) {
  vitkerr::SystemParams p;
  p.rates.kappa = 1e-4;
  p.rates.gamma_pd = 0.00195;
  p.rates.gamma_ivr = 10.0;
  p.fields.omega_p_rabi = 1e-4;
  p.fields.omega_c_rabi = 0.8;
  p.fields.delta_s = kFig3DeltaS;
  const double s41 = vitkerr::derive_rates(p.rates).gamma41_c + fig3_sigma_l();
  p.fields.omega_s_rabi = std::sqrt(lambda_s * (kFig3DeltaS * kFig3DeltaS + s41 * s41));
  return p;
}

// Random draw over the ranges used by the oracle checks.
inline vitkerr::SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.0, 10.0), det(-10.0, 10.0), rabi(0.0, 3.0),
      lp(-4.0, -1.0);
  vitkerr::SystemParams p;
  p.rates.kappa = rate(rng);
  p.rates.gamma_pd = rate(rng);
  p.rates.gamma_ivr = rate(rng);
  p.rates.gamma_31 = rate(rng);
  p.rates.gamma_32 = rate(rng);
  p.fields.delta_p = det(rng);
  p.fields.delta_c = det(rng);
  p.fields.delta_s = det(rng);
  p.fields.omega_c_rabi = rabi(rng);
  p.fields.omega_s_rabi = rabi(rng);
  p.fields.omega_p_rabi = std::pow(10.0, lp(rng));
  return p;
}

inline double rel(vitkerr::cplx a, vitkerr::cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixtures
