#include "vitkerr/susceptibility.hpp"

#include <cmath>
#include <string>

#include "vitkerr/errors.hpp"

namespace vitkerr {

namespace {

constexpr cplx I{0.0, 1.0};

void require_nonsingular(cplx den, const char* what) {
  if (!(std::abs(den) > kDegenerateThreshold)) {
    throw DegenerateParameters(std::string(what) + " vanishes");
  }
}

cplx d31(const Emitter& e) { return {e.delta31, e.rates.gamma31_c}; }
cplx d21(const Emitter& e) { return {e.delta21(), e.rates.gamma21_c}; }
cplx d41(const Emitter& e) { return {e.delta41(), e.rates.gamma41_c}; }

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_full: return "closed_full";
    case Provenance::closed_simplified: return "closed_simplified";
    case Provenance::vit: return "vit";
    case Provenance::oracle: return "oracle";
    case Provenance::averaged: return "averaged";
  }
  return "closed_full";
}

cplx i0_full(const Emitter& e) {
  if (e.omega_c == 0.0) return 0.0;
  const cplx c = I * e.rates.gamma32_c - e.delta32;
  const cplx D41 = d41(e);
  const double oc2 = e.omega_c * e.omega_c;
  const cplx den = c * (e.omega_s * e.omega_s) + D41 * (e.omega_p * e.omega_p) - d21(e) * D41 * c;
  require_nonsingular(den, "I0 denominator C Omega_s^2 + D41 Omega_p^2 - D21 D41 C");
  return oc2 * D41 * c / den;
}

cplx i0_simplified(const Emitter& e) {
  if (e.omega_c == 0.0) return 0.0;
  const cplx D41 = d41(e);
  const cplx den = e.omega_s * e.omega_s - d21(e) * D41;
  require_nonsingular(den, "I0 denominator Omega_s^2 - D21 D41");
  return e.omega_c * e.omega_c * D41 / den;
}

cplx chi_homogeneous(const Emitter& e, I0Variant variant) {
  const cplx i0 = variant == I0Variant::full ? i0_full(e) : i0_simplified(e);
  const cplx den = d31(e) + i0;
  if (!(std::abs(den.real()) >= kDegenerateThreshold) && !(std::abs(den.imag()) >= kDegenerateThreshold)) {
    throw DegenerateParameters("chi denominator (Delta31 + Re I0) + i (gamma31 + Im I0) vanishes");
  }
  return e.k / den;
}

ChiSample sample_homogeneous(const Emitter& e, I0Variant variant) {
  ChiSample s;
  s.delta_p = e.delta31;
  s.chi = chi_homogeneous(e, variant);
  s.provenance = variant == I0Variant::full ? Provenance::closed_full : Provenance::closed_simplified;
  return s;
}

cplx chi_vit(const Emitter& e) {
  if (e.omega_c == 0.0) {
    require_nonsingular(d31(e), "Delta31 + i gamma31");
    return e.k / d31(e);
  }
  const cplx D21 = d21(e);
  const cplx den = d31(e) * D21 - e.omega_c * e.omega_c;
  require_nonsingular(den, "VIT denominator D31 D21 - Omega_c^2");
  return e.k * D21 / den;
}

cplx chi_vit_lambda_form(const Emitter& e) {
  const double lc = lambda_c(e);
  const cplx den{e.delta31 - lc * e.delta21(), e.rates.gamma31_c + lc * e.rates.gamma21_c};
  require_nonsingular(den, "VIT denominator (Delta31 - lambda_c Delta21) + i (gamma31 + lambda_c gamma21)");
  return e.k / den;
}

double lambda_c(const Emitter& e) {
  const double d = e.delta21();
  const double g = e.rates.gamma21_c;
  const double n = d * d + g * g;
  if (!(n > 0.0)) {
    throw DegenerateParameters("lambda_c undefined: Delta21 = gamma21 = 0");
  }
  return e.omega_c * e.omega_c / n;
}

}  // namespace vitkerr
