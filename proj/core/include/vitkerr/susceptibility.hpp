#pragma once

// Closed-form probe susceptibility of a single (homogeneously broadened)
// emitter: the full Kerr form, its weak-probe simplification and the VIT
// limit without signal field.

#include <string_view>

#include "vitkerr/params.hpp"

namespace vitkerr {

enum class Provenance { closed_full, closed_simplified, vit, oracle, averaged };

std::string_view to_string(Provenance p);

struct ChiSample {
  double delta_p = 0.0;
  cplx chi;
  Provenance provenance = Provenance::closed_full;
  cplx stderr_chi;  // per-component standard errors (re, im); zero unless averaged
};

// Denominators with magnitude at or below this are treated as singular.
inline constexpr double kDegenerateThreshold = 1e-30;

// Nonlinear self-energy keeping the Omega_p^2 self-transparency term:
//   I0 = Omega_c^2 D41 C / (C Omega_s^2 + D41 Omega_p^2 - D21 D41 C)
// with D_ij = Delta_ij + i gamma_ij and C = i gamma32 - Delta32.
cplx i0_full(const Emitter& e);

// Weak-probe limit: I0 = Omega_c^2 D41 / (Omega_s^2 - D21 D41).
cplx i0_simplified(const Emitter& e);

enum class I0Variant { full, simplified };

// chi = K / ((Delta31 + Re I0) + i (gamma31 + Im I0)).
cplx chi_homogeneous(const Emitter& e, I0Variant variant);
ChiSample sample_homogeneous(const Emitter& e, I0Variant variant);

// VIT limit (signal ignored): chi = K D21 / (D31 D21 - Omega_c^2).
cplx chi_vit(const Emitter& e);
// Same quantity through the cavity dressing parameter:
//   K / ((Delta31 - lambda_c Delta21) + i (gamma31 + lambda_c gamma21)).
cplx chi_vit_lambda_form(const Emitter& e);

// lambda_c = Omega_c^2 / (Delta21^2 + gamma21^2).
double lambda_c(const Emitter& e);

}  // namespace vitkerr
