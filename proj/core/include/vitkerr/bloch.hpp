#pragma once

// Stationary solution of the weak-probe coherence equations. This is the
// oracle for the closed-form susceptibilities: it solves the linear system
// directly and never uses I0.
//
// Conventions: dsigma/dt = A sigma + b with the slowly varying amplitudes
// sigma13, sigma12, sigma32, sigma14, sigma34, sigma24 (populations frozen at
// sigma11 = 1). The steady state solves M sigma = b with M = -A. The probe
// source enters only the sigma13 equation as b0 = +i Omega_p (from the
// population difference sigma33 - sigma11 = -1).

#include <array>

#include "vitkerr/params.hpp"

namespace vitkerr {

struct CoherenceVector {
  cplx sigma13;
  cplx sigma12;
  cplx sigma32;
  cplx sigma14;
  cplx sigma34;
  cplx sigma24;

  std::array<cplx, 6> as_array() const {
    return {sigma13, sigma12, sigma32, sigma14, sigma34, sigma24};
  }
};

// six_coherence is the full truncated system. four_coherence drops sigma34
// and sigma24 (their rows and columns), the reduction whose exact solution is
// the full I0 closed form.
enum class Closure { six_coherence, four_coherence };

struct LinearSystem {
  std::array<std::array<cplx, 6>, 6> matrix{};
  std::array<cplx, 6> source{};
  Closure closure = Closure::six_coherence;
};

LinearSystem build_system(const Emitter& e, Closure closure = Closure::six_coherence);
LinearSystem build_system(const SystemParams& p, Closure closure = Closure::six_coherence);

struct SolveReport {
  double condition_estimate = 0.0;  // 1-norm condition number estimate
  double relative_residual = 0.0;   // |M sigma - b| / |b|, 0 when b = 0
};

// Partial-pivot LU solve. Throws DegenerateParameters when the condition
// estimate exceeds 1e12 or the residual check fails.
CoherenceVector solve_steady_state(const LinearSystem& system, SolveReport* report = nullptr);

// chi = K conj(sigma13) / Omega_p. Throws UndefinedChi when Omega_p = 0.
cplx chi_from_bloch(const CoherenceVector& sigma, const Emitter& e);

// Convenience: build, solve, extract.
cplx chi_bloch(const Emitter& e, Closure closure = Closure::six_coherence);

}  // namespace vitkerr
