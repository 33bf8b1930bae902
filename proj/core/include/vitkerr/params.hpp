#pragma once

// Physical parameters of the cavity-coupled four-level photoswitch.
//
// Everything is dimensionless, in units of the homogeneous probe linewidth
// gamma = Gamma31 + Gamma32 (normally 1). Level 1 is the trans ground state,
// 2 the cis ground state, 3 the S1 excited state and 4 the S2 excited state.
// The probe drives 1<->3, the cavity vacuum 2<->3 and the signal 2<->4.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace vitkerr {

using cplx = std::complex<double>;

// Primitive relaxation rates of the master equation.
struct PrimitiveRates {
  double kappa = 0.0;      // cavity photon decay
  double gamma_pd = 0.0;   // pure dephasing of the 1-2 vibrational coherence
  double gamma_ivr = 0.0;  // S2 -> S1 internal vibrational relaxation
  double gamma_31 = 0.5;   // S1 -> trans decay
  double gamma_32 = 0.5;   // S1 -> cis decay

  // Homogeneous probe linewidth gamma = Gamma31 + Gamma32.
  double gamma() const { return gamma_31 + gamma_32; }

  // Throws ConfigError on negative rates or gamma <= 0.
  void validate() const;

  bool operator==(const PrimitiveRates&) const = default;
};

// Decay rates of the six slowly varying coherences.
struct DerivedRates {
  double gamma31_c = 0.0;  // (Gamma31 + Gamma32) / 2
  double gamma21_c = 0.0;  // kappa/2 + Gamma_pd
  double gamma32_c = 0.0;  // kappa/2 + Gamma31/2 + Gamma32/2
  double gamma43_c = 0.0;  // kappa/2 + Gamma_IVR/2
  double gamma42_c = 0.0;  // kappa + Gamma_IVR/2
  double gamma41_c = 0.0;  // == gamma43_c

  bool operator==(const DerivedRates&) const = default;
};

// Throws ConfigError if any primitive rate is negative. Zero rates are
// allowed here (degenerate systems are reported by the solvers).
DerivedRates derive_rates(const PrimitiveRates& p);

// Classical and vacuum field parameters. Detunings are mean values over the
// ensemble: delta_p = omega_p - <omega31>, delta_c = omega_c - <omega32>,
// delta_s = omega_s - <omega42>.
struct FieldParams {
  double omega_p_rabi = 1e-4;  // probe Rabi frequency
  double omega_s_rabi = 0.0;   // signal Rabi frequency
  double omega_c_rabi = 0.0;   // vacuum Rabi frequency (Omega_0 under orientational disorder)
  double n_molecules = 1.0;    // collective enhancement: Omega_c -> sqrt(N) Omega_c
  double delta_p = 0.0;
  double delta_c = 0.0;
  double delta_s = 0.0;

  // sqrt(N) * Omega_c.
  double effective_coupling() const;

  void validate() const;

  bool operator==(const FieldParams&) const = default;
};

struct TwoThreePhotonDetunings {
  double two_photon = 0.0;    // Delta21 = Delta_p - Delta_c
  double three_photon = 0.0;  // Delta41 = Delta21 + Delta_s
};

TwoThreePhotonDetunings effective_detunings(const FieldParams& f);

// Complex scale K of the probe susceptibility, K = -|d13|^2 / 2 hbar.
struct OscillatorScale {
  cplx k_scale{-1.0, 0.0};

  bool operator==(const OscillatorScale&) const = default;
};

struct SystemParams {
  PrimitiveRates rates;
  FieldParams fields;
  OscillatorScale scale;

  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

enum class DisorderFamily { none, lorentzian, gaussian, orientational };
enum class CorrelationMode { correlated, independent };

std::string_view to_string(DisorderFamily f);
std::string_view to_string(CorrelationMode m);
DisorderFamily parse_disorder_family(std::string_view s);
CorrelationMode parse_correlation_mode(std::string_view s);

inline constexpr std::uint64_t kDefaultSeed = 20190923;

// Static disorder of the ensemble. For lorentzian the widths are HWHM, for
// gaussian they are standard deviations. sigma3 applies to delta31 (and
// delta32 in independent mode), sigma4 to delta42.
struct DisorderSpec {
  DisorderFamily family = DisorderFamily::none;
  double sigma3 = 0.0;
  double sigma4 = 0.0;
  CorrelationMode correlation_mode = CorrelationMode::correlated;
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  int quadrature_nodes = 201;

  // Sigma31 = gamma31 + sigma3 (Lorentzian combined width).
  double combined_sigma31(const DerivedRates& r) const { return r.gamma31_c + sigma3; }
  // Sigma41 = gamma41 + sigma4.
  double combined_sigma41(const DerivedRates& r) const { return r.gamma41_c + sigma4; }

  void validate() const;

  bool operator==(const DisorderSpec&) const = default;
};

// Rates and detunings of a single emitter, the input of every homogeneous
// formula and of the Bloch solver. Disorder averaging shifts the transition
// frequencies of copies of this struct.
struct Emitter {
  double delta31 = 0.0;  // probe detuning omega_p - omega31
  double delta32 = 0.0;  // cavity detuning omega_c - omega32
  double delta42 = 0.0;  // signal detuning omega_s - omega42
  DerivedRates rates;
  double omega_p = 0.0;
  double omega_c = 0.0;  // already includes sqrt(N)
  double omega_s = 0.0;
  cplx k{-1.0, 0.0};

  // Raman detuning omega_p - omega_c - omega21.
  double delta21() const { return delta31 - delta32; }
  // Three-photon detuning omega_p - omega_c + omega_s - omega41.
  double delta41() const { return delta21() + delta42; }
};

// Mean-value emitter for the given system, with the probe detuning taken from
// the field parameters.
Emitter resolve(const SystemParams& p);
// Same, with the probe detuning overridden (grid evaluation).
Emitter resolve(const SystemParams& p, double delta_p);

// Applies static frequency fluctuations: Delta31 += d31, Delta32 += d32,
// Delta42 += d42, so that Delta41 picks up d42 - d32 + d31.
Emitter shifted(Emitter e, double d31, double d32, double d42);

// Adds inhomogeneous widths to the 1-3 and 1-4 coherence decay rates.
Emitter broadened(Emitter e, double sigma3, double sigma4);

enum class UnitDirection { thz_to_mev, mev_to_thz };

// Planck constant in meV per THz (h = 2 pi hbar, CODATA 2018).
inline constexpr double kPlanckMevPerThz = 4.135667696;

// Converts a linear frequency in THz to an energy in meV or back.
double convert_rate_units(double value, UnitDirection direction);

// JSON configuration documents. Field names follow the structs above;
// unknown keys are rejected with ConfigError. k_scale is written as [re, im].
SystemParams parse_system_params(std::string_view json_text);
DisorderSpec parse_disorder_spec(std::string_view json_text);
std::string to_json(const SystemParams& p);
std::string to_json(const DisorderSpec& d);

}  // namespace vitkerr
