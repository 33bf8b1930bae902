#pragma once

// Cross-Kerr figure of merit eta = Re chi / (2 Im chi): closed forms, the VIT
// optimum, numerical maximization, signal-field bounds and the width of the
// transparency dip.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vitkerr/params.hpp"

namespace vitkerr {

// Throws TransparencyDivergence when |Im chi| < 1e-30 |chi| (or chi = 0).
double eta_from_chi(cplx chi);

// Signal-field dressing of the Raman coherence in the far-detuned limit.
struct SignalDressing {
  double lambda_s = 0.0;  // Omega_s^2 / (Delta_s^2 + w^2)
  double x_s = 0.0;       // shift, lambda_s Delta_s
  double gamma_s = 0.0;   // width, lambda_s w

  // A_s(x) = (x - x_s)^2 + (gamma21 + gamma_s)^2.
  double a_s(double x, double gamma21) const {
    const double u = x - x_s;
    const double v = gamma21 + gamma_s;
    return u * u + v * v;
  }
};

// w = gamma41 (+ sigma4 when broadened). Throws DegenerateParameters when
// Delta_s = w = 0.
SignalDressing signal_dressing(double omega_s, double delta_s, double width);
SignalDressing signal_dressing(const Emitter& e, double sigma4 = 0.0);

// Mean figure of merit with Lorentzian disorder (sigma3 added to gamma31):
//   -[x A - Omega_c^2 (x - x_s)] / 2 [Sigma31 A + Omega_c^2 (gamma21 + gamma_s)].
// x is the probe detuning Delta_p; the cavity is taken on resonance
// (x = Delta21).
double eta_mean_closed(double x, const Emitter& e, const SignalDressing& d, double sigma3);

// VIT approximation Omega_c^2 x / 2 (Sigma31 x^2 + gamma21 Omega_c^2).
double eta_vit_approx(double x, const Emitter& e, double sigma3);

struct Optimum {
  double x = 0.0;
  double eta = 0.0;
  bool at_boundary = false;  // maximum sits on the edge of the search window
};

// x* = Omega_c sqrt(gamma21 / Sigma31), eta_max = Omega_c / 4 sqrt(gamma21 Sigma31).
Optimum eta_vit_max(const Emitter& e, double sigma3);

// Coarse scan of f on [lo, hi] followed by golden-section refinement
// (|dx| < 1e-9) around the best scan point.
Optimum maximize_eta(const std::function<double(double)>& f, double lo, double hi,
                     int scan_points = 401);
// Maximum of a sampled profile (>= 3 points), refined by a parabola through
// the best point and its neighbours.
Optimum maximize_eta(std::span<const double> x, std::span<const double> eta);

// Window that brackets the VIT maximum of the dressed profile:
// [x_s, x_s + 3 Omega_c sqrt((gamma21 + gamma_s) / Sigma31)]. Falls back to
// [x_s - Sigma31, x_s + Sigma31] when Omega_c = 0.
std::pair<double, double> eta_window(const Emitter& e, const SignalDressing& d, double sigma3);

// maximize_eta of eta_mean_closed over eta_window.
Optimum maximize_eta_closed(const Emitter& e, const SignalDressing& d, double sigma3);

enum class BoundStatus { satisfied, marginal, violated };
std::string_view to_string(BoundStatus s);

struct BoundCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound / value, +inf when value = 0
  BoundStatus status = BoundStatus::satisfied;
};

struct SignalBoundReport {
  BoundCheck width;    // gamma_s <= gamma21
  BoundCheck shift;    // |x_s| <= Omega_c sqrt(gamma21 / Sigma31)
  BoundCheck reduced;  // lambda_s <= gamma21 / Sigma31
  bool all_satisfied() const;
};

SignalBoundReport check_signal_bound(const Emitter& e, const SignalDressing& d, double sigma3);

struct VitLinewidth {
  double center = 0.0;    // abscissa of the dip minimum
  double depth = 0.0;     // lower flank maximum - dip value
  double width = 0.0;     // full width at half depth
  double contrast = 0.0;  // depth / lower flank maximum
};

// Locates the local minimum of an absorption profile nearest to `resonance`
// and measures it against its two flanking maxima. Throws NoTransparency if
// there is no interior minimum with interior maxima on both sides.
VitLinewidth extract_gamma_vit(std::span<const double> x, std::span<const double> im_chi,
                               double resonance = 0.0);

enum class MeritMethod { closed_form, from_chi };
std::string_view to_string(MeritMethod m);

struct MeritResult {
  std::vector<double> grid;
  std::vector<double> eta;
  double eta_max = 0.0;
  double x_max = 0.0;
  MeritMethod method = MeritMethod::closed_form;
  SignalBoundReport constraint_report;
};

// Versions of the physics engines, recorded in run manifests.
std::map<std::string, std::string> engine_versions();

}  // namespace vitkerr
