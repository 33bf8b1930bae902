#include "vitkerr/merit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vitkerr/errors.hpp"
#include "vitkerr/numerics.hpp"

namespace vitkerr {

namespace {

constexpr double kMarginalBand = 1e-6;

BoundCheck make_check(std::string name, double value, double bound) {
  BoundCheck c;
  c.name = std::move(name);
  c.value = value;
  c.bound = bound;
  c.margin = value == 0.0 ? std::numeric_limits<double>::infinity() : bound / value;
  if (value == 0.0 && bound >= 0.0) {
    c.status = BoundStatus::satisfied;
  } else if (bound > 0.0 && std::abs(value / bound - 1.0) <= kMarginalBand) {
    c.status = BoundStatus::marginal;
  } else {
    c.status = value <= bound ? BoundStatus::satisfied : BoundStatus::violated;
  }
  return c;
}

double sigma31_of(const Emitter& e, double sigma3) { return e.rates.gamma31_c + sigma3; }

}  // namespace

double eta_from_chi(cplx chi) {
  const double mag = std::abs(chi);
  if (mag == 0.0 || std::abs(chi.imag()) < 1e-30 * mag) {
    int dir = 0;
    if (chi.real() != 0.0) dir = (chi.real() > 0.0) == !std::signbit(chi.imag()) ? 1 : -1;
    throw TransparencyDivergence("eta diverges: Im chi vanishes", dir);
  }
  return chi.real() / (2.0 * chi.imag());
}

SignalDressing signal_dressing(double omega_s, double delta_s, double width) {
  const double den = delta_s * delta_s + width * width;
  SignalDressing d;
  if (omega_s == 0.0) return d;
  if (!(den > 0.0)) {
    throw DegenerateParameters("lambda_s undefined: Delta_s = 0 and zero signal linewidth");
  }
  d.lambda_s = omega_s * omega_s / den;
  d.x_s = d.lambda_s * delta_s;
  d.gamma_s = d.lambda_s * width;
  return d;
}

SignalDressing signal_dressing(const Emitter& e, double sigma4) {
  return signal_dressing(e.omega_s, e.delta42, e.rates.gamma41_c + sigma4);
}

double eta_mean_closed(double x, const Emitter& e, const SignalDressing& d, double sigma3) {
  const double g21 = e.rates.gamma21_c;
  const double oc2 = e.omega_c * e.omega_c;
  const double a = d.a_s(x, g21);
  const double num = x * a - oc2 * (x - d.x_s);
  const double den = 2.0 * (sigma31_of(e, sigma3) * a + oc2 * (g21 + d.gamma_s));
  return -num / den;
}

double eta_vit_approx(double x, const Emitter& e, double sigma3) {
  const double oc2 = e.omega_c * e.omega_c;
  const double den = 2.0 * (sigma31_of(e, sigma3) * x * x + e.rates.gamma21_c * oc2);
  if (den == 0.0) return 0.0;
  return oc2 * x / den;
}

Optimum eta_vit_max(const Emitter& e, double sigma3) {
  const double g21 = e.rates.gamma21_c;
  const double s31 = sigma31_of(e, sigma3);
  if (!(g21 > 0.0) || !(s31 > 0.0) || !(e.omega_c > 0.0)) {
    throw DegenerateParameters("VIT optimum needs gamma21 > 0, Sigma31 > 0 and Omega_c > 0");
  }
  Optimum o;
  o.x = e.omega_c * std::sqrt(g21 / s31);
  o.eta = e.omega_c / (4.0 * std::sqrt(g21 * s31));
  return o;
}

Optimum maximize_eta(const std::function<double(double)>& f, double lo, double hi,
                     int scan_points) {
  if (!(hi > lo) || scan_points < 3) throw ConfigError("maximize_eta: need lo < hi and >= 3 points");
  const auto xs = numerics::linspace(lo, hi, static_cast<std::size_t>(scan_points));
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  Optimum o;
  o.at_boundary = best == 0 || best + 1 == xs.size();
  if (o.at_boundary) {
    o.x = xs[best];
    o.eta = best_val;
    return o;
  }
  const double x = numerics::golden_section_max(f, xs[best - 1], xs[best + 1], 1e-9);
  const double v = f(x);
  o.x = v >= best_val ? x : xs[best];
  o.eta = std::max(v, best_val);
  return o;
}

Optimum maximize_eta(std::span<const double> x, std::span<const double> eta) {
  if (x.size() != eta.size() || x.size() < 3) {
    throw ConfigError("maximize_eta: profile needs >= 3 points of matching size");
  }
  const auto it = std::max_element(eta.begin(), eta.end());
  const std::size_t i = static_cast<std::size_t>(it - eta.begin());
  Optimum o;
  o.x = x[i];
  o.eta = eta[i];
  o.at_boundary = i == 0 || i + 1 == x.size();
  if (o.at_boundary) return o;
  // Vertex of the parabola through the three points around the maximum.
  const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
  const double y0 = eta[i - 1], y1 = eta[i], y2 = eta[i + 1];
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double curv = (d1 - d0) / (x2 - x0);
  if (curv < 0.0) {
    const double xv = 0.5 * (x0 + x1) - d0 / (2.0 * curv);
    if (xv > x0 && xv < x2) {
      o.x = xv;
      o.eta = y1 + d0 * (xv - x1) + curv * (xv - x0) * (xv - x1);
    }
  }
  return o;
}

std::pair<double, double> eta_window(const Emitter& e, const SignalDressing& d, double sigma3) {
  const double s31 = sigma31_of(e, sigma3);
  if (e.omega_c == 0.0) return {d.x_s - s31, d.x_s + s31};
  const double est = e.omega_c * std::sqrt((e.rates.gamma21_c + d.gamma_s) / s31);
  return {d.x_s, d.x_s + 3.0 * est};
}

Optimum maximize_eta_closed(const Emitter& e, const SignalDressing& d, double sigma3) {
  const auto [lo, hi] = eta_window(e, d, sigma3);
  return maximize_eta([&](double x) { return eta_mean_closed(x, e, d, sigma3); }, lo, hi);
}

std::string_view to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::satisfied: return "satisfied";
    case BoundStatus::marginal: return "marginal";
    case BoundStatus::violated: return "violated";
  }
  return "violated";
}

bool SignalBoundReport::all_satisfied() const {
  return width.status != BoundStatus::violated && shift.status != BoundStatus::violated &&
         reduced.status != BoundStatus::violated;
}

SignalBoundReport check_signal_bound(const Emitter& e, const SignalDressing& d, double sigma3) {
  const double g21 = e.rates.gamma21_c;
  const double s31 = sigma31_of(e, sigma3);
  SignalBoundReport r;
  r.width = make_check("gamma_s <= gamma21", d.gamma_s, g21);
  r.shift = make_check("|x_s| <= Omega_c sqrt(gamma21/Sigma31)", std::abs(d.x_s),
                       e.omega_c * std::sqrt(g21 / s31));
  r.reduced = make_check("lambda_s <= gamma21/Sigma31", d.lambda_s, g21 / s31);
  return r;
}

VitLinewidth extract_gamma_vit(std::span<const double> x, std::span<const double> y,
                               double resonance) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw ConfigError("extract_gamma_vit: need >= 3 matching points");

  // Interior local minima with at least one strict side.
  std::size_t dip = n;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool is_min = y[i] <= y[i - 1] && y[i] <= y[i + 1] && (y[i] < y[i - 1] || y[i] < y[i + 1]);
    if (!is_min) continue;
    if (dip == n || std::abs(x[i] - resonance) < std::abs(x[dip] - resonance)) dip = i;
  }
  if (dip == n) throw NoTransparency("no local minimum in the absorption profile");

  std::size_t l = dip;
  while (l > 0 && y[l - 1] >= y[l]) --l;
  std::size_t r = dip;
  while (r + 1 < n && y[r + 1] >= y[r]) ++r;
  if (l == 0 || r + 1 == n) {
    throw NoTransparency("transparency dip is not flanked by two interior maxima");
  }
  const double flank = std::min(y[l], y[r]);
  VitLinewidth out;
  out.center = x[dip];
  out.depth = flank - y[dip];
  if (!(out.depth > 0.0)) throw NoTransparency("transparency dip has zero depth");
  const double half = y[dip] + 0.5 * out.depth;

  auto cross = [&](std::size_t a, std::size_t b) {
    // y[a] < half <= y[b], neighbours
    return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
  };
  std::size_t i = dip;
  while (y[i - 1] < half) --i;
  const double xl = cross(i, i - 1);
  std::size_t j = dip;
  while (y[j + 1] < half) ++j;
  const double xr = cross(j, j + 1);
  out.width = xr - xl;
  out.contrast = flank != 0.0 ? out.depth / flank : 0.0;
  return out;
}

std::string_view to_string(MeritMethod m) {
  return m == MeritMethod::closed_form ? "closed_form" : "from_chi";
}

std::map<std::string, std::string> engine_versions() {
  return {{"core-model", "1.0.0"},   {"bloch-steady-state", "1.0.0"}, {"susceptibility", "1.0.0"},
          {"disorder-average", "1.0.0"}, {"merit", "1.0.0"}};
}

}  // namespace vitkerr
