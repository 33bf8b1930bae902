#include "vitkerr_tools/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "vitkerr/bloch.hpp"
#include "vitkerr/disorder.hpp"
#include "vitkerr/errors.hpp"
#include "vitkerr/merit.hpp"
#include "vitkerr/numerics.hpp"
#include "vitkerr/susceptibility.hpp"

namespace vitkerr::tools {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kOracleThreshold = 1e-9;

const char* kUnitsNote = "units: detunings and rates in gamma = Gamma31 + Gamma32; chi in |K|";

AveragedChi averaged(const RunConfig& c, const SystemParams& p, std::span<const double> grid) {
  const DisorderSpec& d = c.disorder;
  switch (c.engine) {
    case Engine::automatic:
      return average(p, d, grid, c.workers, false);
    case Engine::mc:
      return average_monte_carlo(p, d, grid, c.workers);
    case Engine::analytic:
      if (d.family == DisorderFamily::gaussian) {
        throw ConfigError("gaussian disorder has no closed form; use quadrature or mc");
      }
      if (d.family == DisorderFamily::lorentzian && d.correlation_mode == CorrelationMode::independent) {
        throw ConfigError("independent lorentzian disorder has no closed form; use mc");
      }
      return average(p, d, grid, c.workers, false);
    case Engine::quadrature:
      if (d.family == DisorderFamily::gaussian) return average_quadrature_gaussian(p, d, grid, c.workers);
      if (d.family == DisorderFamily::orientational) {
        return average_orientational_quadrature(p, grid, c.workers);
      }
      throw ConfigError("quadrature engine needs gaussian or orientational disorder");
  }
  throw ConfigError("unknown engine");
}

cplx averaged_at(const RunConfig& c, const SystemParams& p, double x) {
  const double g[1] = {x};
  RunConfig one = c;
  one.workers = 1;
  return averaged(one, p, g).chi_mean[0];
}

// eta clipped to +-clip; the flag says what happened.
struct ClippedEta {
  double value = 0.0;
  const char* flag = "ok";
};

ClippedEta clipped_eta(cplx chi, double clip) {
  try {
    const double eta = eta_from_chi(chi);
    if (std::abs(eta) > clip) return {std::copysign(clip, eta), "clipped"};
    return {eta, "ok"};
  } catch (const TransparencyDivergence& e) {
    return {e.direction() == 0 ? 0.0 : e.direction() * clip, "divergent"};
  }
}

std::string join_flags(const char* g, const char* l) {
  const std::string a = g, b = l;
  if (a == "ok" && b == "ok") return "ok";
  std::string out;
  if (a != "ok") out = "gaussian_" + a;
  if (b != "ok") out += (out.empty() ? "" : "+") + ("lorentzian_" + b);
  return out;
}

Table key_value_table(std::string title) {
  Table t;
  t.title = std::move(title);
  t.columns = {"quantity", "value"};
  return t;
}

// eta of the averaged chi; divergences count as -inf so they never win a max.
double eta_or_floor(cplx chi) {
  try {
    return eta_from_chi(chi);
  } catch (const TransparencyDivergence&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

double lorentzian_sigma3(const DisorderSpec& d) {
  switch (d.family) {
    case DisorderFamily::gaussian: return match_fwhm(d.sigma3);
    case DisorderFamily::lorentzian: return d.sigma3;
    default: return 0.0;
  }
}

double lorentzian_sigma4(const DisorderSpec& d) {
  switch (d.family) {
    case DisorderFamily::gaussian: return match_fwhm(d.sigma4);
    case DisorderFamily::lorentzian: return d.sigma4;
    default: return 0.0;
  }
}

SystemParams params_for_lambda(const RunConfig& c, double lambda_s) {
  SystemParams p = c.params;
  p.fields.omega_s_rabi = omega_s_for_lambda(p, lambda_s, lorentzian_sigma4(c.disorder));
  return p;
}

MeritMaxima merit_maxima(const RunConfig& c, double lambda_s) {
  const SystemParams p = params_for_lambda(c, lambda_s);
  const double s3 = lorentzian_sigma3(c.disorder);
  const Emitter e0 = resolve(p, 0.0);
  const SignalDressing dl = signal_dressing(e0, lorentzian_sigma4(c.disorder));

  MeritMaxima m;
  m.lambda_s = lambda_s;
  const Optimum lor = maximize_eta_closed(e0, dl, s3);
  m.eta_max_lorentzian = lor.eta;
  m.x_max_lorentzian = lor.x;

  // The averaged profile peaks further out than the Lorentzian estimate when
  // the disorder has Gaussian tails; search twice the closed-form window.
  const auto [lo, hi] = eta_window(e0, dl, s3);
  const double hi_g = lo + 2.0 * (hi - lo);
  const Optimum gau =
      maximize_eta([&](double x) { return eta_or_floor(averaged_at(c, p, x)); }, lo, hi_g, 121);
  m.eta_max_gaussian = gau.eta;
  m.x_max_gaussian = gau.x;
  return m;
}

CommandOutput run_spectrum(const RunConfig& c) {
  const std::vector<double> grid = c.grid.points();
  const AveragedChi avg = averaged(c, c.params, grid);
  const double kmag = std::abs(c.params.scale.k_scale);
  if (!(kmag > 0.0)) throw ConfigError("k_scale must be nonzero");

  CommandOutput out;
  out.data.title = "disorder-averaged probe susceptibility";
  out.data.notes = {kUnitsNote, "x = probe detuning Delta_p",
                    "family: " + std::string(to_string(c.disorder.family)),
                    "n_effective: " + std::to_string(avg.n_effective)};
  for (const auto& w : avg.warnings) out.data.notes.push_back("warning: " + w);
  out.data.columns = {"x", "re_chi", "im_chi", "stderr_re", "stderr_im", "method"};
  const std::string method(to_string(avg.method));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const cplx chi = avg.chi_mean[g] / kmag;
    const cplx se = avg.stderr_chi[g] / kmag;
    out.data.add_row({grid[g], chi.real(), chi.imag(), se.real(), se.imag(), method});
  }
  const std::string col = c.plot.column.empty() ? "im_chi" : c.plot.column;
  out.plot.push_back({col, grid, out.data.numeric_column(col)});
  out.plot_x_label = "Delta_p / gamma";
  out.plot_y_label = col + " / |K|";
  return out;
}

CommandOutput run_merit(const RunConfig& c) {
  if (c.lambda_s.empty()) throw ConfigError("merit needs at least one lambda_s");
  const std::vector<double> grid = c.grid.points();
  const double s3 = lorentzian_sigma3(c.disorder);
  const double s4 = lorentzian_sigma4(c.disorder);

  CommandOutput out;
  out.data.title = "cross-Kerr figure of merit eta";
  out.data.notes = {kUnitsNote, "x = probe detuning Delta_p",
                    "eta_gaussian: eta of the " + std::string(to_string(c.disorder.family)) +
                        "-averaged chi; eta_lorentzian: closed form with widths " +
                        format_number(s3) + ", " + format_number(s4),
                    "values beyond +-clip_eta = " + format_number(c.clip_eta) + " are clipped (flag)"};
  out.data.columns = {"lambda_s", "x", "eta_gaussian", "eta_lorentzian", "flag"};

  Table summary;
  summary.title = "eta maxima per lambda_s";
  summary.notes = {kUnitsNote};
  summary.columns = {"lambda_s",     "eta_max_g",    "x_max_g",     "eta_max_l",
                     "x_max_l",      "bound_width",  "bound_shift", "bound_reduced"};

  for (double lambda : c.lambda_s) {
    const SystemParams p = params_for_lambda(c, lambda);
    const AveragedChi avg = averaged(c, p, grid);
    std::vector<double> eta_g(grid.size()), eta_l(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const Emitter e = resolve(p, grid[g]);
      const SignalDressing d = signal_dressing(e, s4);
      const ClippedEta cg = clipped_eta(avg.chi_mean[g], c.clip_eta);
      ClippedEta cl;
      const double el = eta_mean_closed(grid[g], e, d, s3);
      if (std::isnan(el)) {
        cl = {kNan, "undefined"};
      } else if (std::isinf(el)) {
        cl = {std::copysign(c.clip_eta, el), "divergent"};
      } else if (std::abs(el) > c.clip_eta) {
        cl = {std::copysign(c.clip_eta, el), "clipped"};
      } else {
        cl = {el, "ok"};
      }
      eta_g[g] = cg.value;
      eta_l[g] = cl.value;
      out.data.add_row({lambda, grid[g], cg.value, cl.value, join_flags(cg.flag, cl.flag)});
    }

    const MeritMaxima m = merit_maxima(c, lambda);
    const Emitter e0 = resolve(p, 0.0);
    const SignalBoundReport b = check_signal_bound(e0, signal_dressing(e0, s4), s3);
    summary.add_row({lambda, m.eta_max_gaussian, m.x_max_gaussian, m.eta_max_lorentzian,
                     m.x_max_lorentzian, std::string(to_string(b.width.status)),
                     std::string(to_string(b.shift.status)), std::string(to_string(b.reduced.status))});

    const std::string col = c.plot.column.empty() ? "eta_gaussian" : c.plot.column;
    out.plot.push_back({"lambda_s = " + format_number(lambda), grid, col == "eta_lorentzian" ? eta_l : eta_g});
  }
  out.summary = std::move(summary);
  out.plot_x_label = "Delta_p / gamma";
  out.plot_y_label = "eta";
  return out;
}

CommandOutput run_merit_scan(const RunConfig& c) {
  const std::vector<double> lambdas =
      numerics::logspace(c.lambda_scan.lo, c.lambda_scan.hi, static_cast<std::size_t>(c.lambda_scan.n));
  std::vector<MeritMaxima> rows(lambdas.size());
  RunConfig inner = c;
  inner.workers = 1;
  numerics::parallel_for(lambdas.size(), c.workers,
                         [&](std::size_t i) { rows[i] = merit_maxima(inner, lambdas[i]); });

  CommandOutput out;
  out.data.title = "maximum eta versus signal strength lambda_s";
  out.data.notes = {kUnitsNote};
  out.data.columns = {"lambda_s", "eta_max_g", "x_max_g", "eta_max_l", "x_max_l"};
  for (const auto& m : rows) {
    out.data.add_row({m.lambda_s, m.eta_max_gaussian, m.x_max_gaussian, m.eta_max_lorentzian,
                      m.x_max_lorentzian});
  }

  // lambda_s where eta_max = 1, bisected in log lambda between the first
  // bracketing pair of scan points.
  auto crossing = [&](bool gaussian) {
    auto value = [&](const MeritMaxima& m) {
      return (gaussian ? m.eta_max_gaussian : m.eta_max_lorentzian) - 1.0;
    };
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      const double f0 = value(rows[i]), f1 = value(rows[i + 1]);
      if (f0 == 0.0) return rows[i].lambda_s;
      if ((f0 > 0.0) == (f1 > 0.0)) continue;
      double a = std::log(rows[i].lambda_s), b = std::log(rows[i + 1].lambda_s);
      double fa = f0;
      for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (a + b);
        MeritMaxima mm;
        if (gaussian) {
          mm = merit_maxima(inner, std::exp(mid));
        } else {
          const SystemParams p = params_for_lambda(inner, std::exp(mid));
          const Emitter e0 = resolve(p, 0.0);
          mm.eta_max_lorentzian =
              maximize_eta_closed(e0, signal_dressing(e0, lorentzian_sigma4(inner.disorder)),
                                  lorentzian_sigma3(inner.disorder))
                  .eta;
        }
        const double fm = value(mm);
        if ((fm > 0.0) == (fa > 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return std::exp(0.5 * (a + b));
    }
    return kNan;
  };

  const double cross_g = crossing(true);
  const double cross_l = crossing(false);
  double max_rel = 0.0;
  bool any_above = false;
  for (const auto& m : rows) {
    if (m.lambda_s < 1e-2) continue;
    any_above = true;
    max_rel = std::max(max_rel, std::abs(m.eta_max_gaussian - m.eta_max_lorentzian) /
                                    std::abs(m.eta_max_lorentzian));
  }
  const DerivedRates r = derive_rates(c.params.rates);
  const double s31 = r.gamma31_c + lorentzian_sigma3(c.disorder);

  Table s = key_value_table("merit-scan summary");
  s.notes = {kUnitsNote};
  s.add_row({std::string("lambda_cross_g"), cross_g});
  s.add_row({std::string("lambda_cross_l"), cross_l});
  s.add_row({std::string("crossing_ratio"), cross_g / cross_l});
  s.add_row({std::string("asymptote_lambda"), rows.front().lambda_s});
  s.add_row({std::string("asymptote_ratio"), rows.front().eta_max_gaussian / rows.front().eta_max_lorentzian});
  s.add_row({std::string("bound_estimate"), r.gamma21_c / s31});
  s.add_row({std::string("lorentzian_cross_over_estimate"), cross_l / (r.gamma21_c / s31)});
  s.add_row({std::string("max_rel_diff_lambda_ge_1e-2"), any_above ? max_rel : kNan});
  out.summary = std::move(s);

  out.plot.push_back({"gaussian", lambdas, out.data.numeric_column("eta_max_g")});
  out.plot.push_back({"lorentzian", lambdas, out.data.numeric_column("eta_max_l")});
  out.plot_x_label = "lambda_s";
  out.plot_y_label = "eta_max";
  return out;
}

CommandOutput run_linewidth(const RunConfig& c) {
  if (c.omega0.empty()) throw ConfigError("linewidth needs an omega0 list");
  const std::vector<double> x = numerics::linspace(-c.linewidth_span, c.linewidth_span,
                                                   static_cast<std::size_t>(c.linewidth_points));
  struct Row {
    double hom = kNan, orient = kNan;
    bool hom_ok = false, orient_ok = false;
  };
  std::vector<Row> rows(c.omega0.size());
  numerics::parallel_for(rows.size(), c.workers, [&](std::size_t i) {
    SystemParams p = c.params;
    p.fields.omega_c_rabi = c.omega0[i];
    p.fields.n_molecules = 1.0;
    std::vector<double> im_h(x.size()), im_o(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const Emitter e = resolve(p, x[k]);
      im_h[k] = chi_homogeneous(e, I0Variant::full).imag();
      im_o[k] = orientational_average(e).imag();
    }
    const double res = p.fields.delta_c;
    try {
      rows[i].hom = extract_gamma_vit(x, im_h, res).width;
      rows[i].hom_ok = true;
    } catch (const NoTransparency&) {
    }
    try {
      rows[i].orient = extract_gamma_vit(x, im_o, res).width;
      rows[i].orient_ok = true;
    } catch (const NoTransparency&) {
    }
  });

  CommandOutput out;
  out.data.title = "transparency linewidth versus Rabi amplitude";
  out.data.notes = {kUnitsNote, "gamma_vit: full width at half depth of the Im chi dip"};
  out.data.columns = {"omega0", "gamma_vit_homogeneous", "gamma_vit_orientational", "flag"};
  std::vector<double> xh, yh, xo, yo;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string flag = "ok";
    if (!rows[i].hom_ok && !rows[i].orient_ok) {
      flag = "no_transparency";
    } else if (!rows[i].hom_ok) {
      flag = "no_transparency_homogeneous";
    } else if (!rows[i].orient_ok) {
      flag = "no_transparency_orientational";
    }
    if (rows[i].hom_ok) {
      xh.push_back(c.omega0[i]);
      yh.push_back(rows[i].hom);
    }
    if (rows[i].orient_ok) {
      xo.push_back(c.omega0[i]);
      yo.push_back(rows[i].orient);
    }
    out.data.add_row({c.omega0[i], rows[i].hom, rows[i].orient, flag});
  }

  Table s = key_value_table("linewidth fits");
  auto add_fit = [&](const std::string& name, const std::vector<double>& fx, const std::vector<double>& fy) {
    s.add_row({name + "_points", static_cast<std::int64_t>(fx.size())});
    if (fx.size() >= 2) {
      const numerics::LineFit f = numerics::fit_line(fx, fy);
      s.add_row({name + "_slope", f.slope});
      s.add_row({name + "_intercept", f.intercept});
      s.add_row({name + "_r2", f.r_squared});
    } else {
      s.add_row({name + "_slope", kNan});
      s.add_row({name + "_intercept", kNan});
      s.add_row({name + "_r2", kNan});
    }
  };
  add_fit("homogeneous", xh, yh);
  add_fit("orientational", xo, yo);
  out.summary = std::move(s);

  out.plot.push_back({"homogeneous", xh, yh});
  out.plot.push_back({"orientational", xo, yo});
  out.plot_x_label = "Omega0 / gamma";
  out.plot_y_label = "Gamma_VIT / gamma";
  return out;
}

SystemParams random_draw(std::uint64_t seed, std::uint64_t index) {
  const numerics::CounterRng rng(seed);
  std::uint64_t k = 0;
  auto u = [&] { return rng.uniform(index, k++); };
  SystemParams p;
  p.rates.kappa = 10.0 * u();
  p.rates.gamma_pd = 10.0 * u();
  p.rates.gamma_ivr = 10.0 * u();
  p.rates.gamma_31 = 10.0 * u();
  p.rates.gamma_32 = 10.0 * u();
  p.fields.delta_p = -10.0 + 20.0 * u();
  p.fields.delta_c = -10.0 + 20.0 * u();
  p.fields.delta_s = -10.0 + 20.0 * u();
  p.fields.omega_c_rabi = 3.0 * u();
  p.fields.omega_s_rabi = 3.0 * u();
  p.fields.omega_p_rabi = std::pow(10.0, -4.0 + 3.0 * u());
  return p;
}

CommandOutput run_oracle_check(const RunConfig& c) {
  const bool configured = c.draws == 0;
  const std::size_t n = configured ? 1 : static_cast<std::size_t>(c.draws);
  struct Row {
    double six = 0.0, four = 0.0;
  };
  std::vector<Row> rows(n);
  numerics::parallel_for(n, c.workers, [&](std::size_t i) {
    const SystemParams p = configured ? c.params : random_draw(c.disorder.seed, i);
    try {
      const Emitter e = resolve(p);
      const cplx closed = chi_homogeneous(e, I0Variant::full);
      const double scale = std::abs(closed);
      rows[i].six = std::abs(chi_bloch(e, Closure::six_coherence) - closed) / scale;
      rows[i].four = std::abs(chi_bloch(e, Closure::four_coherence) - closed) / scale;
    } catch (const DegenerateParameters& err) {
      throw DegenerateParameters(std::string(err.what()) + "; draw " +
                                 (configured ? std::string("config") : std::to_string(i)) + ": " +
                                 to_json(p));
    }
  });

  CommandOutput out;
  out.data.title = "Bloch steady state versus closed-form susceptibility";
  out.data.notes = {"relative deviation |chi_bloch - chi_closed| / |chi_closed|",
                    "seed: " + std::to_string(c.disorder.seed)};
  out.data.columns = {"draw", "dev_six_coherence", "dev_four_coherence"};
  double max_six = 0.0, max_four = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_six = std::max(max_six, rows[i].six);
    max_four = std::max(max_four, rows[i].four);
    out.data.add_row({static_cast<std::int64_t>(i), rows[i].six, rows[i].four});
  }
  Table s = key_value_table("oracle-check summary");
  s.add_row({std::string("draws"), static_cast<std::int64_t>(n)});
  s.add_row({std::string("max_dev_six_coherence"), max_six});
  s.add_row({std::string("max_dev_four_coherence"), max_four});
  s.add_row({std::string("threshold"), kOracleThreshold});
  s.add_row({std::string("status"), std::string(max_six < kOracleThreshold ? "pass" : "fail")});
  out.summary = std::move(s);
  out.exit_code = max_six < kOracleThreshold ? kExitOk : kExitThreshold;
  out.plot_x_label = "draw";
  out.plot_y_label = "relative deviation";
  std::vector<double> idx(n), six(n);
  for (std::size_t i = 0; i < n; ++i) {
    idx[i] = static_cast<double>(i);
    six[i] = rows[i].six;
  }
  out.plot.push_back({"six coherences", idx, six});
  return out;
}

CommandOutput run_convert_units(double value, UnitDirection direction) {
  CommandOutput out;
  out.data.title = "unit conversion (E = h f)";
  out.data.columns = {"value_in", "unit_in", "value_out", "unit_out"};
  const bool to_mev = direction == UnitDirection::thz_to_mev;
  out.data.add_row({value, std::string(to_mev ? "THz" : "meV"), convert_rate_units(value, direction),
                    std::string(to_mev ? "meV" : "THz")});
  return out;
}

CommandOutput run_command(const RunConfig& c) {
  c.validate();
  switch (c.command) {
    case Command::spectrum: return run_spectrum(c);
    case Command::merit: return run_merit(c);
    case Command::merit_scan: return run_merit_scan(c);
    case Command::linewidth: return run_linewidth(c);
    case Command::oracle_check: return run_oracle_check(c);
    case Command::convert_units:
      throw ConfigError("convert-units takes --value and --from, not a config");
  }
  throw ConfigError("unknown command");
}

}  // namespace vitkerr::tools
