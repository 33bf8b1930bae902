#include "vitkerr_tools/run_config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "vitkerr/disorder.hpp"
#include "vitkerr/errors.hpp"
#include "vitkerr/numerics.hpp"

namespace vitkerr::tools {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::merit: return "merit";
    case Command::merit_scan: return "merit-scan";
    case Command::linewidth: return "linewidth";
    case Command::oracle_check: return "oracle-check";
    case Command::convert_units: return "convert-units";
  }
  return "spectrum";
}

Command parse_command(std::string_view s) {
  for (Command c : {Command::spectrum, Command::merit, Command::merit_scan, Command::linewidth,
                    Command::oracle_check, Command::convert_units}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown command '" + std::string(s) + "'");
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::automatic: return "auto";
    case Engine::analytic: return "analytic";
    case Engine::mc: return "mc";
    case Engine::quadrature: return "quadrature";
  }
  return "auto";
}

Engine parse_engine(std::string_view s) {
  for (Engine e : {Engine::automatic, Engine::analytic, Engine::mc, Engine::quadrature}) {
    if (to_string(e) == s) return e;
  }
  throw ConfigError("unknown engine '" + std::string(s) + "'");
}

std::vector<double> GridSpec::points() const {
  if (n_points < 2 || !(x_min < x_max)) {
    throw ConfigError("grid needs n_points >= 2 and x_min < x_max");
  }
  return numerics::linspace(x_min, x_max, static_cast<std::size_t>(n_points));
}

void RunConfig::validate() const {
  params.validate();
  disorder.validate();
  (void)grid.points();
  if (output.format != "csv" && output.format != "json") {
    throw ConfigError("output.format must be csv or json");
  }
  if (plot.kind != "none" && plot.kind != "svg") throw ConfigError("plot.kind must be none or svg");
  if (plot.kind == "svg" && plot.path.empty()) throw ConfigError("plot.path is required for svg plots");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(clip_eta > 0.0)) throw ConfigError("clip_eta must be > 0");
  for (double l : lambda_s) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("lambda_s values must be >= 0");
  }
  if (!(lambda_scan.lo > 0.0) || !(lambda_scan.lo < lambda_scan.hi) || lambda_scan.n < 2) {
    throw ConfigError("lambda_scan needs 0 < lo < hi and n >= 2");
  }
  for (double o : omega0) {
    if (!(o > 0.0)) throw ConfigError("omega0 values must be > 0");
  }
  if (!(linewidth_span > 0.0) || linewidth_points < 3) {
    throw ConfigError("linewidth_span must be > 0 and linewidth_points >= 3");
  }
  if (draws < 0) throw ConfigError("draws must be >= 0");
}

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("manifest_version")) {
    if (!j.contains("config")) throw ConfigError("manifest has no config");
    j = j["config"];
  }
  check_keys(j,
             {"command", "recipe", "params", "disorder", "grid", "output", "plot", "workers",
              "clip_eta", "engine", "lambda_s", "lambda_scan", "omega0", "linewidth_span",
              "linewidth_points", "draws"},
             "config");
  RunConfig c;
  std::string s;
  if (j.contains("command")) {
    read(j, "command", s, "config");
    c.command = parse_command(s);
  }
  read(j, "recipe", c.recipe, "config");
  if (j.contains("params")) c.params = parse_system_params(j["params"].dump());
  if (j.contains("disorder")) c.disorder = parse_disorder_spec(j["disorder"].dump());
  if (auto it = j.find("grid"); it != j.end()) {
    check_keys(*it, {"x_min", "x_max", "n_points"}, "grid");
    read(*it, "x_min", c.grid.x_min, "grid");
    read(*it, "x_max", c.grid.x_max, "grid");
    read(*it, "n_points", c.grid.n_points, "grid");
  }
  if (auto it = j.find("output"); it != j.end()) {
    check_keys(*it, {"format", "path"}, "output");
    read(*it, "format", c.output.format, "output");
    read(*it, "path", c.output.path, "output");
  }
  if (auto it = j.find("plot"); it != j.end()) {
    check_keys(*it, {"kind", "path", "column", "log_x"}, "plot");
    read(*it, "kind", c.plot.kind, "plot");
    read(*it, "path", c.plot.path, "plot");
    read(*it, "column", c.plot.column, "plot");
    read(*it, "log_x", c.plot.log_x, "plot");
  }
  read(j, "workers", c.workers, "config");
  read(j, "clip_eta", c.clip_eta, "config");
  if (j.contains("engine")) {
    read(j, "engine", s, "config");
    c.engine = parse_engine(s);
  }
  read(j, "lambda_s", c.lambda_s, "config");
  if (auto it = j.find("lambda_scan"); it != j.end()) {
    check_keys(*it, {"lo", "hi", "n"}, "lambda_scan");
    read(*it, "lo", c.lambda_scan.lo, "lambda_scan");
    read(*it, "hi", c.lambda_scan.hi, "lambda_scan");
    read(*it, "n", c.lambda_scan.n, "lambda_scan");
  }
  read(j, "omega0", c.omega0, "config");
  read(j, "linewidth_span", c.linewidth_span, "config");
  read(j, "linewidth_points", c.linewidth_points, "config");
  read(j, "draws", c.draws, "config");
  c.validate();
  return c;
}

std::string to_json(const RunConfig& c) {
  json j;
  j["command"] = std::string(to_string(c.command));
  j["recipe"] = c.recipe;
  j["params"] = json::parse(vitkerr::to_json(c.params));
  j["disorder"] = json::parse(vitkerr::to_json(c.disorder));
  j["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n_points", c.grid.n_points}};
  j["output"] = {{"format", c.output.format}, {"path", c.output.path}};
  j["plot"] = {{"kind", c.plot.kind}, {"path", c.plot.path}, {"column", c.plot.column}, {"log_x", c.plot.log_x}};
  j["workers"] = c.workers;
  j["clip_eta"] = c.clip_eta;
  j["engine"] = std::string(to_string(c.engine));
  j["lambda_s"] = c.lambda_s;
  j["lambda_scan"] = {{"lo", c.lambda_scan.lo}, {"hi", c.lambda_scan.hi}, {"n", c.lambda_scan.n}};
  j["omega0"] = c.omega0;
  j["linewidth_span"] = c.linewidth_span;
  j["linewidth_points"] = c.linewidth_points;
  j["draws"] = c.draws;
  return j.dump(2);
}

SystemParams fig2_params() {
  SystemParams p;
  p.rates.kappa = 1e-4;
  p.rates.gamma_pd = 0.01;
  p.rates.gamma_ivr = 10.0;
  p.rates.gamma_31 = 0.5;
  p.rates.gamma_32 = 0.5;
  p.fields.omega_p_rabi = 1e-4;
  p.fields.omega_c_rabi = 1.2;
  return p;
}

double omega_s_for_lambda(const SystemParams& p, double lambda_s, double sigma4_lorentzian) {
  const double s41 = derive_rates(p.rates).gamma41_c + sigma4_lorentzian;
  const double ds = p.fields.delta_s;
  return std::sqrt(lambda_s * (ds * ds + s41 * s41));
}

SystemParams fig3_params(double lambda_s) {
  SystemParams p;
  p.rates.kappa = 1e-4;
  // gamma21 = kappa/2 + Gamma_pd = 0.002
  p.rates.gamma_pd = 0.002 - 0.5e-4;
  p.rates.gamma_ivr = 10.0;
  p.fields.omega_p_rabi = 1e-4;
  p.fields.omega_c_rabi = 0.8;
  p.fields.delta_s = kFig3DeltaS;
  p.fields.omega_s_rabi = omega_s_for_lambda(p, lambda_s, match_fwhm(kFig3SigmaGaussian));
  return p;
}

std::vector<std::string> recipe_names() {
  return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "figA1a", "figA1b"};
}

RunConfig recipe(std::string_view name) {
  RunConfig c;
  c.recipe = std::string(name);
  if (name == "fig2a" || name == "fig2b") {
    c.command = Command::spectrum;
    c.params = fig2_params();
    c.disorder.family = DisorderFamily::orientational;
    c.engine = Engine::mc;
    c.plot.column = name == "fig2a" ? "im_chi" : "re_chi";
  } else if (name == "fig2c" || name == "fig2d") {
    c.command = Command::spectrum;
    c.params = fig2_params();
    c.disorder.family = DisorderFamily::gaussian;
    c.disorder.sigma3 = 6.0;
    c.engine = Engine::quadrature;
    c.plot.column = name == "fig2c" ? "im_chi" : "re_chi";
  } else if (name == "figA1a") {
    c.command = Command::spectrum;
    c.params = fig2_params();
    c.disorder.family = DisorderFamily::orientational;
    c.engine = Engine::analytic;
    c.plot.column = "im_chi";
  } else if (name == "figA1b") {
    c.command = Command::linewidth;
    c.params = fig2_params();
    c.disorder.family = DisorderFamily::orientational;
    c.omega0 = numerics::linspace(0.5, 2.0, 16);
  } else if (name == "fig3a" || name == "fig3b") {
    c.command = name == "fig3a" ? Command::merit : Command::merit_scan;
    c.params = fig3_params(0.0);
    c.disorder.family = DisorderFamily::gaussian;
    c.disorder.sigma3 = kFig3SigmaGaussian;
    c.disorder.sigma4 = kFig3SigmaGaussian;
    c.engine = Engine::quadrature;
    c.grid = {-0.1, 0.1, 201};
    c.lambda_s = {0.0, 0.5, 1.0};
    c.plot.column = "eta_gaussian";
    c.plot.log_x = name == "fig3b";
  } else {
    throw ConfigError("unknown recipe '" + std::string(name) + "'");
  }
  return c;
}

}  // namespace vitkerr::tools
