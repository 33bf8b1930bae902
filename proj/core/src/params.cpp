#include "vitkerr/params.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "vitkerr/errors.hpp"

namespace vitkerr {

namespace {

using nlohmann::json;

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be a finite value >= 0");
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + "." + key + ": " + e.what());
  }
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

PrimitiveRates rates_from(const json& j) {
  check_keys(j, {"kappa", "gamma_pd", "gamma_ivr", "gamma_31", "gamma_32"}, "rates");
  PrimitiveRates r;
  read(j, "kappa", r.kappa, "rates");
  read(j, "gamma_pd", r.gamma_pd, "rates");
  read(j, "gamma_ivr", r.gamma_ivr, "rates");
  read(j, "gamma_31", r.gamma_31, "rates");
  read(j, "gamma_32", r.gamma_32, "rates");
  return r;
}

FieldParams fields_from(const json& j) {
  check_keys(j,
             {"omega_p_rabi", "omega_s_rabi", "omega_c_rabi", "n_molecules", "delta_p", "delta_c",
              "delta_s"},
             "fields");
  FieldParams f;
  read(j, "omega_p_rabi", f.omega_p_rabi, "fields");
  read(j, "omega_s_rabi", f.omega_s_rabi, "fields");
  read(j, "omega_c_rabi", f.omega_c_rabi, "fields");
  read(j, "n_molecules", f.n_molecules, "fields");
  read(j, "delta_p", f.delta_p, "fields");
  read(j, "delta_c", f.delta_c, "fields");
  read(j, "delta_s", f.delta_s, "fields");
  return f;
}

OscillatorScale scale_from(const json& j) {
  check_keys(j, {"k_scale"}, "scale");
  OscillatorScale s;
  auto it = j.find("k_scale");
  if (it != j.end()) {
    if (it->is_number()) {
      s.k_scale = cplx(it->get<double>(), 0.0);
    } else if (it->is_array() && it->size() == 2 && (*it)[0].is_number() && (*it)[1].is_number()) {
      s.k_scale = cplx((*it)[0].get<double>(), (*it)[1].get<double>());
    } else {
      throw ConfigError("scale.k_scale must be a number or [re, im]");
    }
  }
  return s;
}

DisorderSpec disorder_from(const json& j) {
  check_keys(j,
             {"family", "sigma3", "sigma4", "correlation_mode", "n_samples", "seed",
              "quadrature_nodes"},
             "disorder");
  DisorderSpec d;
  std::string family = std::string(to_string(d.family));
  std::string mode = std::string(to_string(d.correlation_mode));
  read(j, "family", family, "disorder");
  read(j, "correlation_mode", mode, "disorder");
  d.family = parse_disorder_family(family);
  d.correlation_mode = parse_correlation_mode(mode);
  read(j, "sigma3", d.sigma3, "disorder");
  read(j, "sigma4", d.sigma4, "disorder");
  read(j, "n_samples", d.n_samples, "disorder");
  read(j, "seed", d.seed, "disorder");
  read(j, "quadrature_nodes", d.quadrature_nodes, "disorder");
  return d;
}

}  // namespace

void PrimitiveRates::validate() const {
  require_nonnegative(kappa, "kappa");
  require_nonnegative(gamma_pd, "gamma_pd");
  require_nonnegative(gamma_ivr, "gamma_ivr");
  require_nonnegative(gamma_31, "gamma_31");
  require_nonnegative(gamma_32, "gamma_32");
  if (!(gamma() > 0.0)) {
    throw ConfigError("gamma = gamma_31 + gamma_32 must be > 0");
  }
}

DerivedRates derive_rates(const PrimitiveRates& p) {
  require_nonnegative(p.kappa, "kappa");
  require_nonnegative(p.gamma_pd, "gamma_pd");
  require_nonnegative(p.gamma_ivr, "gamma_ivr");
  require_nonnegative(p.gamma_31, "gamma_31");
  require_nonnegative(p.gamma_32, "gamma_32");
  DerivedRates r;
  r.gamma31_c = p.gamma_31 / 2 + p.gamma_32 / 2;
  r.gamma21_c = p.kappa / 2 + p.gamma_pd;
  r.gamma32_c = p.kappa / 2 + p.gamma_31 / 2 + p.gamma_32 / 2;
  r.gamma43_c = p.kappa / 2 + p.gamma_ivr / 2;
  // The source prints lowercase gamma_IVR here; it is the IVR rate.
  r.gamma42_c = p.kappa + p.gamma_ivr / 2;
  r.gamma41_c = r.gamma43_c;
  return r;
}

double FieldParams::effective_coupling() const { return std::sqrt(n_molecules) * omega_c_rabi; }

void FieldParams::validate() const {
  require_nonnegative(omega_p_rabi, "omega_p_rabi");
  require_nonnegative(omega_s_rabi, "omega_s_rabi");
  require_nonnegative(omega_c_rabi, "omega_c_rabi");
  if (!(n_molecules >= 1.0) || !std::isfinite(n_molecules)) {
    throw ConfigError("n_molecules must be >= 1");
  }
  for (double d : {delta_p, delta_c, delta_s}) {
    if (!std::isfinite(d)) throw ConfigError("detunings must be finite");
  }
}

TwoThreePhotonDetunings effective_detunings(const FieldParams& f) {
  const double d21 = f.delta_p - f.delta_c;
  return {d21, d21 + f.delta_s};
}

void SystemParams::validate() const {
  rates.validate();
  fields.validate();
  if (!std::isfinite(scale.k_scale.real()) || !std::isfinite(scale.k_scale.imag()) ||
      scale.k_scale == cplx(0.0, 0.0)) {
    throw ConfigError("k_scale must be finite and nonzero");
  }
}

std::string_view to_string(DisorderFamily f) {
  switch (f) {
    case DisorderFamily::none: return "none";
    case DisorderFamily::lorentzian: return "lorentzian";
    case DisorderFamily::gaussian: return "gaussian";
    case DisorderFamily::orientational: return "orientational";
  }
  return "none";
}

std::string_view to_string(CorrelationMode m) {
  return m == CorrelationMode::correlated ? "correlated" : "independent";
}

DisorderFamily parse_disorder_family(std::string_view s) {
  if (s == "none") return DisorderFamily::none;
  if (s == "lorentzian") return DisorderFamily::lorentzian;
  if (s == "gaussian") return DisorderFamily::gaussian;
  if (s == "orientational") return DisorderFamily::orientational;
  throw ConfigError("unknown disorder family '" + std::string(s) + "'");
}

CorrelationMode parse_correlation_mode(std::string_view s) {
  if (s == "correlated") return CorrelationMode::correlated;
  if (s == "independent") return CorrelationMode::independent;
  throw ConfigError("unknown correlation mode '" + std::string(s) + "'");
}

void DisorderSpec::validate() const {
  require_nonnegative(sigma3, "sigma3");
  require_nonnegative(sigma4, "sigma4");
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (quadrature_nodes < 3 || quadrature_nodes % 2 == 0) {
    throw ConfigError("quadrature_nodes must be odd and >= 3");
  }
}

Emitter resolve(const SystemParams& p) { return resolve(p, p.fields.delta_p); }

Emitter resolve(const SystemParams& p, double delta_p) {
  Emitter e;
  e.delta31 = delta_p;
  e.delta32 = p.fields.delta_c;
  e.delta42 = p.fields.delta_s;
  e.rates = derive_rates(p.rates);
  e.omega_p = p.fields.omega_p_rabi;
  e.omega_c = p.fields.effective_coupling();
  e.omega_s = p.fields.omega_s_rabi;
  e.k = p.scale.k_scale;
  return e;
}

Emitter shifted(Emitter e, double d31, double d32, double d42) {
  e.delta31 += d31;
  e.delta32 += d32;
  e.delta42 += d42;
  return e;
}

Emitter broadened(Emitter e, double sigma3, double sigma4) {
  e.rates.gamma31_c += sigma3;
  e.rates.gamma41_c += sigma4;
  return e;
}

double convert_rate_units(double value, UnitDirection direction) {
  if (!(value >= 0.0)) throw ConfigError("unit conversion expects a value >= 0");
  return direction == UnitDirection::thz_to_mev ? value * kPlanckMevPerThz
                                                : value / kPlanckMevPerThz;
}

SystemParams parse_system_params(std::string_view json_text) {
  const json j = parse_text(json_text);
  check_keys(j, {"rates", "fields", "scale"}, "params");
  SystemParams p;
  if (auto it = j.find("rates"); it != j.end()) p.rates = rates_from(*it);
  if (auto it = j.find("fields"); it != j.end()) p.fields = fields_from(*it);
  if (auto it = j.find("scale"); it != j.end()) p.scale = scale_from(*it);
  p.validate();
  return p;
}

DisorderSpec parse_disorder_spec(std::string_view json_text) {
  DisorderSpec d = disorder_from(parse_text(json_text));
  d.validate();
  return d;
}

std::string to_json(const SystemParams& p) {
  json j;
  j["rates"] = {{"kappa", p.rates.kappa},
                {"gamma_pd", p.rates.gamma_pd},
                {"gamma_ivr", p.rates.gamma_ivr},
                {"gamma_31", p.rates.gamma_31},
                {"gamma_32", p.rates.gamma_32}};
  j["fields"] = {{"omega_p_rabi", p.fields.omega_p_rabi}, {"omega_s_rabi", p.fields.omega_s_rabi},
                 {"omega_c_rabi", p.fields.omega_c_rabi}, {"n_molecules", p.fields.n_molecules},
                 {"delta_p", p.fields.delta_p},           {"delta_c", p.fields.delta_c},
                 {"delta_s", p.fields.delta_s}};
  j["scale"] = {{"k_scale", {p.scale.k_scale.real(), p.scale.k_scale.imag()}}};
  return j.dump();
}

std::string to_json(const DisorderSpec& d) {
  json j = {{"family", std::string(to_string(d.family))},
            {"sigma3", d.sigma3},
            {"sigma4", d.sigma4},
            {"correlation_mode", std::string(to_string(d.correlation_mode))},
            {"n_samples", d.n_samples},
            {"seed", d.seed},
            {"quadrature_nodes", d.quadrature_nodes}};
  return j.dump();
}

}  // namespace vitkerr
