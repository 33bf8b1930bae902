#pragma once

// Run configuration of the command-line tool and the built-in figure recipes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vitkerr/params.hpp"

namespace vitkerr::tools {

enum class Command { spectrum, merit, merit_scan, linewidth, oracle_check, convert_units };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

struct GridSpec {
  double x_min = -3.0;
  double x_max = 3.0;
  int n_points = 201;

  std::vector<double> points() const;
};

struct OutputSpec {
  std::string format = "csv";  // csv | json
  std::string path;            // empty: stdout
};

struct PlotSpec {
  std::string kind = "none";  // none | svg
  std::string path;
  std::string column;  // y column to draw; empty picks the command default
  bool log_x = false;
};

// Averaging engine: auto picks the closed form where one exists and
// quadrature for gaussian disorder.
enum class Engine { automatic, analytic, mc, quadrature };
std::string_view to_string(Engine e);
Engine parse_engine(std::string_view s);

struct ScanRange {
  double lo = 1e-4;
  double hi = 1.0;
  int n = 41;
};

struct RunConfig {
  Command command = Command::spectrum;
  std::string recipe;  // informational, set when loaded from a recipe
  SystemParams params;
  DisorderSpec disorder;
  GridSpec grid;
  OutputSpec output;
  PlotSpec plot;
  int workers = 1;
  double clip_eta = 10.0;
  Engine engine = Engine::automatic;
  // merit
  std::vector<double> lambda_s{0.0};
  // merit-scan
  ScanRange lambda_scan;
  // linewidth
  std::vector<double> omega0;
  double linewidth_span = 3.0;  // Im chi sampled on [-span, span]
  int linewidth_points = 3001;
  // oracle-check; draws = 0 checks the configured params only
  int draws = 1000;

  // Throws ConfigError on inconsistent settings.
  void validate() const;
};

// Strict JSON loader; unknown keys are rejected. A run manifest is accepted
// too (its embedded "config" is used).
RunConfig parse_run_config(std::string_view json_text);
std::string to_json(const RunConfig& c);

std::vector<std::string> recipe_names();
// Throws ConfigError for an unknown name.
RunConfig recipe(std::string_view name);

// Parameter sets behind the recipes.
SystemParams fig2_params();
// Omega_s chosen so that lambda_s = Omega_s^2 / (Delta_s^2 + Sigma41^2) with
// the FWHM-matched Lorentzian Sigma41.
SystemParams fig3_params(double lambda_s);
inline constexpr double kFig3SigmaGaussian = 5.0;
inline constexpr double kFig3DeltaS = 50.0;

// Signal Rabi frequency that realises lambda_s for the given parameters and
// Lorentzian signal width sigma4_lorentzian.
double omega_s_for_lambda(const SystemParams& p, double lambda_s, double sigma4_lorentzian);

}  // namespace vitkerr::tools
