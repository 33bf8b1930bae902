#pragma once

// The computations behind each subcommand. They are pure functions of the
// run configuration; file output and manifests are handled by the app layer.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vitkerr/params.hpp"
#include "vitkerr_tools/run_config.hpp"
#include "vitkerr_tools/table.hpp"

namespace vitkerr::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitThreshold = 4;

struct CommandOutput {
  Table data;
  std::optional<Table> summary;
  std::vector<SvgSeries> plot;
  std::string plot_x_label = "x";
  std::string plot_y_label;
  int exit_code = kExitOk;
};

CommandOutput run_spectrum(const RunConfig& c);
CommandOutput run_merit(const RunConfig& c);
CommandOutput run_merit_scan(const RunConfig& c);
CommandOutput run_linewidth(const RunConfig& c);
CommandOutput run_oracle_check(const RunConfig& c);
CommandOutput run_convert_units(double value, UnitDirection direction);

CommandOutput run_command(const RunConfig& c);

// Random parameter draw used by oracle-check: rates in [0, 10], detunings in
// [-10, 10], Rabi frequencies in [0, 3], probe in [1e-4, 1e-1] (log-uniform).
SystemParams random_draw(std::uint64_t seed, std::uint64_t index);

// Maxima of the Gaussian-averaged and the Lorentzian closed-form eta at one
// signal strength. Shared by merit, merit-scan and the acceptance suite.
struct MeritMaxima {
  double lambda_s = 0.0;
  double eta_max_gaussian = 0.0;
  double x_max_gaussian = 0.0;
  double eta_max_lorentzian = 0.0;
  double x_max_lorentzian = 0.0;
};

// Parameters with Omega_s set for lambda_s (Lorentzian signal width matched to
// the disorder family).
SystemParams params_for_lambda(const RunConfig& c, double lambda_s);
// Lorentzian widths used for the closed-form comparison (FWHM matched when the
// disorder is gaussian).
double lorentzian_sigma3(const DisorderSpec& d);
double lorentzian_sigma4(const DisorderSpec& d);

MeritMaxima merit_maxima(const RunConfig& c, double lambda_s);

}  // namespace vitkerr::tools
