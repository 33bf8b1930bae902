#include "vitkerr_tools/app.hpp"

#include <chrono>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vitkerr/errors.hpp"
#include "vitkerr/merit.hpp"
#include "vitkerr_tools/commands.hpp"

namespace vitkerr::tools {

namespace {

using nlohmann::ordered_json;

struct Flags {
  std::string config_path;
  std::string recipe_name;
  std::string out_path;
  std::string format;
  std::string plot_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<int> workers;
  std::string quadrature;
  std::optional<int> draws;
  // convert-units
  double value = 0.0;
  std::string from;
};

RunConfig resolve_config(Command command, const Flags& f) {
  if (!f.config_path.empty() && !f.recipe_name.empty()) {
    throw ConfigError("--config and --recipe are mutually exclusive");
  }
  RunConfig c;
  if (!f.recipe_name.empty()) {
    c = recipe(f.recipe_name);
    if (c.command != command) {
      throw ConfigError("recipe " + f.recipe_name + " belongs to the " + std::string(to_string(c.command)) +
                        " command");
    }
  } else if (!f.config_path.empty()) {
    c = parse_run_config(read_file(f.config_path));
  }
  c.command = command;
  if (!f.out_path.empty()) c.output.path = f.out_path;
  if (!f.format.empty()) c.output.format = f.format;
  if (!f.plot_path.empty()) {
    c.plot.kind = "svg";
    c.plot.path = f.plot_path;
  }
  if (f.seed) c.disorder.seed = *f.seed;
  if (f.samples) c.disorder.n_samples = *f.samples;
  if (f.workers) c.workers = *f.workers;
  if (f.draws) c.draws = *f.draws;
  if (!f.quadrature.empty()) {
    if (f.quadrature == "off") {
      c.engine = Engine::mc;
    } else {
      try {
        std::size_t used = 0;
        const int n = std::stoi(f.quadrature, &used);
        if (used != f.quadrature.size()) throw std::invalid_argument("trailing");
        c.disorder.quadrature_nodes = n;
      } catch (const std::logic_error&) {
        throw ConfigError("--quadrature takes a node count or 'off'");
      }
      c.engine = Engine::quadrature;
    }
  }
  c.validate();
  c.params.validate();
  c.disorder.validate();
  return c;
}

std::string render(const Table& data, const std::optional<Table>& summary, const std::string& format) {
  if (format == "json") {
    ordered_json j = ordered_json::parse(to_json(data));
    if (summary) j["summary"] = ordered_json::parse(to_json(*summary));
    return j.dump(1) + "\n";
  }
  return to_csv(data);
}

std::string build_manifest(const RunConfig& c, double wall_time, const std::vector<std::string>& outputs) {
  ordered_json m;
  m["manifest_version"] = 1;
  m["config"] = ordered_json::parse(to_json(c));
  m["seed"] = c.disorder.seed;
  ordered_json versions = ordered_json::object();
  for (const auto& [k, v] : engine_versions()) versions[k] = v;
  m["engine_versions"] = versions;
  m["wall_time_s"] = wall_time;
  m["outputs"] = outputs;
  return m.dump(2) + "\n";
}

int execute(const RunConfig& c, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  CommandOutput result = run_command(c);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<std::string> outputs;
  const std::string body = render(result.data, result.summary, c.output.format);
  if (c.output.path.empty()) {
    out << body;
    if (result.summary && c.output.format == "csv") out << '\n' << to_csv(*result.summary);
  } else {
    write_file(c.output.path, body);
    outputs.push_back(c.output.path);
    if (result.summary && c.output.format == "csv") {
      write_file(summary_path(c.output.path), to_csv(*result.summary));
      outputs.push_back(summary_path(c.output.path));
    }
  }
  if (c.plot.kind == "svg") {
    const std::string title = c.recipe.empty() ? std::string(to_string(c.command)) : c.recipe;
    write_file(c.plot.path, to_svg(title, result.plot_x_label, result.plot_y_label, result.plot, c.plot.log_x));
    outputs.push_back(c.plot.path);
  }
  if (!c.output.path.empty()) {
    write_file(manifest_path(c.output.path), build_manifest(c, wall, outputs));
  }
  return result.exit_code;
}

}  // namespace

std::string manifest_path(const std::string& data_path) { return data_path + ".manifest.json"; }

std::string summary_path(const std::string& data_path) {
  const auto dot = data_path.rfind('.');
  const auto slash = data_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return data_path + ".summary.csv";
  }
  return data_path.substr(0, dot) + ".summary" + data_path.substr(dot);
}

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity-coupled photoswitch susceptibility, VIT lineshapes and cross-Kerr merit"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config_path, "JSON run configuration or manifest");
    sub->add_option("--recipe", f.recipe_name, "built-in figure recipe")
        ->check(CLI::IsMember(recipe_names()));
    sub->add_option("--out", f.out_path, "data file (default: stdout)");
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--plot", f.plot_path, "write an SVG plot to this path");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--samples", f.samples, "Monte Carlo samples per grid point");
    sub->add_option("--workers", f.workers, "worker threads");
    sub->add_option("--quadrature", f.quadrature, "Gauss-Hermite nodes per axis, or 'off' for Monte Carlo");
  };

  std::vector<std::pair<CLI::App*, Command>> subs;
  for (Command cmd : {Command::spectrum, Command::merit, Command::merit_scan, Command::linewidth,
                      Command::oracle_check}) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(cmd)));
    add_common(sub);
    subs.emplace_back(sub, cmd);
  }
  subs.back().first->add_option("--draws", f.draws, "random draws (0: check the configured parameters)");
  subs.back().first->description("compare the Bloch steady state with the closed form");
  CLI::App* convert = app.add_subcommand("convert-units", "convert THz <-> meV (E = h f)");
  convert->add_option("--value", f.value, "value to convert")->required();
  convert->add_option("--from", f.from, "unit of --value")->required()->check(CLI::IsMember({"thz", "mev"}));
  convert->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (convert->parsed()) {
      const auto dir = f.from == "thz" ? UnitDirection::thz_to_mev : UnitDirection::mev_to_thz;
      const CommandOutput r = run_convert_units(f.value, dir);
      out << render(r.data, r.summary, f.format.empty() ? "csv" : f.format);
      return kExitOk;
    }
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return execute(resolve_config(cmd, f), out);
    }
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DegenerateParameters& e) {
    err << "degenerate parameters: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const UndefinedChi& e) {
    err << "undefined susceptibility: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const TransparencyDivergence& e) {
    err << "transparency divergence: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const NoTransparency& e) {
    err << "no transparency: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vitkerr::tools
