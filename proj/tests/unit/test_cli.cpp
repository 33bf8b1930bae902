#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "vitkerr/errors.hpp"
#include "vitkerr/numerics.hpp"
#include "vitkerr_tools/app.hpp"
#include "vitkerr_tools/commands.hpp"
#include "vitkerr_tools/run_config.hpp"
#include "vitkerr_tools/table.hpp"

using namespace vitkerr;
using namespace vitkerr::tools;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run app(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_app(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vitkerr_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string value_of(const Table& t, const std::string& key) {
  for (const auto& r : t.rows) {
    if (std::get<std::string>(r[0]) == key) {
      if (const double* d = std::get_if<double>(&r[1])) return format_number(*d);
      if (const auto* i = std::get_if<std::int64_t>(&r[1])) return std::to_string(*i);
      return std::get<std::string>(r[1]);
    }
  }
  FAIL("missing key " << key);
  return {};
}

double number_of(const Table& t, const std::string& key) { return std::stod(value_of(t, key)); }

}  // namespace

TEST_CASE("numbers round-trip through the csv text") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("csv layout: # header lines, then columns") {
  Table t;
  t.title = "demo";
  t.notes = {"units: gamma"};
  t.columns = {"x", "label"};
  t.add_row({1.5, std::string("a")});
  t.add_row({static_cast<std::int64_t>(2), std::string("b")});
  CHECK(to_csv(t) == "# demo\n# units: gamma\nx,label\n1.5,a\n2,b\n");
  CHECK_THROWS_AS(t.add_row({1.0}), std::logic_error);
  CHECK_THROWS_AS(t.column_index("nope"), ConfigError);
}

TEST_CASE("every recipe survives a json round trip") {
  for (const auto& name : recipe_names()) {
    const RunConfig c = recipe(name);
    const std::string text = to_json(c);
    CHECK(to_json(parse_run_config(text)) == text);
  }
  CHECK_THROWS_AS(recipe("fig9"), ConfigError);
}

TEST_CASE("config loader is strict") {
  CHECK_THROWS_AS(parse_run_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"grid": {"x_min": 0, "x_max": 1, "n": 5}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"params": {"rates": {"kappa": -1}}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"grid": {"x_min": 1, "x_max": 0, "n_points": 5}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"grid": {"x_min": 0, "x_max": 1, "n_points": 1}})"), ConfigError);
  RunConfig c;
  c.workers = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("spectrum without disorder or coupling is a single Lorentzian of HWHM gamma31") {
  RunConfig c;
  c.params.fields.omega_c_rabi = 0.0;
  c.grid = {-2.0, 2.0, 41};
  const CommandOutput r = run_spectrum(c);
  const auto x = r.data.numeric_column("x");
  const auto im = r.data.numeric_column("im_chi");
  const auto re = r.data.numeric_column("re_chi");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] * x[i] + 0.25;
    CHECK(im[i] == doctest::Approx(0.5 / d).epsilon(1e-7));
    CHECK(re[i] == doctest::Approx(-x[i] / d).epsilon(1e-7).scale(1e-3));
  }
}

TEST_CASE("fig2c spectrum has a dip at two-photon resonance") {
  RunConfig c = recipe("fig2c");
  c.grid = {-1.0, 1.0, 41};
  const CommandOutput r = run_spectrum(c);
  const auto im = r.data.numeric_column("im_chi");
  const std::size_t mid = im.size() / 2;
  CHECK(im[mid] < im[mid - 1]);
  CHECK(im[mid] < im[mid + 1]);
}

TEST_CASE("merit without coupling gives eta = -x / 2 Sigma31 in both columns") {
  RunConfig c;
  c.command = Command::merit;
  c.params.rates.gamma_pd = 0.01;
  c.params.fields.omega_c_rabi = 0.0;
  c.disorder.family = DisorderFamily::lorentzian;
  c.disorder.sigma3 = 2.0;
  c.grid = {-3.0, 3.0, 13};
  const CommandOutput r = run_merit(c);
  const auto x = r.data.numeric_column("x");
  const auto g = r.data.numeric_column("eta_gaussian");
  const auto l = r.data.numeric_column("eta_lorentzian");
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(l[i] == doctest::Approx(-x[i] / 5.0).epsilon(1e-14).scale(1e-14));
    CHECK(g[i] == doctest::Approx(-x[i] / 5.0).epsilon(1e-12).scale(1e-14));
  }
}

TEST_CASE("merit clips large eta and flags the row") {
  RunConfig c;
  c.command = Command::merit;
  c.params.rates.gamma_pd = 0.01;
  c.params.fields.omega_c_rabi = 0.0;
  c.clip_eta = 0.1;
  c.grid = {-1.0, 1.0, 5};
  const CommandOutput r = run_merit(c);
  const auto l = r.data.numeric_column("eta_lorentzian");
  CHECK(l.front() == doctest::Approx(0.1));
  CHECK(std::get<std::string>(r.data.rows.front()[4]) == "gaussian_clipped+lorentzian_clipped");
  CHECK(std::get<std::string>(r.data.rows[2][4]) == "ok");
}

TEST_CASE("fig3a: at lambda_s = 0 the Gaussian maximum exceeds the Lorentzian one") {
  RunConfig c = recipe("fig3a");
  const MeritMaxima m = merit_maxima(c, 0.0);
  CHECK(m.eta_max_gaussian > m.eta_max_lorentzian);
  CHECK(m.x_max_gaussian > 0.0);
}

TEST_CASE("linewidth flags an unresolvable dip and converges with the grid") {
  RunConfig c = recipe("figA1b");
  c.omega0 = {1e-3, 1.0};
  CommandOutput r = run_linewidth(c);
  CHECK(std::get<std::string>(r.data.rows[0][3]) == "no_transparency");
  CHECK(std::get<std::string>(r.data.rows[1][3]) == "ok");
  CHECK(number_of(*r.summary, "homogeneous_points") == 1);

  c.omega0 = {0.5, 1.0, 2.0};
  r = run_linewidth(c);
  c.linewidth_points = 2 * c.linewidth_points - 1;
  const CommandOutput fine = run_linewidth(c);
  for (const char* col : {"gamma_vit_homogeneous", "gamma_vit_orientational"}) {
    const auto a = r.data.numeric_column(col);
    const auto b = fine.data.numeric_column(col);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) / b[i] < 0.01);
  }
}

TEST_CASE("oracle-check on an uncoupled system is exact") {
  RunConfig c;
  c.command = Command::oracle_check;
  c.draws = 0;
  c.params = fig2_params();
  c.params.fields.omega_c_rabi = 0.0;
  c.params.fields.omega_s_rabi = 0.0;
  c.params.fields.delta_p = 0.7;
  const CommandOutput r = run_oracle_check(c);
  CHECK(number_of(*r.summary, "max_dev_six_coherence") < 1e-14);
  CHECK(r.exit_code == kExitOk);
}

TEST_CASE("oracle-check names the degenerate draw") {
  RunConfig c;
  c.command = Command::oracle_check;
  c.draws = 0;
  c.params.rates = PrimitiveRates{0.0, 0.0, 0.0, 0.0, 0.0};
  c.params.fields = FieldParams{};
  try {
    run_oracle_check(c);
    FAIL("expected DegenerateParameters");
  } catch (const DegenerateParameters& e) {
    CHECK(std::string(e.what()).find("draw config") != std::string::npos);
  }
}

TEST_CASE("random draws are reproducible and cover the stated ranges") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const SystemParams a = random_draw(7, i);
    CHECK(a == random_draw(7, i));
    CHECK(a.rates.kappa >= 0.0);
    CHECK(a.rates.kappa <= 10.0);
    CHECK(std::abs(a.fields.delta_c) <= 10.0);
    CHECK(a.fields.omega_s_rabi <= 3.0);
    CHECK(a.fields.omega_p_rabi >= 1e-4);
    CHECK(a.fields.omega_p_rabi <= 1e-1);
  }
  CHECK(!(random_draw(7, 0) == random_draw(8, 0)));
}

TEST_CASE("exit codes") {
  CHECK(app({}).code == kExitConfig);
  CHECK(app({"spectrum", "--recipe", "fig9"}).code == kExitConfig);
  CHECK(app({"spectrum", "--recipe", "fig3a"}).code == kExitConfig);
  CHECK(app({"spectrum", "--config", "/nonexistent/config.json"}).code == kExitConfig);
  CHECK(app({"spectrum", "--quadrature", "many"}).code == kExitConfig);
  CHECK(app({"spectrum", "--workers", "0"}).code == kExitConfig);

  const fs::path bad = scratch("zero_rates.json");
  write_file(bad.string(), R"({"params": {"rates": {"gamma_31": 0, "gamma_32": 0}}})");
  const Run r = app({"oracle-check", "--config", bad.string(), "--draws", "0"});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("gamma") != std::string::npos);

  // No Raman or signal damping: the susceptibility is singular exactly at
  // two-photon resonance, which the 3-point grid hits.
  const fs::path deg = scratch("degenerate.json");
  write_file(deg.string(), R"({"grid": {"x_min": -1, "x_max": 1, "n_points": 3},
                               "params": {"fields": {"omega_c_rabi": 1}}})");
  CHECK(app({"spectrum", "--config", deg.string()}).code == kExitDegenerate);

  CHECK(app({"oracle-check", "--draws", "50"}).code == kExitThreshold);
}

TEST_CASE("convert-units") {
  const Run r = app({"convert-units", "--value", "1", "--from", "thz"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4.13566769") != std::string::npos);
  CHECK(app({"convert-units", "--value", "1", "--from", "ev"}).code == kExitConfig);
}

TEST_CASE("reruns are byte-identical across worker counts and via the manifest") {
  const std::string a = scratch("a.csv").string();
  const std::string b = scratch("b.csv").string();
  const std::string svg = scratch("a.svg").string();
  REQUIRE(app({"spectrum", "--recipe", "fig2a", "--samples", "2000", "--workers", "1", "--out", a,
               "--plot", svg})
              .code == 0);
  REQUIRE(app({"spectrum", "--config", manifest_path(a), "--workers", "4", "--out", b}).code == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(svg).rfind("<svg", 0) == 0);

  const std::string manifest = read_file(manifest_path(a));
  CHECK(manifest.find("\"engine_versions\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 20190923") != std::string::npos);
  CHECK(manifest.find("\"n_samples\": 2000") != std::string::npos);

  const std::string j1 = scratch("a.json").string();
  const std::string j2 = scratch("b.json").string();
  REQUIRE(app({"linewidth", "--recipe", "figA1b", "--format", "json", "--out", j1}).code == 0);
  REQUIRE(app({"linewidth", "--config", manifest_path(j1), "--workers", "3", "--out", j2}).code == 0);
  CHECK(read_file(j1) == read_file(j2));
  CHECK(read_file(j1).find("\"summary\"") != std::string::npos);
}

TEST_CASE("summary path sits next to the data file") {
  CHECK(summary_path("out/run.csv") == "out/run.summary.csv");
  CHECK(summary_path("out.d/run") == "out.d/run.summary.csv");
}
