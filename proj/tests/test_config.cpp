#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "vessel2d/config.hpp"
#include "vessel2d/driver.hpp"
#include "vessel2d/errors.hpp"

using namespace vessel2d;
using nlohmann::json;

namespace {

const std::string kCli = VESSEL2D_CLI;
const std::filesystem::path kConfigs = VESSEL2D_CONFIG_DIR;

std::filesystem::path temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("vessel2d_cfg_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_json(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2);
}

std::map<std::string, std::string> read_manifest(const std::filesystem::path& p) {
  std::map<std::string, std::string> m;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) m[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return m;
}

}  // namespace

TEST_CASE("unit conversion") {
  CHECK(unit_factor("cm", "length") == 1e-2);
  CHECK(unit_factor("mm2", "area") == doctest::Approx(1e-6));
  CHECK(unit_factor("mmHg", "pressure") == doctest::Approx(133.322387415));
  CHECK(unit_factor("deg", "angle") == doctest::Approx(kPi / 180.0));
  CHECK(unit_factor("cP", "viscosity") == doctest::Approx(1e-3));
  CHECK(unit_factor("g/cm3", "density") == doctest::Approx(1000.0));
  CHECK(unit_factor("ms", "time") == doctest::Approx(1e-3));
  CHECK_THROWS_AS(unit_factor("cm", "pressure"), ConfigError);
  CHECK_THROWS_AS(unit_factor("furlong", "length"), ConfigError);
}

TEST_CASE("quantities in plain SI or with units") {
  json a = {{"scenario", {{"preset", "horizontal_tapered"}, {"t_end", 0.02}}}};
  json b = {{"scenario", {{"preset", "horizontal_tapered"}, {"t_end", {{"value", 20}, {"unit", "ms"}}}}}};
  CHECK(parse_config(a).scenario.t_end == doctest::Approx(0.02));
  CHECK(parse_config(b).scenario.t_end == doctest::Approx(0.02));
  json c = {{"scenario", {{"preset", "horizontal_tapered"}, {"probes", {{"s", {{"values", {10, 20}}, {"unit", "cm"}}}, {"theta", {0.0}}}}}}};
  const RunConfig rc = parse_config(c);
  CHECK(rc.scenario.probes.s.at(1) == doctest::Approx(0.2));
  json d = {{"scenario", {{"preset", "horizontal_tapered"}, {"t_end", {{"value", 1}, {"unit", "cm"}}}}}};
  CHECK_THROWS_AS(parse_config(d), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(parse_config(json{{"scenari", json::object()}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"scenario", {{"preset", "horizontal_tapered"}}}, {"numerics", {{"cfl", 0.2}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"scenario", {{"grid", {{"ns", 10}}}}}}), ConfigError);
}

TEST_CASE("invalid numerics are rejected") {
  const json doc = {{"scenario", {{"preset", "horizontal_tapered"}}}, {"numerics", {{"cfl_fraction", 0.9}}}};
  const RunConfig c = parse_config(doc);
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("serialization round trip") {
  for (const auto& name : preset_names()) {
    const RunConfig c = default_run_config(name);
    const json j = to_json(c);
    const RunConfig back = parse_config(j);
    CHECK(to_json(back) == j);
    CHECK(back.scenario.grid.n_s == c.scenario.grid.n_s);
    CHECK(back.scenario.t_end == c.scenario.t_end);
    CHECK(back.scenario.has_inlet == c.scenario.has_inlet);
    if (c.scenario.has_inlet) {
      for (double t : {0.0, 0.13, 0.5}) CHECK(back.scenario.inlet(t) == doctest::Approx(c.scenario.inlet(t)).epsilon(1e-15));
    }
  }
  TabulatedGeometry t;
  t.s = {0.0, 0.1, 0.3};
  t.alpha = {0.0, 0.2, 0.2};
  t.r_o = {0.01, 0.011, 0.009};
  t.g_o = {4e4, 5e4, 6e4};
  RunConfig c = default_run_config("horizontal_tapered");
  c.scenario.has_table = true;
  c.scenario.table = t;
  c.scenario.grid.s_length = 0.3;
  c.scenario.perturbation.s_center = 0.15;
  const RunConfig back = parse_config(to_json(c));
  CHECK(back.scenario.has_table);
  CHECK(back.scenario.table.r_o == t.r_o);
  CHECK_NOTHROW(back.validate());
}

TEST_CASE("shipped configurations load and validate") {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(kConfigs)) {
    if (e.path().extension() != ".json" || e.path().filename() == "schema.json") continue;
    CAPTURE(e.path().string());
    const RunConfig c = load_config(e.path());
    CHECK_NOTHROW(c.validate());
    CHECK(to_json(parse_config(to_json(c))) == to_json(c));
    ++n;
  }
  CHECK(n >= 4);
}

TEST_CASE("command line exit codes") {
  const auto dir = temp_dir("cli");
  CHECK(run_cli("validate --config \"" + (kConfigs / "aorta_base.json").string() + "\"") == 0);
  CHECK(run_cli("validate --config \"" + (dir / "missing.json").string() + "\"") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("--help") == 0);

  write_json(dir / "bad_cfl.json", {{"scenario", {{"preset", "horizontal_tapered"}}}, {"numerics", {{"cfl_fraction", 0.9}}}});
  CHECK(run_cli("validate --config \"" + (dir / "bad_cfl.json").string() + "\"") == 1);
  CHECK(run_cli("run --config \"" + (dir / "bad_cfl.json").string() + "\" --out \"" + (dir / "o1").string() + "\"") == 1);

  // Overflowing initial data fails inside the time loop.
  json blow = {{"scenario",
                {{"preset", "horizontal_tapered"},
                 {"grid", {{"n_s", 20}, {"n_theta", 8}}},
                 {"initial", {{"kind", "radius_perturbation"}, {"amplitude", 1e200}}},
                 {"max_steps", 5}}},
               {"output", {{"probe_every", 0}, {"final_snapshot", false}}}};
  write_json(dir / "blow.json", blow);
  CHECK(run_cli("run --config \"" + (dir / "blow.json").string() + "\" --out \"" + (dir / "o2").string() + "\"") == 2);

  CHECK(run_cli("hyperbolicity-report --out \"" + (dir / "h.csv").string() + "\"") == 0);
  std::ifstream h(dir / "h.csv");
  std::string line;
  std::getline(h, line);
  std::getline(h, line);
  CHECK(line == "gamma,u,omega,upsilon1,upsilon2,real_speeds,min_discriminant,min_discriminant_sign");
}

TEST_CASE("rest run through the command line keeps the state bit-identical") {
  const auto dir = temp_dir("rest");
  REQUIRE(run_cli("run --config \"" + (kConfigs / "rest_horizontal.json").string() + "\" --out \"" + (dir / "a").string() + "\"") == 0);
  REQUIRE(run_cli("run --config \"" + (kConfigs / "rest_horizontal.json").string() + "\" --out \"" + (dir / "b").string() + "\" --threads 2") == 0);
  const auto ma = read_manifest(dir / "a" / "manifest.txt");
  const auto mb = read_manifest(dir / "b" / "manifest.txt");
  CHECK(ma.at("steps") == "100");
  CHECK(ma.at("final_state_hash") == ma.at("initial_state_hash"));
  CHECK(ma.at("final_state_hash") == mb.at("final_state_hash"));
  CHECK(std::filesystem::exists(dir / "a" / "probes.csv"));
  CHECK(std::filesystem::exists(dir / "a" / "config.json"));
  CHECK(std::filesystem::exists(dir / "a" / "surface_0000.vtk"));
  // Data files do not depend on the worker count.
  for (const char* f : {"probes.csv", "surface_0000.vtk"}) {
    std::ifstream x(dir / "a" / f), y(dir / "b" / f);
    std::stringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    CHECK(sx.str() == sy.str());
  }
  // The echoed configuration reproduces the run.
  REQUIRE(run_cli("run --config \"" + (dir / "a" / "config.json").string() + "\" --out \"" + (dir / "c").string() + "\"") == 0);
  CHECK(read_manifest(dir / "c" / "manifest.txt").at("final_state_hash") == ma.at("final_state_hash"));
}

TEST_CASE("short perturbed runs are deterministic") {
  RunConfig c = default_run_config("horizontal_tapered");
  c.scenario.grid.n_s = 40;
  c.scenario.grid.n_theta = 18;
  c.scenario.max_steps = 20;
  c.output = OutputPlan{};
  c.output.probe_every = 0;
  c.output.final_snapshot = false;
  Simulation a(c);
  const RunSummary ra = a.run(nullptr, nullptr);
  c.threads = 2;
  Simulation b(c);
  const RunSummary rb = b.run(nullptr, nullptr);
  CHECK(ra.steps == 20);
  CHECK(ra.final_hash == rb.final_hash);
  CHECK(ra.final_hash != ra.initial_hash);
}
