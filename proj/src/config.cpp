#include "vessel2d/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "vessel2d/errors.hpp"

namespace vessel2d {

using nlohmann::json;

namespace {

struct UnitEntry {
  const char* kind;
  double factor;
};

const std::map<std::string, UnitEntry>& unit_table() {
  static const std::map<std::string, UnitEntry> table{
      {"m", {"length", 1.0}},
      {"cm", {"length", 1e-2}},
      {"mm", {"length", 1e-3}},
      {"m2", {"area", 1.0}},
      {"cm2", {"area", 1e-4}},
      {"mm2", {"area", 1e-6}},
      {"Pa", {"pressure", 1.0}},
      {"kPa", {"pressure", 1e3}},
      {"mmHg", {"pressure", 133.322387415}},
      {"dyn/cm2", {"pressure", 0.1}},
      {"s", {"time", 1.0}},
      {"ms", {"time", 1e-3}},
      {"rad", {"angle", 1.0}},
      {"deg", {"angle", kPi / 180.0}},
      {"m/s", {"velocity", 1.0}},
      {"cm/s", {"velocity", 1e-2}},
      {"kg/m3", {"density", 1.0}},
      {"g/cm3", {"density", 1e3}},
      {"Pa s", {"viscosity", 1.0}},
      {"cP", {"viscosity", 1e-3}},
      {"P", {"viscosity", 0.1}},
      {"m/s2", {"acceleration", 1.0}},
      {"1", {"dimensionless", 1.0}},
  };
  return table;
}

const char* si_unit(const std::string& kind) {
  if (kind == "length") return "m";
  if (kind == "area") return "m2";
  if (kind == "pressure") return "Pa";
  if (kind == "time") return "s";
  if (kind == "angle") return "rad";
  if (kind == "velocity") return "m/s";
  if (kind == "density") return "kg/m3";
  if (kind == "viscosity") return "Pa s";
  if (kind == "acceleration") return "m/s2";
  return "1";
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double quantity(const json& v, const std::string& kind, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object()) {
    check_keys(v, {"value", "unit"}, where);
    if (!v.contains("value") || !v.at("value").is_number()) throw ConfigError(where + ": missing numeric 'value'");
    const std::string unit = v.contains("unit") ? v.at("unit").get<std::string>() : si_unit(kind);
    return v.at("value").get<double>() * unit_factor(unit, kind);
  }
  throw ConfigError(where + ": expected a number or {\"value\", \"unit\"}");
}

double opt_quantity(const json& obj, const char* key, const std::string& kind, double fallback,
                    const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return quantity(obj.at(key), kind, where + "." + key);
}

std::vector<double> quantity_list(const json& v, const std::string& kind, const std::string& where) {
  std::vector<double> out;
  if (v.is_object()) {
    check_keys(v, {"values", "unit"}, where);
    const double f = unit_factor(v.value("unit", std::string(si_unit(kind))), kind);
    for (const auto& x : v.at("values")) {
      if (!x.is_number()) throw ConfigError(where + ": non-numeric entry");
      out.push_back(x.get<double>() * f);
    }
    return out;
  }
  if (!v.is_array()) throw ConfigError(where + ": expected a list");
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(quantity(v[i], kind, where + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T>
T plain(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

json tagged(double v, const std::string& kind) { return json{{"value", v}, {"unit", si_unit(kind)}}; }

json tagged_list(const std::vector<double>& v, const std::string& kind) {
  return json{{"values", v}, {"unit", si_unit(kind)}};
}

void parse_scenario(const json& s, ScenarioConfig& c) {
  const std::string w = "scenario";
  check_keys(s, {"preset", "geometry_table", "grid", "constants", "preset_options", "boundary", "inlet", "initial",
                 "probes", "t_end", "max_steps"},
             w);
  if (s.contains("preset")) c.preset = s.at("preset").get<std::string>();
  if (s.contains("geometry_table")) {
    const json& t = s.at("geometry_table");
    check_keys(t, {"s", "alpha", "r_o", "g_o", "xi"}, w + ".geometry_table");
    c.has_table = true;
    c.table.s = quantity_list(t.at("s"), "length", w + ".geometry_table.s");
    c.table.alpha = quantity_list(t.at("alpha"), "angle", w + ".geometry_table.alpha");
    c.table.r_o = quantity_list(t.at("r_o"), "length", w + ".geometry_table.r_o");
    c.table.g_o = quantity_list(t.at("g_o"), "pressure", w + ".geometry_table.g_o");
    c.table.xi = plain<double>(t, "xi", 0.0, w + ".geometry_table");
  }
  if (s.contains("grid")) {
    const json& g = s.at("grid");
    check_keys(g, {"n_s", "n_theta", "s_length"}, w + ".grid");
    c.grid.n_s = plain<int>(g, "n_s", c.grid.n_s, w + ".grid");
    c.grid.n_theta = plain<int>(g, "n_theta", c.grid.n_theta, w + ".grid");
    c.grid.s_length = opt_quantity(g, "s_length", "length", c.grid.s_length, w + ".grid");
  }
  if (s.contains("constants")) {
    const json& k = s.at("constants");
    const std::string wk = w + ".constants";
    check_keys(k, {"rho", "nu", "g", "beta", "gamma_s", "gamma_theta"}, wk);
    auto& pc = c.constants;
    pc.rho = opt_quantity(k, "rho", "density", pc.rho, wk);
    pc.nu = opt_quantity(k, "nu", "viscosity", pc.nu, wk);
    pc.g = opt_quantity(k, "g", "acceleration", pc.g, wk);
    pc.beta = plain<double>(k, "beta", pc.beta, wk);
    pc.gamma_s = plain<double>(k, "gamma_s", pc.gamma_s, wk);
    pc.gamma_theta = plain<double>(k, "gamma_theta", pc.gamma_theta, wk);
  }
  c.preset_options.rho = c.constants.rho;
  if (s.contains("preset_options")) {
    const json& o = s.at("preset_options");
    check_keys(o, {"xi", "horizontal_wave_speed"}, w + ".preset_options");
    c.preset_options.xi = plain<double>(o, "xi", c.preset_options.xi, w + ".preset_options");
    c.preset_options.horizontal_wave_speed = opt_quantity(o, "horizontal_wave_speed", "velocity",
                                                          c.preset_options.horizontal_wave_speed, w + ".preset_options");
  }
  if (s.contains("boundary")) {
    const json& b = s.at("boundary");
    check_keys(b, {"left", "right"}, w + ".boundary");
    if (b.contains("left")) c.bc_left = parse_boundary_kind(b.at("left").get<std::string>());
    if (b.contains("right")) c.bc_right = parse_boundary_kind(b.at("right").get<std::string>());
  }
  if (s.contains("inlet")) {
    const json& in = s.at("inlet");
    const std::string wi = w + ".inlet";
    if (in.is_null()) {
      c.has_inlet = false;
    } else {
      check_keys(in, {"kind", "period", "a", "b", "values", "terms"}, wi);
      const std::string kind = plain<std::string>(in, "kind", "fourier", wi);
      const double period = opt_quantity(in, "period", "time", 1.0, wi);
      c.has_inlet = true;
      if (kind == "default_pulse") {
        c.inlet = default_inlet_pulse(period);
      } else if (kind == "fourier") {
        c.inlet.period = period;
        c.inlet.a = in.contains("a") ? quantity_list(in.at("a"), "velocity", wi + ".a") : std::vector<double>{};
        c.inlet.b = in.contains("b") ? quantity_list(in.at("b"), "velocity", wi + ".b") : std::vector<double>{};
      } else if (kind == "samples") {
        if (!in.contains("values")) throw ConfigError(wi + ": sample table needs 'values'");
        const auto values = quantity_list(in.at("values"), "velocity", wi + ".values");
        c.inlet = fourier_from_samples(values, period, plain<int>(in, "terms", 15, wi));
      } else {
        throw ConfigError(wi + ": unknown waveform kind '" + kind + "'");
      }
    }
  }
  if (s.contains("initial")) {
    const json& i = s.at("initial");
    const std::string wi = w + ".initial";
    check_keys(i, {"kind", "s_center", "theta_center", "amplitude", "x_weight", "width"}, wi);
    c.initial = parse_initial_kind(plain<std::string>(i, "kind", "rest", wi));
    auto& p = c.perturbation;
    p.s_center = opt_quantity(i, "s_center", "length", p.s_center, wi);
    p.theta_center = opt_quantity(i, "theta_center", "angle", p.theta_center, wi);
    p.amplitude = plain<double>(i, "amplitude", p.amplitude, wi);
    p.x_weight = plain<double>(i, "x_weight", p.x_weight, wi);
    p.width = opt_quantity(i, "width", "length", p.width, wi);
  }
  if (s.contains("probes")) {
    const json& p = s.at("probes");
    check_keys(p, {"s", "theta"}, w + ".probes");
    if (p.contains("s")) c.probes.s = quantity_list(p.at("s"), "length", w + ".probes.s");
    if (p.contains("theta")) c.probes.theta = quantity_list(p.at("theta"), "angle", w + ".probes.theta");
  }
  c.t_end = opt_quantity(s, "t_end", "time", c.t_end, w);
  c.max_steps = plain<long>(s, "max_steps", c.max_steps, w);
}

}  // namespace

double unit_factor(const std::string& unit, const std::string& kind) {
  const auto& t = unit_table();
  const auto it = t.find(unit);
  if (it == t.end()) throw ConfigError("unknown unit '" + unit + "'");
  if (kind != it->second.kind) {
    throw ConfigError("unit '" + unit + "' is a " + it->second.kind + " unit, expected " + kind);
  }
  return it->second.factor;
}

void RunConfig::validate() const {
  scenario.validate();
  numerics.validate();
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (output.probe_every < 0 || output.snapshot_every < 0) throw ConfigError("output cadences must be non-negative");
  if (!(output.probe_interval >= 0.0)) throw ConfigError("probe_interval must be non-negative");
  for (double t : output.snapshot_times) {
    if (!(t >= 0.0 && t <= scenario.t_end)) throw ConfigError("snapshot time outside [0, t_end]");
  }
  try {
    const VesselGeometry geo = build_geometry(scenario);
    (void)geo;
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("invalid geometry: ") + e.what());
  }
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, {"scenario", "numerics", "output", "threads"}, "config");
  if (!doc.contains("scenario")) throw ConfigError("config: missing 'scenario'");
  const json& s = doc.at("scenario");
  if (!s.is_object() || !s.contains("preset")) throw ConfigError("scenario: missing 'preset'");

  RunConfig c;
  try {
    c.scenario = default_scenario(s.at("preset").get<std::string>());
  } catch (const json::exception&) {
    throw ConfigError("scenario.preset must be a string");
  }
  try {
    parse_scenario(s, c.scenario);

    if (doc.contains("numerics")) {
      const json& n = doc.at("numerics");
      check_keys(n, {"phi", "cfl_fraction", "positivity_mode", "A_th", "dt_max"}, "numerics");
      c.numerics.phi = plain<double>(n, "phi", c.numerics.phi, "numerics");
      c.numerics.cfl = plain<double>(n, "cfl_fraction", c.numerics.cfl, "numerics");
      c.numerics.positivity = plain<bool>(n, "positivity_mode", c.numerics.positivity, "numerics");
      c.numerics.a_threshold = opt_quantity(n, "A_th", "area", c.numerics.a_threshold, "numerics");
      c.numerics.dt_max = opt_quantity(n, "dt_max", "time", c.numerics.dt_max, "numerics");
    }
    if (doc.contains("output")) {
      const json& o = doc.at("output");
      check_keys(o, {"probe_every", "probe_interval", "snapshot_times", "snapshot_every", "final_snapshot"}, "output");
      c.output.probe_every = plain<long>(o, "probe_every", c.output.probe_every, "output");
      c.output.probe_interval = opt_quantity(o, "probe_interval", "time", c.output.probe_interval, "output");
      if (o.contains("snapshot_times")) {
        c.output.snapshot_times = quantity_list(o.at("snapshot_times"), "time", "output.snapshot_times");
      }
      c.output.snapshot_every = plain<long>(o, "snapshot_every", c.output.snapshot_every, "output");
      c.output.final_snapshot = plain<bool>(o, "final_snapshot", c.output.final_snapshot, "output");
    }
    c.threads = plain<int>(doc, "threads", c.threads, "config");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  const ScenarioConfig& s = c.scenario;
  json sc;
  sc["preset"] = s.preset;
  if (s.has_table) {
    sc["geometry_table"] = json{{"s", tagged_list(s.table.s, "length")},
                                {"alpha", tagged_list(s.table.alpha, "angle")},
                                {"r_o", tagged_list(s.table.r_o, "length")},
                                {"g_o", tagged_list(s.table.g_o, "pressure")},
                                {"xi", s.table.xi}};
  }
  sc["grid"] = json{{"n_s", s.grid.n_s}, {"n_theta", s.grid.n_theta}, {"s_length", tagged(s.grid.s_length, "length")}};
  sc["constants"] = json{{"rho", tagged(s.constants.rho, "density")},
                         {"nu", tagged(s.constants.nu, "viscosity")},
                         {"g", tagged(s.constants.g, "acceleration")},
                         {"beta", s.constants.beta},
                         {"gamma_s", s.constants.gamma_s},
                         {"gamma_theta", s.constants.gamma_theta}};
  sc["preset_options"] = json{{"xi", s.preset_options.xi},
                              {"horizontal_wave_speed", tagged(s.preset_options.horizontal_wave_speed, "velocity")}};
  sc["boundary"] = json{{"left", to_string(s.bc_left)}, {"right", to_string(s.bc_right)}};
  if (s.has_inlet) {
    sc["inlet"] = json{{"kind", "fourier"},
                       {"period", tagged(s.inlet.period, "time")},
                       {"a", tagged_list(s.inlet.a, "velocity")},
                       {"b", tagged_list(s.inlet.b, "velocity")}};
  } else {
    sc["inlet"] = nullptr;
  }
  sc["initial"] = json{{"kind", to_string(s.initial)},
                       {"s_center", tagged(s.perturbation.s_center, "length")},
                       {"theta_center", tagged(s.perturbation.theta_center, "angle")},
                       {"amplitude", s.perturbation.amplitude},
                       {"x_weight", s.perturbation.x_weight},
                       {"width", tagged(s.perturbation.width, "length")}};
  sc["probes"] = json{{"s", tagged_list(s.probes.s, "length")}, {"theta", tagged_list(s.probes.theta, "angle")}};
  sc["t_end"] = tagged(s.t_end, "time");
  sc["max_steps"] = s.max_steps;

  json doc;
  doc["scenario"] = sc;
  doc["numerics"] = json{{"phi", c.numerics.phi},
                         {"cfl_fraction", c.numerics.cfl},
                         {"positivity_mode", c.numerics.positivity},
                         {"A_th", tagged(c.numerics.a_threshold, "area")},
                         {"dt_max", tagged(c.numerics.dt_max, "time")}};
  doc["output"] = json{{"probe_every", c.output.probe_every},
                       {"probe_interval", tagged(c.output.probe_interval, "time")},
                       {"snapshot_times", tagged_list(c.output.snapshot_times, "time")},
                       {"snapshot_every", c.output.snapshot_every},
                       {"final_snapshot", c.output.final_snapshot}};
  doc["threads"] = c.threads;
  return doc;
}

RunConfig default_run_config(const std::string& preset) {
  RunConfig c;
  c.scenario = default_scenario(preset);
  c.scenario.preset_options.rho = c.scenario.constants.rho;
  c.output.probe_every = 0;
  if (preset == "horizontal_tapered") {
    c.output.probe_interval = 1e-4;
    c.output.snapshot_times = {0.0, 0.0005, 0.001, 0.0045, 0.005, 0.1};
    return c;
  }
  c.output.probe_interval = 1e-3;
  if (preset == "aorta_base") {
    c.output.snapshot_times = {0.2, 0.3};
  } else {
    c.output.snapshot_times = {0.2, 0.4};
  }
  return c;
}

}  // namespace vessel2d
