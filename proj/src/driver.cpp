#include "vessel2d/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "vessel2d/errors.hpp"

namespace vessel2d {

const char* version_string() { return "vessel2d 1.0.0"; }

Simulation::Simulation(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  const ScenarioConfig& sc = config_.scenario;
  geometry_ = std::make_unique<VesselGeometry>(build_geometry(sc));

  BoundaryConditions bc;
  bc.left = sc.bc_left;
  bc.right = sc.bc_right;
  if (sc.has_inlet) bc.inlet_velocity = sc.inlet;
  solver_ = std::make_unique<Solver>(*geometry_, sc.constants, config_.numerics, bc);
  solver_->set_threads(config_.threads);
  diagnostics_ = std::make_unique<Diagnostics>(*geometry_, sc.constants, solver_->a_threshold());

  field_ = initial_condition(sc, *geometry_);
  if (sc.bc_left == BoundaryKind::fixed || sc.bc_right == BoundaryKind::fixed) solver_->set_fixed_state(field_);
  solver_->apply_boundaries(field_);
}

bool Simulation::done() const {
  const long cap = config_.scenario.max_steps;
  return field_.time >= config_.scenario.t_end || (cap > 0 && steps_ >= cap);
}

StepInfo Simulation::step(double t_stop) {
  const StepInfo info = solver_->step(field_, std::min(t_stop, config_.scenario.t_end));
  ++steps_;
  return info;
}

namespace {

struct FieldStats {
  double min_area = std::numeric_limits<double>::infinity();
  double min_p = std::numeric_limits<double>::infinity();
  double max_p = -std::numeric_limits<double>::infinity();
};

FieldStats field_stats(const ConservedField& f, const VesselGeometry& geo, double beta) {
  FieldStats s;
  const GridSpec& g = geo.grid();
  for (int j = 0; j < g.n_s; ++j) {
    for (int k = 0; k < g.n_theta; ++k) {
      const CellSample& c = geo.cell(j, k);
      const double a = f.A(j, k);
      s.min_area = std::min(s.min_area, a);
      const double ratio = beta == 2.0 ? a / c.a_o : std::pow(std::max(a, 0.0) / c.a_o, 0.5 * beta);
      const double p = c.g_o * (ratio - 1.0);
      s.min_p = std::min(s.min_p, p);
      s.max_p = std::max(s.max_p, p);
    }
  }
  return s;
}

bool reached(double t, double target, double scale) { return t >= target - 1e-12 * std::max(scale, 1e-300); }

}  // namespace

RunSummary Simulation::run(const std::filesystem::path* out_dir, std::ostream* log, const Observer& observer) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioConfig& sc = config_.scenario;
  const OutputPlan& plan = config_.output;
  const double beta = sc.constants.beta;

  RunSummary summary;
  summary.initial_hash = field_hash(field_);
  FieldStats stats = field_stats(field_, *geometry_, beta);
  summary.min_area = stats.min_area;
  summary.min_pressure = stats.min_p;
  summary.max_pressure = stats.max_p;

  ProbeWriter probes;
  std::vector<double> snap_times = plan.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  std::size_t next_snap = 0;
  double last_snapshot_time = -1.0;

  auto write_probes = [&] {
    if (!probes.is_open()) return;
    for (double s : sc.probes.s) {
      for (double th : sc.probes.theta) probes.write(field_.time, s, th, diagnostics_->probe(field_, s, th));
    }
  };
  auto write_snapshot = [&] {
    if (!out_dir) return;
    char name[64];
    std::snprintf(name, sizeof name, "surface_%04d.vtk", summary.snapshots);
    const SurfaceGrid grid = surface_velocity_field(field_, *geometry_, sc.constants);
    write_vtk(*out_dir / name, grid, geometry_->model().name + " t=" + format_number(field_.time));
    ++summary.snapshots;
    last_snapshot_time = field_.time;
  };

  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir->string() + ": " + ec.message());
    std::ofstream cfg(*out_dir / "config.json");
    if (!cfg) throw Error("cannot write " + (*out_dir / "config.json").string());
    cfg << to_json(config_).dump(2) << '\n';
    probes = ProbeWriter(*out_dir / "probes.csv");
  }
  write_probes();
  double next_probe = plan.probe_interval > 0.0 ? plan.probe_interval : std::numeric_limits<double>::infinity();
  long probe_count = 1;
  while (next_snap < snap_times.size() && snap_times[next_snap] <= field_.time) {
    write_snapshot();
    ++next_snap;
  }

  while (!done()) {
    double t_stop = sc.t_end;
    if (next_snap < snap_times.size()) t_stop = std::min(t_stop, snap_times[next_snap]);
    t_stop = std::min(t_stop, next_probe);
    const StepInfo info = step(t_stop);

    stats = field_stats(field_, *geometry_, beta);
    summary.min_area = std::min(summary.min_area, stats.min_area);
    summary.min_pressure = std::min(summary.min_pressure, stats.min_p);
    summary.max_pressure = std::max(summary.max_pressure, stats.max_p);

    bool probe_now = plan.probe_every > 0 && steps_ % plan.probe_every == 0;
    if (reached(field_.time, next_probe, plan.probe_interval)) {
      probe_now = true;
      ++probe_count;
      next_probe = plan.probe_interval * static_cast<double>(probe_count);
    }
    if (probe_now) write_probes();

    bool snap_now = plan.snapshot_every > 0 && steps_ % plan.snapshot_every == 0;
    while (next_snap < snap_times.size() && reached(field_.time, snap_times[next_snap], sc.t_end)) {
      snap_now = true;
      ++next_snap;
    }
    if (snap_now) write_snapshot();

    if (log && steps_ % 100 == 0) {
      *log << "step " << steps_ << " t=" << field_.time << " dt=" << info.dt << " a=" << info.speeds.a
           << " b=" << info.speeds.b << " minA=" << stats.min_area << '\n';
    }
    if (observer) observer(*this, info);
  }
  if (plan.final_snapshot && last_snapshot_time != field_.time) write_snapshot();

  summary.steps = steps_;
  summary.t_final = field_.time;
  summary.final_hash = field_hash(field_);
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (out_dir) {
    const std::string cfg_text = to_json(config_).dump();
    write_manifest(*out_dir / "manifest.txt",
                   {{"version", version_string()},
                    {"preset", sc.has_table ? std::string("custom") : sc.preset},
                    {"config_hash", hex64(fnv1a(cfg_text))},
                    {"grid", std::to_string(sc.grid.n_s) + "x" + std::to_string(sc.grid.n_theta)},
                    {"threads", std::to_string(config_.threads)},
                    {"positivity_mode", config_.numerics.positivity ? "on" : "off"},
                    {"A_th", format_number(solver_->a_threshold())},
                    {"steps", std::to_string(summary.steps)},
                    {"t_final", format_number(summary.t_final)},
                    {"initial_state_hash", hex64(summary.initial_hash)},
                    {"final_state_hash", hex64(summary.final_hash)},
                    {"min_area", format_number(summary.min_area)},
                    {"pressure_min_Pa", format_number(summary.min_pressure)},
                    {"pressure_max_Pa", format_number(summary.max_pressure)},
                    {"snapshots", std::to_string(summary.snapshots)},
                    {"wall_clock_seconds", format_number(summary.wall_seconds)}});
  }
  return summary;
}

RunConfig convergence_config(const std::string& preset, int n_s, int n_theta, double t_end) {
  RunConfig c = default_run_config(preset);
  ScenarioConfig& sc = c.scenario;
  sc.grid.n_s = n_s;
  sc.grid.n_theta = n_theta;
  sc.initial = InitialKind::smooth_bump;
  sc.perturbation.s_center = 0.5 * sc.grid.s_length;
  sc.perturbation.theta_center = kPi / 4.0;
  sc.perturbation.amplitude = 0.05;
  sc.perturbation.width = 0.05 * sc.grid.s_length;
  sc.t_end = t_end;
  c.output = OutputPlan{};
  c.output.probe_every = 0;
  c.output.final_snapshot = false;
  return c;
}

std::vector<ConvergenceRow> self_convergence(RunConfig base, int levels) {
  if (levels < 2) throw ConfigError("convergence study needs at least two grids");
  std::vector<ConservedField> fields;
  std::vector<GridSpec> grids;
  for (int l = 0; l < levels; ++l) {
    RunConfig c = base;
    c.scenario.grid.n_s = base.scenario.grid.n_s << l;
    c.scenario.grid.n_theta = base.scenario.grid.n_theta << l;
    Simulation sim(c);
    sim.run(nullptr, nullptr);
    fields.push_back(sim.field());
    grids.push_back(sim.geometry().grid());
  }
  std::vector<ConvergenceRow> rows;
  for (int l = 0; l + 1 < levels; ++l) {
    const GridSpec& g = grids[static_cast<std::size_t>(l)];
    const ConservedField& coarse = fields[static_cast<std::size_t>(l)];
    const ConservedField& fine = fields[static_cast<std::size_t>(l) + 1];
    double sum = 0.0;
    for (int j = 0; j < g.n_s; ++j) {
      for (int k = 0; k < g.n_theta; ++k) {
        const double avg = 0.25 * (fine.A(2 * j, 2 * k) + fine.A(2 * j + 1, 2 * k) + fine.A(2 * j, 2 * k + 1) +
                                   fine.A(2 * j + 1, 2 * k + 1));
        sum += std::abs(coarse.A(j, k) - avg);
      }
    }
    rows.push_back({g.n_s, g.n_theta, sum * g.delta_s() * g.delta_theta(), 0.0});
  }
  rows.push_back({grids.back().n_s, grids.back().n_theta, 0.0, 0.0});
  for (std::size_t i = 0; i + 2 < rows.size(); ++i) {
    rows[i].order = std::log2(rows[i].l1_difference / rows[i + 1].l1_difference);
  }
  return rows;
}

}  // namespace vessel2d
