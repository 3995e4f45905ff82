#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>

#include "vessel2d/config.hpp"
#include "vessel2d/postprocess.hpp"

namespace vessel2d {

struct RunSummary {
  long steps = 0;
  double t_final = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t initial_hash = 0;
  std::uint64_t final_hash = 0;
  double min_area = 0.0;      // over interior cells and all steps
  double min_pressure = 0.0;  // Pa
  double max_pressure = 0.0;  // Pa
  int snapshots = 0;
};

/// Geometry, solver and state for one configured run.
class Simulation {
 public:
  explicit Simulation(RunConfig config);

  const RunConfig& config() const { return config_; }
  const VesselGeometry& geometry() const { return *geometry_; }
  Solver& solver() { return *solver_; }
  const ConservedField& field() const { return field_; }
  ConservedField& field() { return field_; }
  const Diagnostics& diagnostics() const { return *diagnostics_; }

  bool done() const;
  /// One step toward min(t_end, t_stop).
  StepInfo step(double t_stop);

  using Observer = std::function<void(const Simulation&, const StepInfo&)>;

  /// Runs to t_end (or max_steps). With an output directory, writes probes.csv, surface_*.vtk,
  /// config.json and manifest.txt there. Status lines go to `log` every 100 steps.
  RunSummary run(const std::filesystem::path* out_dir, std::ostream* log, const Observer& observer = {});

 private:
  RunConfig config_;
  std::unique_ptr<VesselGeometry> geometry_;
  std::unique_ptr<Solver> solver_;
  std::unique_ptr<Diagnostics> diagnostics_;
  ConservedField field_;
  long steps_ = 0;
};

struct ConvergenceRow {
  int n_s = 0;
  int n_theta = 0;
  double l1_difference = 0.0;  // |A_h - restrict(A_h/2)|_1 against the next finer grid
  double order = 0.0;          // log2 ratio with the next row; 0 on the last rows
};

/// Self-convergence study from smooth_bump data: grids base, 2x base, ... (`levels` grids),
/// compared pairwise after 2x2 block averaging of the finer solution.
std::vector<ConvergenceRow> self_convergence(RunConfig base, int levels);

/// Smooth-data run configuration used by the convergence study.
RunConfig convergence_config(const std::string& preset, int n_s, int n_theta, double t_end);

/// Version string reported in manifests.
const char* version_string();

}  // namespace vessel2d
