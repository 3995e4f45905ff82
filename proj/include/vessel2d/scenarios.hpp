#pragma once

#include <string>
#include <vector>

#include "vessel2d/geometry.hpp"
#include "vessel2d/scheme.hpp"

namespace vessel2d {

/// Truncated Fourier series u(t) = a[0] + sum_n a[n] cos(2 pi n t/T) + b[n] sin(2 pi n t/T).
struct InletWaveform {
  double period = 1.0;     // s
  std::vector<double> a;   // a[0] is the mean
  std::vector<double> b;   // b[0] unused; padded with zeros when shorter than a

  double operator()(double t) const;
  /// Throws ConfigError on an empty coefficient list or a non-positive period.
  void validate() const;
};

/// Synthetic systolic pulse: 15-term truncation of a sin^2 ejection of length 0.35 T, rescaled so that
/// the peak over one period is 1.0 m/s.
InletWaveform default_inlet_pulse(double period = 1.0);

/// Least-squares (DFT) fit of n_terms harmonics to equally spaced samples covering one period.
InletWaveform fourier_from_samples(const std::vector<double>& values, double period, int n_terms);

enum class InitialKind {
  rest,
  radius_perturbation,  // sine bump of R/R_o inside a ball around (s*, theta*)
  smooth_bump,          // Gaussian-in-s, raised-cosine-in-theta bump of R/R_o
};

InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

struct PerturbationSpec {
  double s_center = 0.25;        // m
  double theta_center = kPi / 4;
  double amplitude = 0.2;        // peak of R/R_o - 1
  double x_weight = 0.25;        // weight on the squared x-distance
  double width = 0.025;          // m, smooth_bump only
};

struct ProbeSpec {
  std::vector<double> s;      // m
  std::vector<double> theta;  // rad
};

struct ScenarioConfig {
  std::string preset = "horizontal_tapered";
  bool has_table = false;  // tabulated geometry replaces the preset
  TabulatedGeometry table;
  GridSpec grid;
  PhysicalConstants constants;
  PresetOptions preset_options;
  BoundaryKind bc_left = BoundaryKind::neumann;
  BoundaryKind bc_right = BoundaryKind::neumann;
  bool has_inlet = false;
  InletWaveform inlet;
  InitialKind initial = InitialKind::rest;
  PerturbationSpec perturbation;
  ProbeSpec probes;
  double t_end = 0.1;  // s
  long max_steps = 0;  // 0 means no step limit

  /// Throws ConfigError when the invariants fail.
  void validate() const;
};

/// Geometry described by the config (preset or table) on its grid.
VesselGeometry build_geometry(const ScenarioConfig& config);

/// Scenario defaults for a preset name.
ScenarioConfig default_scenario(const std::string& preset);

/// Radius perturbation factor R/R_o at one point.
double perturbation_factor(const GeometryModel& model, const PerturbationSpec& p, InitialKind kind,
                           double s, double theta);

/// Cell averages at t = 0. Cells with R/R_o = 1 are exactly at rest.
ConservedField initial_condition(const ScenarioConfig& config, const VesselGeometry& geometry);

/// Rest radius consistent with the cell-average A_o.
double rest_radius(const CellSample& c);

struct SteadyDiagnostics {
  std::vector<double> discharge;  // A u per interior cell, row-major (j, k)
  std::vector<double> energy;     // psi_s1 u^2/2 + p/rho + g z_o
  double discharge_drift = 0.0;   // max over k of (max_j - min_j)
  double energy_drift = 0.0;
};

/// Discharge and energy per cell, meaningful for alpha' = 0, nu = 0, omega = 0.
SteadyDiagnostics steady_diagnostics(const ConservedField& field, const VesselGeometry& geometry,
                                     const PhysicalConstants& constants);

}  // namespace vessel2d
