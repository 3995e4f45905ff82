#include "vessel2d/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "vessel2d/closures.hpp"
#include "vessel2d/errors.hpp"

namespace vessel2d {

namespace {

constexpr double kCm = 1e-2;

GeometryModel scenario_model(const ScenarioConfig& c) {
  return c.has_table ? build_tabulated_model(c.table) : build_scenario_model(c.preset, c.preset_options);
}

double resolved_length(const ScenarioConfig& c, const GeometryModel& m) {
  return c.grid.s_length > 0.0 ? c.grid.s_length : m.s_length;
}

}  // namespace

double InletWaveform::operator()(double t) const {
  const double w = 2.0 * kPi / period;
  double u = a.empty() ? 0.0 : a[0];
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 1; i < n; ++i) {
    const double arg = w * static_cast<double>(i) * t;
    if (i < a.size()) u += a[i] * std::cos(arg);
    if (i < b.size()) u += b[i] * std::sin(arg);
  }
  return u;
}

void InletWaveform::validate() const {
  if (a.empty()) throw ConfigError("inlet waveform has an empty coefficient list");
  if (!(period > 0.0) || !std::isfinite(period)) throw ConfigError("inlet period must be positive");
  for (double v : a) {
    if (!std::isfinite(v)) throw ConfigError("inlet coefficients must be finite");
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw ConfigError("inlet coefficients must be finite");
  }
}

InletWaveform default_inlet_pulse(double period) {
  constexpr int kTerms = 15;
  constexpr double kEjection = 0.35;  // fraction of the cycle
  constexpr int kQuad = 4096;         // Simpson panels over the ejection window

  InletWaveform w;
  w.period = period;
  w.a.assign(kTerms + 1, 0.0);
  w.b.assign(kTerms + 1, 0.0);
  const double ts = kEjection * period;
  const double h = ts / kQuad;
  for (int q = 0; q <= kQuad; ++q) {
    const double t = q * h;
    const double weight = (q == 0 || q == kQuad) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
    const double s = std::sin(kPi * t / ts);
    const double f = weight * h / 3.0 * s * s;
    w.a[0] += f / period;
    for (int n = 1; n <= kTerms; ++n) {
      const double arg = 2.0 * kPi * n * t / period;
      w.a[static_cast<std::size_t>(n)] += 2.0 / period * f * std::cos(arg);
      w.b[static_cast<std::size_t>(n)] += 2.0 / period * f * std::sin(arg);
    }
  }
  double peak = 0.0;
  for (int i = 0; i < 20000; ++i) peak = std::max(peak, w(period * i / 20000.0));
  for (double& v : w.a) v /= peak;
  for (double& v : w.b) v /= peak;
  return w;
}

InletWaveform fourier_from_samples(const std::vector<double>& values, double period, int n_terms) {
  const std::size_t m = values.size();
  if (m < 2) throw ConfigError("inlet sample table needs at least two samples");
  if (n_terms < 0 || 2 * static_cast<std::size_t>(n_terms) >= m) {
    throw ConfigError("inlet sample table too short for the requested number of harmonics");
  }
  InletWaveform w;
  w.period = period;
  w.a.assign(static_cast<std::size_t>(n_terms) + 1, 0.0);
  w.b.assign(static_cast<std::size_t>(n_terms) + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
    w.a[0] += values[i] / static_cast<double>(m);
    for (int n = 1; n <= n_terms; ++n) {
      w.a[static_cast<std::size_t>(n)] += 2.0 * values[i] * std::cos(n * x) / static_cast<double>(m);
      w.b[static_cast<std::size_t>(n)] += 2.0 * values[i] * std::sin(n * x) / static_cast<double>(m);
    }
  }
  w.validate();
  return w;
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "rest") return InitialKind::rest;
  if (name == "radius_perturbation") return InitialKind::radius_perturbation;
  if (name == "smooth_bump") return InitialKind::smooth_bump;
  throw ConfigError("unknown initial condition '" + name + "'");
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::rest: return "rest";
    case InitialKind::radius_perturbation: return "radius_perturbation";
    case InitialKind::smooth_bump: return "smooth_bump";
  }
  return "rest";
}

void ScenarioConfig::validate() const {
  const GeometryModel m = scenario_model(*this);
  GridSpec g = grid;
  g.s_length = resolved_length(*this, m);
  g.validate();
  constants.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("end time must be positive");
  if (max_steps < 0) throw ConfigError("max_steps must be non-negative");

  const bool wants_inlet = bc_left == BoundaryKind::dirichlet_inlet || bc_right == BoundaryKind::dirichlet_inlet;
  if (wants_inlet && !has_inlet) throw ConfigError("dirichlet_inlet boundary needs an inlet waveform");
  if (has_inlet && !wants_inlet) throw ConfigError("inlet waveform given without a dirichlet_inlet boundary");
  if (has_inlet) inlet.validate();

  for (double s : probes.s) {
    if (!(s >= 0.0 && s <= g.s_length)) throw ConfigError("probe s outside [0, s_L]");
  }
  for (double th : probes.theta) {
    if (!std::isfinite(th)) throw ConfigError("probe theta must be finite");
  }
  if (initial != InitialKind::rest) {
    const auto& p = perturbation;
    if (!(p.s_center >= 0.0 && p.s_center <= g.s_length)) {
      throw ConfigError("perturbation center outside the domain");
    }
    if (!std::isfinite(p.amplitude) || !(p.x_weight >= 0.0) || !(p.width > 0.0)) {
      throw ConfigError("invalid perturbation parameters");
    }
  }
}

VesselGeometry build_geometry(const ScenarioConfig& config) {
  GeometryModel m = scenario_model(config);
  GridSpec g = config.grid;
  g.s_length = resolved_length(config, m);
  return VesselGeometry(std::move(m), g);
}

ScenarioConfig default_scenario(const std::string& preset) {
  ScenarioConfig c;
  c.preset = preset;
  c.probes.s = {21.10 * kCm};
  c.probes.theta = {0.0, kPi / 2.0, kPi, 1.5 * kPi};
  if (preset == "horizontal_tapered") {
    c.grid = GridSpec{200, 90, 50.0 * kCm};
    c.initial = InitialKind::radius_perturbation;
    c.perturbation = PerturbationSpec{};
    c.t_end = 0.1;
    return c;
  }
  (void)build_scenario_model(preset);  // rejects unknown names
  c.grid = GridSpec{200, 180, aorta_length()};
  c.bc_left = BoundaryKind::dirichlet_inlet;
  c.bc_right = BoundaryKind::neumann;
  c.has_inlet = true;
  c.inlet = default_inlet_pulse(1.0);
  c.t_end = preset == "aorta_base" ? 2.0 : 0.5;
  return c;
}

double perturbation_factor(const GeometryModel& model, const PerturbationSpec& p, InitialKind kind,
                           double s, double theta) {
  switch (kind) {
    case InitialKind::rest:
      return 1.0;
    case InitialKind::radius_perturbation: {
      const double r_star = model.r_o(p.s_center, p.theta_center);
      const Vec3 c = model.surface_point(p.s_center, p.theta_center, r_star);
      const Vec3 q = model.surface_point(s, theta, model.r_o(s, theta));
      const double dx = c.x - q.x;
      const double dy = c.y - q.y;
      const double dz = c.z - q.z;
      const double d = std::sqrt(p.x_weight * dx * dx + dy * dy + dz * dz);
      if (d / r_star > 1.0) return 1.0;
      return 1.0 + p.amplitude * std::sin((1.0 - d / r_star) * kPi / 2.0);
    }
    case InitialKind::smooth_bump: {
      const double xs = (s - p.s_center) / p.width;
      return 1.0 + p.amplitude * std::exp(-xs * xs) * 0.5 * (1.0 + std::cos(theta - p.theta_center));
    }
  }
  return 1.0;
}

double rest_radius(const CellSample& c) { return radius_from_area_kappa(c.a_o, c.kappa); }

ConservedField initial_condition(const ScenarioConfig& config, const VesselGeometry& geometry) {
  const GridSpec& g = geometry.grid();
  ConservedField f(g);
  for (int j = -GridSpec::ghost_layers; j < g.n_s + GridSpec::ghost_layers; ++j) {
    for (int k = 0; k < g.n_theta; ++k) {
      const CellSample& c = geometry.cell(j, k);
      const double factor =
          perturbation_factor(geometry.model(), config.perturbation, config.initial, g.s_center(j), g.theta_center(k));
      if (factor == 1.0) {
        f.A(j, k) = c.a_o;
        continue;
      }
      const double r = factor * rest_radius(c);
      if (r * std::abs(c.kappa) >= 1.0) {
        throw GeometryError("perturbed radius exceeds the radius of curvature");
      }
      f.A(j, k) = area_from_radius_kappa(r, c.kappa);
    }
  }
  return f;
}

SteadyDiagnostics steady_diagnostics(const ConservedField& field, const VesselGeometry& geometry,
                                     const PhysicalConstants& constants) {
  const GridSpec& g = geometry.grid();
  const ClosureModel closures(constants.gamma_s, constants.gamma_theta);
  SteadyDiagnostics d;
  const std::size_t n = static_cast<std::size_t>(g.n_s) * static_cast<std::size_t>(g.n_theta);
  d.discharge.resize(n);
  d.energy.resize(n);
  for (int j = 0; j < g.n_s; ++j) {
    const double z = geometry.model().centerline(g.s_center(j)).z;
    for (int k = 0; k < g.n_theta; ++k) {
      const CellSample& c = geometry.cell(j, k);
      const double a = field.A(j, k);
      const double r = radius_from_area_kappa(a, c.kappa);
      const ClosureSet cl = closures.evaluate(r * c.kappa);
      const double u = field.Q1(j, k) / (cl.psi_so * a);
      const PressureState ps = pressure(a, c.a_o, c.g_o, constants.beta);
      const std::size_t i = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.n_theta) +
                            static_cast<std::size_t>(k);
      d.discharge[i] = a * u;
      d.energy[i] = 0.5 * cl.psi_s1 * u * u + ps.p / constants.rho + constants.g * z;
    }
  }
  for (int k = 0; k < g.n_theta; ++k) {
    double qlo = INFINITY, qhi = -INFINITY, elo = INFINITY, ehi = -INFINITY;
    for (int j = 0; j < g.n_s; ++j) {
      const std::size_t i = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.n_theta) +
                            static_cast<std::size_t>(k);
      qlo = std::min(qlo, d.discharge[i]);
      qhi = std::max(qhi, d.discharge[i]);
      elo = std::min(elo, d.energy[i]);
      ehi = std::max(ehi, d.energy[i]);
    }
    d.discharge_drift = std::max(d.discharge_drift, qhi - qlo);
    d.energy_drift = std::max(d.energy_drift, ehi - elo);
  }
  return d;
}

}  // namespace vessel2d
