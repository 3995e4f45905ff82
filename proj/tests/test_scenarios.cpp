#include <doctest.h>

#include <cmath>

#include "vessel2d/closures.hpp"
#include "vessel2d/errors.hpp"
#include "vessel2d/scenarios.hpp"

using namespace vessel2d;

TEST_CASE("Fourier inlet waveform") {
  InletWaveform w;
  w.period = 2.0;
  w.a = {1.0, 2.0};
  w.b = {0.0, 3.0};
  for (double t : {0.0, 0.3, 1.7}) {
    CHECK(w(t) == doctest::Approx(1.0 + 2.0 * std::cos(kPi * t) + 3.0 * std::sin(kPi * t)));
  }
  CHECK(w(0.3) == doctest::Approx(w(2.3)));
  w.b = {};
  CHECK(w(0.5) == doctest::Approx(1.0 + 2.0 * std::cos(kPi * 0.5)));
  InletWaveform empty;
  CHECK_THROWS_AS(empty.validate(), ConfigError);
  InletWaveform bad_period;
  bad_period.a = {1.0};
  bad_period.period = 0.0;
  CHECK_THROWS_AS(bad_period.validate(), ConfigError);
}

TEST_CASE("default pulse") {
  const InletWaveform w = default_inlet_pulse(1.0);
  CHECK(w.a.size() == 16);
  double peak = -1e300;
  double mean = 0.0;
  const int n = 10007;
  for (int i = 0; i < n; ++i) {
    const double v = w(static_cast<double>(i) / n);
    peak = std::max(peak, v);
    mean += v / n;
  }
  CHECK(std::abs(peak - 1.0) <= 0.01);
  CHECK(mean > 0.0);
  // Late diastole is close to zero flow.
  CHECK(std::abs(w(0.8)) < 0.05);
  CHECK(default_inlet_pulse(0.8)(0.4) == doctest::Approx(w(0.5)));
}

TEST_CASE("Fourier fit of samples") {
  const int n = 64;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = 0.5 * i / n;
    v[static_cast<std::size_t>(i)] = 0.3 + 0.2 * std::cos(4.0 * kPi * t) - 0.7 * std::sin(12.0 * kPi * t);
  }
  const InletWaveform w = fourier_from_samples(v, 0.5, 5);
  CHECK(w.a[0] == doctest::Approx(0.3));
  CHECK(w.a[1] == doctest::Approx(0.2));
  CHECK(w.b[3] == doctest::Approx(-0.7));
  CHECK(w(0.123) == doctest::Approx(0.3 + 0.2 * std::cos(4.0 * kPi * 0.123) - 0.7 * std::sin(12.0 * kPi * 0.123)));
}

TEST_CASE("radius perturbation") {
  const GeometryModel m = build_scenario_model("horizontal_tapered");
  PerturbationSpec p;
  CHECK(perturbation_factor(m, p, InitialKind::radius_perturbation, 0.25, kPi / 4) == doctest::Approx(1.2));
  CHECK(perturbation_factor(m, p, InitialKind::radius_perturbation, 0.10, kPi / 4) == 1.0);
  CHECK(perturbation_factor(m, p, InitialKind::radius_perturbation, 0.25, kPi / 4 + kPi) == 1.0);
  CHECK(perturbation_factor(m, p, InitialKind::rest, 0.25, kPi / 4) == 1.0);
  const double f = perturbation_factor(m, p, InitialKind::radius_perturbation, 0.26, kPi / 4);
  CHECK(f > 1.0);
  CHECK(f < 1.2);
  p.width = 0.01;
  p.amplitude = 0.1;
  CHECK(perturbation_factor(m, p, InitialKind::smooth_bump, 0.25, kPi / 4) == doctest::Approx(1.1));
  CHECK(perturbation_factor(m, p, InitialKind::smooth_bump, 0.25, kPi / 4 + kPi) == doctest::Approx(1.0));
}

TEST_CASE("initial conditions") {
  ScenarioConfig sc = default_scenario("horizontal_tapered");
  sc.grid.n_s = 100;
  sc.grid.n_theta = 36;
  const VesselGeometry geo = build_geometry(sc);
  const ConservedField f = initial_condition(sc, geo);
  double peak = 0.0;
  int rest_cells = 0;
  for (int j = 0; j < 100; ++j) {
    for (int k = 0; k < 36; ++k) {
      const CellSample& c = geo.cell(j, k);
      const double ratio = radius_from_area_kappa(f.A(j, k), c.kappa) / rest_radius(c);
      peak = std::max(peak, ratio);
      if (f.A(j, k) == c.a_o) ++rest_cells;
      CHECK(f.Q1(j, k) == 0.0);
      CHECK(f.Q2(j, k) == 0.0);
    }
  }
  CHECK(peak > 1.15);
  CHECK(peak <= 1.2 + 1e-12);
  CHECK(rest_cells > 3000);

  ScenarioConfig rest = default_scenario("aorta_base");
  rest.grid.n_s = 40;
  rest.grid.n_theta = 16;
  const VesselGeometry ag = build_geometry(rest);
  const ConservedField r = initial_condition(rest, ag);
  for (int j = -2; j < 42; ++j)
    for (int k = 0; k < 16; ++k) CHECK(r.A(j, k) == ag.cell(j, k).a_o);
}

TEST_CASE("scenario defaults and validation") {
  const ScenarioConfig h = default_scenario("horizontal_tapered");
  CHECK(h.grid.n_s == 200);
  CHECK(h.grid.n_theta == 90);
  CHECK(h.initial == InitialKind::radius_perturbation);
  CHECK_NOTHROW(h.validate());
  const ScenarioConfig a = default_scenario("aorta_base");
  CHECK(a.bc_left == BoundaryKind::dirichlet_inlet);
  CHECK(a.has_inlet);
  CHECK(a.probes.s.at(0) == doctest::Approx(0.2110));
  CHECK(a.probes.theta.size() == 4);
  CHECK_NOTHROW(a.validate());

  ScenarioConfig bad = a;
  bad.has_inlet = false;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = h;
  bad.has_inlet = true;
  bad.inlet = default_inlet_pulse();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = h;
  bad.probes.s = {0.7};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = h;
  bad.t_end = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = h;
  bad.grid.n_theta = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(default_scenario("nope"), ConfigError);
  CHECK(parse_initial_kind(to_string(InitialKind::smooth_bump)) == InitialKind::smooth_bump);
  CHECK_THROWS_AS(parse_initial_kind("wave"), ConfigError);
}

TEST_CASE("steady-state diagnostics") {
  ScenarioConfig sc = default_scenario("horizontal_tapered");
  sc.grid.n_s = 20;
  sc.grid.n_theta = 8;
  sc.constants.g = 0.0;
  const VesselGeometry geo = build_geometry(sc);
  ConservedField f(geo.grid());
  const double q = 2e-5;
  for (int j = 0; j < 20; ++j) {
    for (int k = 0; k < 8; ++k) {
      f.A(j, k) = geo.cell(j, k).a_o * (1.0 + 0.01 * j);
      f.Q1(j, k) = q;
    }
  }
  const SteadyDiagnostics d = steady_diagnostics(f, geo, sc.constants);
  CHECK(d.discharge_drift <= q * 1e-12);
  for (double v : d.discharge) CHECK(v == doctest::Approx(q));
  // Energy of one cell written out.
  const CellSample& c = geo.cell(7, 3);
  const double a = f.A(7, 3);
  const double u = q / a;
  const double p = c.g_o * (a / c.a_o - 1.0);
  const double e = 0.5 * 1.1 * u * u + p / sc.constants.rho;
  CHECK(d.energy[7 * 8 + 3] == doctest::Approx(e).epsilon(1e-12));
  CHECK(d.energy_drift > 0.0);
}
