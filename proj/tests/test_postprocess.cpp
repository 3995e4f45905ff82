#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vessel2d/postprocess.hpp"
#include "vessel2d/scenarios.hpp"

using namespace vessel2d;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("vessel2d_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

}  // namespace

TEST_CASE("tangential velocity against quadrature") {
  for (double gt : {2.0, 3.0}) {
    for (double gamma : {-0.7, 0.0, 0.4, 0.9}) {
      const double r = 0.013;
      const double omega = 12.5;
      const oracle::ProfileMoments m = oracle::profile_moments(gamma, r, 9.0, gt);
      CHECK(tangential_velocity(omega, r, gamma, gt) == doctest::Approx(omega * m.u_tang_over_omega).epsilon(1e-11));
    }
  }
  CHECK(tangential_velocity(1.0, 1.0, 0.0, 2.0) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(tangential_velocity(0.0, 1.0, 0.3, 2.0) == 0.0);
}

TEST_CASE("tangential velocity is bounded by the profile maximum") {
  for (double gamma : {-0.9, 0.0, 0.5}) {
    const double r = 0.01;
    const double omega = 3.0;
    const oracle::ProfileMoments m = oracle::profile_moments(gamma, r);
    double vmax = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      vmax = std::max(vmax, std::abs(r * x * m.e_theta * oracle::vt_star(x, 2.0) * omega));
    }
    CHECK(std::abs(tangential_velocity(omega, r, gamma, 2.0)) <= vmax);
  }
}

TEST_CASE("cross-section curvature radius") {
  CHECK(cross_section_curvature_radius(0.02, 0.0, 0.0) == doctest::Approx(0.02));
  // Ellipse-like curve r(theta) = h(theta); curvature of the parametric curve by differences.
  const double xi = 0.4;
  auto r = [&](double t) { return cross_section_shape(t, xi); };
  for (double t : {0.3, 1.0, 2.2}) {
    const double h = 1e-4;
    const double rt = (r(t + h) - r(t - h)) / (2 * h);
    const double rtt = (r(t + h) - 2 * r(t) + r(t - h)) / (h * h);
    auto x = [&](double s) { return r(s) * std::cos(s); };
    auto y = [&](double s) { return r(s) * std::sin(s); };
    const double xp = (x(t + h) - x(t - h)) / (2 * h), yp = (y(t + h) - y(t - h)) / (2 * h);
    const double xpp = (x(t + h) - 2 * x(t) + x(t - h)) / (h * h), ypp = (y(t + h) - 2 * y(t) + y(t - h)) / (h * h);
    const double kappa = std::abs(xp * ypp - yp * xpp) / std::pow(xp * xp + yp * yp, 1.5);
    CHECK(cross_section_curvature_radius(r(t), rt, rtt) == doctest::Approx(1.0 / kappa).epsilon(1e-5));
  }
  CHECK(cross_section_curvature_radius(1.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("wall velocity") {
  const double alpha = 0.3, theta = 1.1, r = 0.01;
  const Vec3 axial = wall_velocity(alpha, theta, r, 0.0, 0.0, 2.0, 0.0);
  CHECK(axial.x == doctest::Approx(2.0 * std::cos(alpha)));
  CHECK(axial.y == doctest::Approx(0.0));
  CHECK(axial.z == doctest::Approx(2.0 * std::sin(alpha)));
  // Circle: the tangential part is U_Tang along d/dtheta of the surface point.
  const Vec3 tang = wall_velocity(alpha, theta, r, 0.0, 0.0, 0.0, 0.5);
  const Vec3 t{-std::sin(alpha) * std::cos(theta), -std::sin(theta), std::cos(alpha) * std::cos(theta)};
  CHECK(tang.x == doctest::Approx(0.5 * t.x));
  CHECK(tang.y == doctest::Approx(0.5 * t.y));
  CHECK(tang.z == doctest::Approx(0.5 * t.z));
  CHECK(norm(tang) == doctest::Approx(0.5));
  bool degenerate = false;
  const Vec3 d = wall_velocity(alpha, theta, 1.0, 0.0, 1.0, 1.0, 0.5, &degenerate);
  CHECK(degenerate);
  CHECK(norm(d) == doctest::Approx(1.0));
}

TEST_CASE("surface lattice and diagnostics at rest") {
  ScenarioConfig sc = default_scenario("aorta_bulge");
  sc.grid.n_s = 30;
  sc.grid.n_theta = 12;
  const VesselGeometry geo = build_geometry(sc);
  const ConservedField f = initial_condition(sc, geo);
  const SurfaceGrid s = surface_velocity_field(f, geo, sc.constants);
  CHECK(s.n_s_points == 31);
  CHECK(s.n_theta_points == 13);
  CHECK(s.position.size() == 31u * 13u);
  CHECK(s.velocity.size() == s.position.size());
  for (int i = 0; i <= 30; ++i) {
    const Vec3& a = s.position[static_cast<std::size_t>(i * 13)];
    const Vec3& b = s.position[static_cast<std::size_t>(i * 13 + 12)];
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.z == b.z);
  }
  for (std::size_t i = 0; i < s.position.size(); ++i) {
    CHECK(norm(s.velocity[i]) == 0.0);
    CHECK(s.p[i] == doctest::Approx(0.0).scale(1e-9));
  }
  const Diagnostics diag(geo, sc.constants);
  const CellDiagnostics d = diag.probe(f, 0.211, 1.0);
  CHECK(d.u == 0.0);
  CHECK(d.u_tang == 0.0);
  CHECK(std::abs(d.p) < 1e-9);
  CHECK(d.r_over_ro == doctest::Approx(1.0));
  // Probe at a cell center reproduces the cell.
  const GridSpec& g = geo.grid();
  const CellDiagnostics c = diag.cell(f, 7, 3);
  const CellDiagnostics p = diag.probe(f, g.s_center(7), g.theta_center(3));
  CHECK(p.radius == doctest::Approx(c.radius).epsilon(1e-12));
}

TEST_CASE("probe rows") {
  const auto dir = temp_dir("probe");
  {
    ProbeWriter w(dir / "probes.csv");
    CellDiagnostics d;
    d.radius = 0.01;
    d.r_over_ro = 1.0;
    w.write(0.5, 0.211, 0.0, d);
  }
  std::ifstream in(dir / "probes.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "t,s,theta,R,R_over_Ro,u,omega,p,U_Tang");
  CHECK(row == "0.5,0.21099999999999999,0,0.01,1,0,0,0,0");
}

TEST_CASE("VTK output") {
  ScenarioConfig sc = default_scenario("horizontal_tapered");
  sc.grid.n_s = 8;
  sc.grid.n_theta = 6;
  const VesselGeometry geo = build_geometry(sc);
  const ConservedField f = initial_condition(sc, geo);
  const SurfaceGrid s = surface_velocity_field(f, geo, sc.constants);
  const auto dir = temp_dir("vtk");
  write_vtk(dir / "a.vtk", s, "test");
  write_vtk(dir / "b.vtk", s, "test");
  std::ifstream a(dir / "a.vtk"), b(dir / "b.vtk");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());

  std::istringstream in(sa.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# vtk DataFile Version 3.0");
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "ASCII");
  std::getline(in, line);
  CHECK(line == "DATASET STRUCTURED_GRID");
  std::getline(in, line);
  CHECK(line == "DIMENSIONS 7 9 1");
  std::getline(in, line);
  CHECK(line == "POINTS 63 double");
  // Coordinates read back bit-exactly.
  for (std::size_t i = 0; i < 63; ++i) {
    double x, y, z;
    in >> x >> y >> z;
    CHECK(x == s.position[i].x);
    CHECK(y == s.position[i].y);
    CHECK(z == s.position[i].z);
  }
  CHECK(sa.str().find("SCALARS R_over_Ro double 1") != std::string::npos);
  CHECK(sa.str().find("VECTORS velocity double") != std::string::npos);
}

TEST_CASE("hashing and formatting") {
  CHECK(fnv1a(std::string()) == 0xcbf29ce484222325ULL);
  CHECK(fnv1a(std::string("a")) == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_number(v)) == v);

  ScenarioConfig sc = default_scenario("horizontal_tapered");
  sc.grid.n_s = 8;
  sc.grid.n_theta = 6;
  const VesselGeometry geo = build_geometry(sc);
  ConservedField f = initial_condition(sc, geo);
  const auto h0 = field_hash(f);
  CHECK(field_hash(f) == h0);
  f.A(-1, 0) += 1.0;  // ghosts are not hashed
  CHECK(field_hash(f) == h0);
  f.Q2(3, 2) = 1e-300;
  CHECK(field_hash(f) != h0);
}

TEST_CASE("manifest") {
  const auto dir = temp_dir("manifest");
  write_manifest(dir / "m.txt", {{"a", "1"}, {"b", "x y"}});
  std::ifstream in(dir / "m.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a = 1\nb = x y\n");
}
