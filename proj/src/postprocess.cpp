#include "vessel2d/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "vessel2d/errors.hpp"

namespace vessel2d {

double tangential_velocity(double omega, double radius, double gamma, double gamma_theta) {
  const double n = gamma_theta;
  const double c = n / (n + 1.0);
  auto moment = [&](double m) { return 1.0 / (m + 1.0) - (c + gamma) / (m + 2.0) + c * gamma / (m + 3.0); };
  return omega * radius * moment(n + 1.0) / moment(n);
}

Diagnostics::Diagnostics(const VesselGeometry& geometry, const PhysicalConstants& constants, double a_threshold)
    : geo_(&geometry),
      constants_(constants),
      closures_(constants.gamma_s, constants.gamma_theta),
      a_th_(a_threshold > 0.0 ? a_threshold : 1e-10 * geometry.max_a_o()) {}

CellDiagnostics Diagnostics::cell(const ConservedField& f, int j, int k) const {
  const CellSample& c = geo_->cell(j, k);
  CellDiagnostics d;
  const double a = f.A(j, k);
  d.radius = radius_from_area_kappa(std::max(a, 0.0), c.kappa);
  d.r_over_ro = d.radius / radius_from_area_kappa(c.a_o, c.kappa);
  d.gamma = d.radius * c.kappa;
  const ClosureSet cl = c.kappa == 0.0 ? closures_.at_zero() : closures_.evaluate(d.gamma);
  if (a > a_th_) {
    const double r = std::max(d.radius, kCollapseRadius);
    d.u = f.Q1(j, k) / (cl.psi_so * a);
    d.omega = f.Q2(j, k) / a / (cl.a_theta_over_r2 * r * r);
    d.p = pressure(a, c.a_o, c.g_o, constants_.beta).p;
  } else {
    d.p = -c.g_o;
  }
  d.u_tang = tangential_velocity(d.omega, d.radius, d.gamma, constants_.gamma_theta);
  return d;
}

CellDiagnostics Diagnostics::probe(const ConservedField& f, double s, double theta) const {
  const GridSpec& g = geo_->grid();
  const double xs = std::clamp(s / g.delta_s() - 0.5, 0.0, static_cast<double>(g.n_s - 1));
  const int j0 = std::min(static_cast<int>(std::floor(xs)), g.n_s - 2);
  const double ws = xs - j0;

  double xt = std::fmod(theta, 2.0 * kPi);
  if (xt < 0.0) xt += 2.0 * kPi;
  xt = xt / g.delta_theta() - 0.5;
  const int k0 = static_cast<int>(std::floor(xt));
  const double wt = xt - k0;

  const CellDiagnostics c00 = cell(f, j0, geo_->wrap(k0));
  const CellDiagnostics c01 = cell(f, j0, geo_->wrap(k0 + 1));
  const CellDiagnostics c10 = cell(f, j0 + 1, geo_->wrap(k0));
  const CellDiagnostics c11 = cell(f, j0 + 1, geo_->wrap(k0 + 1));
  auto mix = [&](double CellDiagnostics::*m) {
    return (1.0 - ws) * ((1.0 - wt) * c00.*m + wt * c01.*m) + ws * ((1.0 - wt) * c10.*m + wt * c11.*m);
  };
  CellDiagnostics d;
  d.radius = mix(&CellDiagnostics::radius);
  d.r_over_ro = mix(&CellDiagnostics::r_over_ro);
  d.gamma = mix(&CellDiagnostics::gamma);
  d.u = mix(&CellDiagnostics::u);
  d.omega = mix(&CellDiagnostics::omega);
  d.p = mix(&CellDiagnostics::p);
  d.u_tang = mix(&CellDiagnostics::u_tang);
  return d;
}

double cross_section_curvature_radius(double r, double rt, double rtt) {
  const double q = rt / r;
  const double den = 1.0 + 2.0 * q * q - rtt / r;
  if (std::abs(den) < 1e-14) return 0.0;
  return r * std::pow(1.0 + q * q, 1.5) / den;
}

Vec3 wall_velocity(double alpha, double theta, double r, double rt, double rtt, double u, double u_tang,
                   bool* degenerate) {
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  Vec3 v{ca * u, 0.0, sa * u};
  const double rc = r > 0.0 ? cross_section_curvature_radius(r, rt, rtt) : 0.0;
  const bool flat = rc == 0.0;
  if (degenerate) *degenerate = flat;
  if (flat) return v;
  const double q = rt / r;
  const double scale = (rc / r) / std::sqrt(1.0 + q * q) * u_tang;
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double lean = ct + q * st;
  v.x += scale * (-sa * lean);
  v.y += scale * (-st + q * ct);
  v.z += scale * (ca * lean);
  return v;
}

SurfaceGrid surface_velocity_field(const ConservedField& f, const VesselGeometry& geo,
                                   const PhysicalConstants& constants) {
  const GridSpec& g = geo.grid();
  const Diagnostics diag(geo, constants);
  const int ns = g.n_s;
  const int nt = g.n_theta;

  std::vector<CellDiagnostics> cells(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt));
  for (int j = 0; j < ns; ++j) {
    for (int k = 0; k < nt; ++k) cells[static_cast<std::size_t>(j * nt + k)] = diag.cell(f, j, k);
  }

  SurfaceGrid out;
  out.n_s_points = ns + 1;
  out.n_theta_points = nt + 1;
  const std::size_t np = static_cast<std::size_t>(out.n_s_points) * static_cast<std::size_t>(out.n_theta_points);
  out.position.resize(np);
  out.velocity.resize(np);
  out.radius.resize(np);
  out.r_over_ro.resize(np);
  out.u.resize(np);
  out.p.resize(np);
  out.u_tang.resize(np);
  out.degenerate.assign(np, 0);

  // Corner values: mean of the adjacent interior cells.
  std::vector<double> ring(static_cast<std::size_t>(nt));
  for (int i = 0; i <= ns; ++i) {
    const int ja = std::max(i - 1, 0);
    const int jb = std::min(i, ns - 1);
    auto corner = [&](int k, double CellDiagnostics::*m) {
      const int km = (k + nt - 1) % nt;
      const int kp = k % nt;
      return 0.25 * (cells[static_cast<std::size_t>(ja * nt + km)].*m + cells[static_cast<std::size_t>(ja * nt + kp)].*m +
                     cells[static_cast<std::size_t>(jb * nt + km)].*m + cells[static_cast<std::size_t>(jb * nt + kp)].*m);
    };
    for (int k = 0; k < nt; ++k) ring[static_cast<std::size_t>(k)] = corner(k, &CellDiagnostics::radius);

    const double s = g.s_face(i);
    const double alpha = geo.alpha_face(i);
    const double dth = g.delta_theta();
    for (int k = 0; k <= nt; ++k) {
      const int kk = k % nt;
      const double r = ring[static_cast<std::size_t>(kk)];
      const double rp = ring[static_cast<std::size_t>((kk + 1) % nt)];
      const double rm = ring[static_cast<std::size_t>((kk + nt - 1) % nt)];
      const double rt = (rp - rm) / (2.0 * dth);
      const double rtt = (rp - 2.0 * r + rm) / (dth * dth);
      const double theta = g.theta_face(kk);  // seam duplicates k = 0 exactly

      const std::size_t idx = static_cast<std::size_t>(i) * static_cast<std::size_t>(nt + 1) + static_cast<std::size_t>(k);
      out.radius[idx] = r;
      out.r_over_ro[idx] = corner(kk, &CellDiagnostics::r_over_ro);
      out.u[idx] = corner(kk, &CellDiagnostics::u);
      out.p[idx] = corner(kk, &CellDiagnostics::p);
      out.u_tang[idx] = corner(kk, &CellDiagnostics::u_tang);
      out.position[idx] = geo.model().surface_point(s, theta, r);
      bool flat = false;
      out.velocity[idx] = wall_velocity(alpha, theta, r, rt, rtt, out.u[idx], out.u_tang[idx], &flat);
      out.degenerate[idx] = flat ? 1 : 0;
    }
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ProbeWriter::ProbeWriter(const std::filesystem::path& path) : path_(path), out_(path) {
  if (!out_) throw Error("cannot open probe file " + path.string());
  out_ << kHeader << '\n';
}

void ProbeWriter::write(double t, double s, double theta, const CellDiagnostics& d) {
  out_ << format_number(t) << ',' << format_number(s) << ',' << format_number(theta) << ','
       << format_number(d.radius) << ',' << format_number(d.r_over_ro) << ',' << format_number(d.u) << ','
       << format_number(d.omega) << ',' << format_number(d.p) << ',' << format_number(d.u_tang) << '\n';
  if (!out_) throw Error("write failed on " + path_.string());
}

void write_vtk(const std::filesystem::path& path, const SurfaceGrid& grid, const std::string& title) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open VTK file " + path.string());
  const std::size_t np = grid.position.size();
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_GRID\n";
  out << "DIMENSIONS " << grid.n_theta_points << ' ' << grid.n_s_points << " 1\n";
  out << "POINTS " << np << " double\n";
  for (const Vec3& p : grid.position) {
    out << format_number(p.x) << ' ' << format_number(p.y) << ' ' << format_number(p.z) << '\n';
  }
  out << "POINT_DATA " << np << '\n';
  auto scalars = [&](const char* name, const std::vector<double>& v) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double x : v) out << format_number(x) << '\n';
  };
  scalars("R", grid.radius);
  scalars("R_over_Ro", grid.r_over_ro);
  scalars("u", grid.u);
  scalars("p", grid.p);
  scalars("U_Tang", grid.u_tang);
  out << "VECTORS velocity double\n";
  for (const Vec3& v : grid.velocity) {
    out << format_number(v.x) << ' ' << format_number(v.y) << ' ' << format_number(v.z) << '\n';
  }
  if (!out) throw Error("write failed on " + path.string());
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& text) { return fnv1a(text.data(), text.size()); }

std::uint64_t field_hash(const ConservedField& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::size_t begin = f.index(0, 0);
  const std::size_t count = static_cast<std::size_t>(f.n_s) * static_cast<std::size_t>(f.n_theta);
  for (const auto* v : {&f.a, &f.q1, &f.q2}) h = fnv1a(v->data() + begin, count * sizeof(double), h);
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open manifest " + path.string());
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
  if (!out) throw Error("write failed on " + path.string());
}

}  // namespace vessel2d
