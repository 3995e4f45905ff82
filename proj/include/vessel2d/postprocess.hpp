#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "vessel2d/geometry.hpp"
#include "vessel2d/scheme.hpp"

namespace vessel2d {

/// Radially averaged linear tangential velocity (1/A) int r V_theta |J| dr for the angular profile
/// V*(x) = (1 - c x) x^(n-1), x = r/R, c = n/(n+1), n = gamma_theta:
///   U = omega R I(n+1)/I(n),  I(m) = 1/(m+1) - (c+Gamma)/(m+2) + c Gamma/(m+3).
double tangential_velocity(double omega, double radius, double gamma, double gamma_theta);

/// Primitive diagnostics at one cell center.
struct CellDiagnostics {
  double radius = 0.0;
  double r_over_ro = 0.0;
  double gamma = 0.0;
  double u = 0.0;
  double omega = 0.0;
  double p = 0.0;
  double u_tang = 0.0;
};

class Diagnostics {
 public:
  Diagnostics(const VesselGeometry& geometry, const PhysicalConstants& constants, double a_threshold = 0.0);

  /// Interior cells only.
  CellDiagnostics cell(const ConservedField& field, int j, int k) const;
  /// Bilinear interpolation between cell centers; theta is periodic, s is clamped to the centers.
  CellDiagnostics probe(const ConservedField& field, double s, double theta) const;

 private:
  const VesselGeometry* geo_;
  PhysicalConstants constants_;
  ClosureModel closures_;
  double a_th_;
};

/// Surface samples on the (n_s+1) x (n_theta+1) corner lattice, theta seam duplicated.
/// Point index is i * (n_theta+1) + k with i the s-interface.
struct SurfaceGrid {
  int n_s_points = 0;
  int n_theta_points = 0;
  std::vector<Vec3> position;
  std::vector<Vec3> velocity;
  std::vector<double> radius;
  std::vector<double> r_over_ro;
  std::vector<double> u;
  std::vector<double> p;
  std::vector<double> u_tang;
  std::vector<char> degenerate;  // curvature-radius denominator vanished; axial term only
};

/// Curvature radius of the cross-section curve r = R(theta); returns 0 when the denominator vanishes.
double cross_section_curvature_radius(double r, double r_theta, double r_theta_theta);

/// Three-dimensional wall velocity: axial unit vector times u plus the cross-section tangent
/// scaled by R_c/R/sqrt(1+(R_theta/R)^2) times U_Tang.
Vec3 wall_velocity(double alpha, double theta, double r, double r_theta, double r_theta_theta, double u,
                   double u_tang, bool* degenerate = nullptr);

SurfaceGrid surface_velocity_field(const ConservedField& field, const VesselGeometry& geometry,
                                   const PhysicalConstants& constants);

/// "%.17g" formatting.
std::string format_number(double v);

class ProbeWriter {
 public:
  static constexpr const char* kHeader = "t,s,theta,R,R_over_Ro,u,omega,p,U_Tang";

  ProbeWriter() = default;
  explicit ProbeWriter(const std::filesystem::path& path);
  bool is_open() const { return out_.is_open(); }
  void write(double t, double s, double theta, const CellDiagnostics& d);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Legacy ASCII VTK structured grid with point scalars and the velocity vector.
void write_vtk(const std::filesystem::path& path, const SurfaceGrid& grid, const std::string& title);

/// FNV-1a 64-bit.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a(const std::string& text);
/// Hash of the interior cell averages (A, Q1, Q2), bit-exact.
std::uint64_t field_hash(const ConservedField& field);
std::string hex64(std::uint64_t v);

/// Flat key = value manifest.
void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace vessel2d
