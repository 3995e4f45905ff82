#pragma once

#include <functional>
#include <string>
#include <vector>

namespace vessel2d {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Structured (s, theta) grid. Face i sits at s = i*ds; cell j spans [j*ds, (j+1)*ds].
/// Theta is periodic on [0, 2*pi); cell k spans [k*dtheta, (k+1)*dtheta].
struct GridSpec {
  static constexpr int ghost_layers = 2;

  int n_s = 0;
  int n_theta = 0;
  double s_length = 0.0;

  double delta_s() const { return s_length / n_s; }
  double delta_theta() const { return 2.0 * kPi / n_theta; }
  double s_center(int j) const { return (j + 0.5) * delta_s(); }
  double s_face(int i) const { return i * delta_s(); }
  double theta_center(int k) const { return (k + 0.5) * delta_theta(); }
  double theta_face(int k) const { return k * delta_theta(); }

  /// Throws ConfigError when the invariants fail.
  void validate() const;
};

struct PhysicalConstants {
  double rho = 1050.0;     // kg/m^3
  double nu = 0.004;       // Pa s
  double g = 9.81;         // m/s^2
  double beta = 2.0;
  double gamma_s = 9.0;
  double gamma_theta = 2.0;

  void validate() const;
};

/// A = R^2/2 - R^3 sin(theta) alpha' / 3. Throws GeometryError if R*|alpha'| >= 1.
double area_from_radius(double r, double theta, double alpha_prime);

/// Inverse of area_from_radius on [0, 1/|alpha'|).
double radius_from_area(double a, double theta, double alpha_prime);

/// Gamma = R sin(theta) alpha'.
double gamma_parameter(double r, double theta, double alpha_prime);

// Same maps written in terms of kappa = sin(theta) alpha', so that Gamma = R kappa.
double area_from_radius_kappa(double r, double kappa);
double radius_from_area_kappa(double a, double kappa);

/// Piecewise-linear function of s. Extended linearly before the first knot and flat after the last.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> knots, std::vector<double> values);
  static PiecewiseLinear constant(double value);

  double operator()(double s) const;
  double derivative(double s) const;

  /// Integrals of cos(f) and sin(f) over [0, s]; exact for linear pieces.
  double integral_cos(double s) const;
  double integral_sin(double s) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t segment(double s) const;
  template <class Fn>
  double integrate(double s, Fn&& antiderivative) const;

  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Analytic vessel: centerline angle alpha(s), rest radius R_o(s, theta), elasticity G_o(s, theta).
struct GeometryModel {
  std::string name;
  double s_length = 0.0;
  PiecewiseLinear alpha;
  std::function<double(double, double)> r_o;
  std::function<double(double, double)> g_o;

  /// Centerline c(s) = (x_o, 0, z_o) with c(0) = 0.
  Vec3 centerline(double s) const;
  /// Surface point at distance r from the centerline.
  Vec3 surface_point(double s, double theta, double r) const;
};

/// Interface sample of the rest configuration.
struct FaceSample {
  double r_o = 0.0;
  double g_o = 0.0;
  double a_o = 0.0;
  double kappa = 0.0;  // sin(theta) * alpha' at the interface
};

/// Cell-center quantities derived from interface samples.
struct CellSample {
  double r_o = 0.0;
  double g_o = 0.0;
  double a_o = 0.0;
  double alpha = 0.0;
  double sin_alpha = 0.0;
  double alpha_p = 0.0;
  double alpha_pp = 0.0;
  double kappa = 0.0;
  double sin_theta = 0.0;
  double cos_theta = 0.0;
  double dg_ds = 0.0;
  double da_ds = 0.0;
  double dg_dtheta = 0.0;
  double da_dtheta = 0.0;
};

/// Geometry sampled on a grid, including two ghost layers in s. Immutable after construction.
class VesselGeometry {
 public:
  VesselGeometry(GeometryModel model, const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  const GeometryModel& model() const { return model_; }

  /// s-interface i in [-G, n_s + G], theta cell k.
  const FaceSample& s_face(int i, int k) const { return s_faces_[s_face_index(i, k)]; }
  /// Lower theta-interface of cell (j, k), j in [-G, n_s + G - 1]; k wraps.
  const FaceSample& theta_face(int j, int k) const { return theta_faces_[cell_index(j, wrap(k))]; }
  const CellSample& cell(int j, int k) const { return cells_[cell_index(j, wrap(k))]; }

  double alpha_face(int i) const { return alpha_f_[static_cast<std::size_t>(i + kOffset + 1)]; }
  double alpha_prime_face(int i) const { return alpha_pf_[static_cast<std::size_t>(i + kOffset)]; }

  /// Largest R_o |alpha'| over all samples.
  double max_curvature_product() const { return max_validity_; }
  /// Mean cell-center R_o over interior cells.
  double mean_r_o() const { return mean_r_o_; }
  double max_a_o() const { return max_a_o_; }

  int wrap(int k) const {
    const int n = grid_.n_theta;
    return ((k % n) + n) % n;
  }
  std::size_t cell_index(int j, int k) const {
    return static_cast<std::size_t>(j + kOffset) * static_cast<std::size_t>(grid_.n_theta) +
           static_cast<std::size_t>(k);
  }

 private:
  static constexpr int kOffset = GridSpec::ghost_layers;

  std::size_t s_face_index(int i, int k) const {
    return static_cast<std::size_t>(i + kOffset) * static_cast<std::size_t>(grid_.n_theta) +
           static_cast<std::size_t>(wrap(k));
  }

  GeometryModel model_;
  GridSpec grid_;
  std::vector<double> alpha_f_;   // faces -G-1 .. n_s+G+1
  std::vector<double> alpha_pf_;  // faces -G .. n_s+G
  std::vector<FaceSample> s_faces_;
  std::vector<FaceSample> theta_faces_;
  std::vector<CellSample> cells_;
  double max_validity_ = 0.0;
  double mean_r_o_ = 0.0;
  double max_a_o_ = 0.0;
};

// Scenario geometries.

struct AortaSegment {
  double length_cm;
  double r_left_cm;
  double r_right_cm;
  double c_left;   // m/s
  double c_right;  // m/s
};

/// The ten-segment aorta table (I..X).
const std::vector<AortaSegment>& aorta_table();
double aorta_length();  // m

/// G_o = (4/3) E_Y h_d / r_d with E_Y = (3/2) rho r_d c_d^2 / h_d, i.e. 2 rho c_d^2.
double elasticity_from_wave_speed(double c_d, double rho);

/// Elliptic-like cross-section factor.
double cross_section_shape(double theta, double xi);

struct PresetOptions {
  double rho = 1050.0;
  double xi = 0.4;
  /// Wave speed that fixes G_o for the tapered horizontal vessel.
  double horizontal_wave_speed = 5.0;
};

const std::vector<std::string>& preset_names();

/// Throws ConfigError on an unknown preset.
GeometryModel build_scenario_model(const std::string& preset, const PresetOptions& opts = {});
VesselGeometry build_scenario_geometry(const std::string& preset, const GridSpec& grid,
                                       const PresetOptions& opts = {});

/// Geometry from tabulated axial profiles (linear interpolation, clamped ends).
struct TabulatedGeometry {
  std::vector<double> s;        // m, strictly increasing
  std::vector<double> alpha;    // rad
  std::vector<double> r_o;      // m
  std::vector<double> g_o;      // Pa
  double xi = 0.0;
};
GeometryModel build_tabulated_model(const TabulatedGeometry& table);

}  // namespace vessel2d
