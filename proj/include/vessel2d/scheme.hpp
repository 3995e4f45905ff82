#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vessel2d/closures.hpp"
#include "vessel2d/geometry.hpp"

namespace vessel2d {

/// Cell averages of (A, psi_so A u, A L), stored row-major over (j, k) with G ghost rows on each side in s.
struct ConservedField {
  ConservedField() = default;
  explicit ConservedField(const GridSpec& grid);

  int n_s = 0;
  int n_theta = 0;
  std::vector<double> a;
  std::vector<double> q1;
  std::vector<double> q2;
  double time = 0.0;

  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j + GridSpec::ghost_layers) * static_cast<std::size_t>(n_theta) +
           static_cast<std::size_t>(k);
  }
  double& A(int j, int k) { return a[index(j, k)]; }
  double A(int j, int k) const { return a[index(j, k)]; }
  double& Q1(int j, int k) { return q1[index(j, k)]; }
  double Q1(int j, int k) const { return q1[index(j, k)]; }
  double& Q2(int j, int k) { return q2[index(j, k)]; }
  double Q2(int j, int k) const { return q2[index(j, k)]; }
};

/// Generalized minmod of three slopes.
double minmod3(double z1, double z2, double z3);

enum class BoundaryKind {
  neumann,          // zero-order extrapolation of A/A_o, Q1, Q2
  dirichlet_inlet,  // R = R_o, prescribed u(t), omega = 0
  wall,             // mirror ghosts, zero mass flux through the end face
  fixed,            // ghost values frozen from a reference state
};

BoundaryKind parse_boundary_kind(const std::string& name);
std::string to_string(BoundaryKind kind);

struct BoundaryConditions {
  BoundaryKind left = BoundaryKind::neumann;
  BoundaryKind right = BoundaryKind::neumann;
  std::function<double(double)> inlet_velocity;  // used by dirichlet_inlet
};

struct NumericsConfig {
  double phi = 1.3;
  double cfl = 0.25;
  bool positivity = true;
  /// Dry threshold. Non-positive selects 1e-10 * max(A_o).
  double a_threshold = 0.0;
  /// Time step used when every local speed vanishes.
  double dt_max = 1e-3;

  void validate() const;
};

/// Reconstructed state on one side of an interface.
struct FaceState {
  double a = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double u = 0.0;
  double l = 0.0;
  double omega = 0.0;
  double radius = 0.0;
  double gamma = 0.0;
  double ap_hat_rho = 0.0;  // A p_hat / rho
  double speed_max = 0.0;  // max of the normal-direction eigenvalues and u (or omega)
  double speed_min = 0.0;
  std::array<double, 3> flux{};
};

/// Interface data of the last right-hand-side evaluation.
/// s-faces: index i * n_theta + k, i in [0, n_s]. theta-faces: index j * n_theta + k for the lower
/// face of cell (j, k).
struct InterfaceData {
  std::vector<FaceState> s_minus;
  std::vector<FaceState> s_plus;
  std::vector<double> a_plus;
  std::vector<double> a_minus;
  std::vector<std::array<double, 3>> h_s;
  std::vector<FaceState> th_minus;
  std::vector<FaceState> th_plus;
  std::vector<double> b_plus;
  std::vector<double> b_minus;
  std::vector<std::array<double, 3>> h_th;
};

struct SpeedBounds {
  double a = 0.0;  // max over s-faces of max(a+, -a-)
  double b = 0.0;  // max over theta-faces of max(b+, -b-)
};

/// dt = cfl * min(ds/a, dtheta/b), or dt_max when both speeds vanish.
double cfl_dt(double a, double b, double ds, double dtheta, double cfl, double dt_max);

/// Central-upwind flux from one-sided speeds.
std::array<double, 3> central_upwind_flux(const std::array<double, 3>& f_minus,
                                          const std::array<double, 3>& f_plus,
                                          const std::array<double, 3>& u_minus,
                                          const std::array<double, 3>& u_plus, double s_plus,
                                          double s_minus);

struct StepInfo {
  double dt = 0.0;
  SpeedBounds speeds;
};

class Solver {
 public:
  Solver(const VesselGeometry& geometry, const PhysicalConstants& constants, const NumericsConfig& numerics,
         BoundaryConditions bc);

  const VesselGeometry& geometry() const { return *geo_; }
  const PhysicalConstants& constants() const { return constants_; }
  const NumericsConfig& numerics() const { return numerics_; }
  const ClosureModel& closures() const { return closures_; }
  double a_threshold() const { return a_th_; }

  /// Zero field sized for the grid.
  ConservedField make_field() const;
  /// Rest state A = A_o, Q1 = Q2 = 0 including ghosts.
  ConservedField rest_field() const;

  /// Reference state for BoundaryKind::fixed.
  void set_fixed_state(const ConservedField& reference);
  /// Fill ghost rows at time field.time.
  void apply_boundaries(ConservedField& field) const;

  /// Semi-discrete right-hand side. Ghost rows of `field` must be filled. Interior rows of `dudt`
  /// are written. Failures raise CellError carrying the cell and time.
  SpeedBounds rhs(const ConservedField& field, ConservedField& dudt);

  /// One SSP-RK2 step. dt satisfies the CFL bound at both stages and is clipped so that
  /// field.time does not pass t_end.
  StepInfo step(ConservedField& field, double t_end);

  /// Interfaces of the last rhs call.
  const InterfaceData& interfaces() const { return faces_; }

  /// Worker count for rhs; results do not depend on it.
  void set_threads(int n) { threads_ = n < 1 ? 1 : n; }
  int threads() const { return threads_; }

  /// Inlet velocity at time t for Dirichlet boundaries.
  double inlet_velocity(double t) const;

 private:
  struct Rec {
    double a = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
  };

  void reconstruct_row(const ConservedField& f, int j);
  void faces_s_row(int i);
  void faces_theta_row(int j);
  void sources_row(const ConservedField& f, ConservedField& dudt, int j) const;
  FaceState face_state(double a, double q1, double q2, const FaceSample& fs, bool s_direction) const;
  void fill_ghost(ConservedField& f, int j_ghost, int j_src, BoundaryKind kind, bool mirror) const;
  void for_rows(int lo, int hi, const std::function<void(int)>& fn) const;

  const VesselGeometry* geo_;
  PhysicalConstants constants_;
  NumericsConfig numerics_;
  BoundaryConditions bc_;
  ClosureModel closures_;
  double a_th_ = 0.0;
  int threads_ = 1;
  double time_ = 0.0;  // time of the field in the current rhs call
  bool have_fixed_ = false;
  ConservedField fixed_;

  std::vector<double> cal_a_;  // A / A_o at every cell incl. ghosts
  std::vector<Rec> rec_e_, rec_w_, rec_n_, rec_s_;
  InterfaceData faces_;
  ConservedField k1_;
  ConservedField k2_;
  ConservedField stage_;
};

}  // namespace vessel2d
