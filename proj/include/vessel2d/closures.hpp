#pragma once

namespace vessel2d {

/// Velocity-profile closures at a given Gamma, with their Gamma-derivatives.
struct ClosureSet {
  double gamma = 0.0;
  double psi_so = 0.0;
  double psi_s1 = 0.0;
  double psi_s2 = 0.0;
  double psi_th1 = 0.0;
  double psi_th2 = 0.0;
  double a_theta_over_r2 = 0.0;  // A_theta / R^2

  double dpsi_so = 0.0;
  double dpsi_s1 = 0.0;
  double dpsi_s2 = 0.0;
  double dpsi_th1 = 0.0;
  double dpsi_th2 = 0.0;
  double da_theta_over_r2 = 0.0;
};

/// A * d/dA of the closures at fixed (s, theta). With A(R) = R^2/2 - R^3 kappa/3 and Gamma = R kappa:
///   dR/dA = 1/(R(1-Gamma)),  dGamma/dA = Gamma/(R^2(1-Gamma)),
/// so A d/dA f(Gamma) = f'(Gamma) Gamma m(Gamma) with m = (1/2 - Gamma/3)/(1-Gamma).
struct AreaSensitivities {
  double psi_so = 0.0;
  double psi_s1 = 0.0;
  double psi_s2 = 0.0;
  double psi_th1 = 0.0;
  double psi_th2 = 0.0;
  double a_theta_rel = 0.0;  // A d(A_theta)/dA / A_theta
};

/// A dGamma/dA divided by Gamma.
double area_lever(double gamma);

AreaSensitivities area_sensitivities(const ClosureSet& c);

/// Closure evaluator with the profile exponents folded into precomputed coefficients.
class ClosureModel {
 public:
  ClosureModel(double gamma_s = 9.0, double gamma_theta = 2.0);

  /// Throws ClosureSingularityError when a denominator drops below 1e-14.
  ClosureSet evaluate(double gamma) const;
  /// Cached value at Gamma = 0.
  const ClosureSet& at_zero() const { return zero_; }
  const AreaSensitivities& sensitivities_at_zero() const { return zero_sens_; }

  double gamma_s() const { return gs_; }
  double gamma_theta() const { return gt_; }

  /// Coefficient of the curvature terms, 8(gs+2)^2/((gs+3)(2gs+3)).
  double curvature_coefficient() const { return k_curv_; }
  /// Axial wall friction factor: (gs+2)(1-Gamma)^2.
  double axial_friction(double gamma) const;
  /// Angular wall friction factor: (gt+1)(gt+3)(gt+4)/(4(gt+2)) (1-Gamma)/(1-d2 Gamma).
  double angular_friction(double gamma) const;

 private:
  double gs_;
  double gt_;
  double c_so1_, c_so2_;
  double k_s1_, c_s1_;
  double k_s2_, e1_, e2_;
  double d1_, d2_;
  double k_t1_;
  double k_t2_, f1_;
  double k_at_;
  double k_curv_;
  double k_fs_, k_ft_;
  ClosureSet zero_;
  AreaSensitivities zero_sens_;
};

/// Convenience wrapper around ClosureModel.
ClosureSet coriolis(double gamma, double gamma_s = 9.0, double gamma_theta = 2.0);

/// Transmural pressure and its well-balanced splitting p = p_hat + p_bar.
struct PressureState {
  double p = 0.0;
  double p_hat = 0.0;
  double p_bar = 0.0;
  double dp_dA = 0.0;
};

/// p = G_o((A/A_o)^(beta/2) - 1). Throws CollapsedVesselError for A <= 0.
PressureState pressure(double a, double a_o, double g_o, double beta);

/// A p_hat, finite down to A = 0.
double area_times_p_hat(double a, double a_o, double g_o, double beta);
/// A dp/dA = d(A p_hat)/dA, finite down to A = 0.
double area_times_dp_dA(double a, double a_o, double g_o, double beta);

struct PressureGradients {
  double ds = 0.0;      // d2 p_bar (Pa/m)
  double dtheta = 0.0;  // d3 p_bar (Pa/rad)
};

/// Explicit (s, theta) derivatives of p_bar from derivatives of G_o and A_o at fixed A.
PressureGradients pressure_source_gradients(const PressureState& ps, double a_o, double g_o,
                                            double dg_ds, double da_ds, double dg_dtheta,
                                            double da_dtheta);

struct SourceInput {
  double area = 0.0;
  double radius = 0.0;
  double gamma = 0.0;
  double u = 0.0;
  double l = 0.0;  // angular momentum per unit area-like, L
  double a_o = 0.0;
  double g_o = 0.0;
  double dg_ds = 0.0;
  double da_ds = 0.0;
  double dg_dtheta = 0.0;
  double da_dtheta = 0.0;
  double sin_alpha = 0.0;
  double alpha_p = 0.0;
  double alpha_pp = 0.0;
  double sin_theta = 0.0;
  double cos_theta = 0.0;
};

struct PhysicalConstants;

struct SourceTerms {
  double s2 = 0.0;
  double s3 = 0.0;
};

/// Radius below which the wall-friction terms use a clamped radius.
inline constexpr double kCollapseRadius = 1e-6;

/// Momentum sources of the conservation form, evaluated from one state (midpoint quadrature).
SourceTerms source_terms(const SourceInput& in, const PhysicalConstants& c, const ClosureModel& model);

}  // namespace vessel2d
