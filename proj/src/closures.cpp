#include "vessel2d/closures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vessel2d/errors.hpp"
#include "vessel2d/geometry.hpp"

namespace vessel2d {

namespace {

constexpr double kSingularTol = 1e-14;

void check_denominator(double d, const char* what, double gamma) {
  if (std::abs(d) < kSingularTol) {
    std::ostringstream os;
    os << "closure " << what << " is singular at Gamma = " << gamma;
    throw ClosureSingularityError(os.str());
  }
}

double half_beta_power(double x, double half_beta) {
  return half_beta == 1.0 ? x : std::pow(x, half_beta);
}

}  // namespace

double area_lever(double gamma) { return (0.5 - gamma / 3.0) / (1.0 - gamma); }

AreaSensitivities area_sensitivities(const ClosureSet& c) {
  AreaSensitivities s;
  const double g = c.gamma;
  if (g == 0.0) {
    s.a_theta_rel = 1.0;  // A_theta = k R^2 and A = R^2/2
    return s;
  }
  const double m = area_lever(g);
  const double gm = g * m;
  s.psi_so = c.dpsi_so * gm;
  s.psi_s1 = c.dpsi_s1 * gm;
  s.psi_s2 = c.dpsi_s2 * gm;
  s.psi_th1 = c.dpsi_th1 * gm;
  s.psi_th2 = c.dpsi_th2 * gm;
  s.a_theta_rel = m * (c.da_theta_over_r2 * g + 2.0 * c.a_theta_over_r2) / c.a_theta_over_r2;
  return s;
}

ClosureModel::ClosureModel(double gamma_s, double gamma_theta) : gs_(gamma_s), gt_(gamma_theta) {
  const double gs = gs_;
  const double gt = gt_;
  c_so1_ = 4.0 * (gs + 2.0) / (3.0 * (gs + 3.0));
  c_so2_ = (gs + 2.0) / (2.0 * (gs + 4.0));
  k_s1_ = (gs + 2.0) / (gs + 1.0);
  c_s1_ = 2.0 * (2.0 * gs + 2.0) * (gs + 2.0) / (3.0 * (2.0 * gs + 3.0) * (gs + 3.0));
  k_s2_ = (gs + 2.0) / gs *
          (1.0 - (gt + 2.0) * (2.0 * gt + gs + 2.0) / (2.0 * (gt + gs + 1.0) * (gt + gs + 2.0)));
  e1_ = 2.0 * (gt + gs + 1.0) * (3.0 * gt * gt + 2.0 * gt * gs + 11.0 * gt + 3.0 * gs + 9.0) /
        ((gt + 3.0) * (gt + gs + 3.0) * (3.0 * gt + 2.0 * gs + 4.0));
  e2_ = (gt + 2.0) * (gt + gs + 1.0) * (gt + gs + 2.0) *
        (3.0 * gt * gt + 2.0 * gs * gt + 15.0 * gt + 4.0 * gs + 16.0) /
        ((gt + 3.0) * (gt + 4.0) * (gt + gs + 3.0) * (gt + gs + 4.0) * (3.0 * gt + 2.0 * gs + 4.0));
  d1_ = (2.0 * gt + 3.0) / (2.0 * (gt + 3.0));
  d2_ = (gt + 3.0) * (2.0 * gt + 5.0) / (2.0 * (gt + 2.0) * (gt + 5.0));
  k_t1_ = (gs + 2.0) / gs *
          (1.0 - (gt + 3.0) * (gt + 4.0) * (2.0 * gt + gs + 4.0) /
                     (2.0 * (gt + 2.0) * (gt + gs + 3.0) * (gt + gs + 4.0)));
  k_t2_ = (gt + 3.0) * (gt + 4.0) * (5.0 * gt + 6.0) / (16.0 * (gt + 2.0) * (2.0 * gt + 3.0));
  f1_ = 2.0 * (5.0 * gt * gt + 14.0 * gt + 10.0) / ((2.0 * gt + 5.0) * (5.0 * gt + 6.0));
  k_at_ = (gt + 2.0) * (gt + 2.0) / ((gt + 3.0) * (gt + 4.0));
  k_curv_ = 8.0 * (gs + 2.0) * (gs + 2.0) / ((gs + 3.0) * (2.0 * gs + 3.0));
  k_fs_ = gs + 2.0;
  k_ft_ = (gt + 1.0) * (gt + 3.0) * (gt + 4.0) / (4.0 * (gt + 2.0));
  zero_ = evaluate(0.0);
  zero_sens_ = area_sensitivities(zero_);
}

ClosureSet ClosureModel::evaluate(double g) const {
  ClosureSet c;
  c.gamma = g;

  const double lin = 1.0 - 2.0 * g / 3.0;  // common factor 1 - 2Gamma/3
  const double dlin = -2.0 / 3.0;
  const double D1 = 1.0 - d1_ * g;
  const double D2 = 1.0 - d2_ * g;
  check_denominator(D1, "psi_s2/psi_th2/A_theta", g);
  check_denominator(D2, "psi_th1/psi_th2", g);

  c.psi_so = 1.0 - c_so1_ * g + c_so2_ * g * g;
  c.dpsi_so = -c_so1_ + 2.0 * c_so2_ * g;

  const double b1 = 1.0 - c_s1_ * g;
  c.psi_s1 = k_s1_ * lin * b1;
  c.dpsi_s1 = k_s1_ * (dlin * b1 - c_s1_ * lin);

  {
    const double P = 1.0 - e1_ * g + e2_ * g * g;
    const double dP = -e1_ + 2.0 * e2_ * g;
    const double N = lin * P;
    const double dN = dlin * P + lin * dP;
    c.psi_s2 = k_s2_ * N / D1;
    c.dpsi_s2 = k_s2_ * (dN * D1 + N * d1_) / (D1 * D1);
  }

  c.psi_th1 = k_t1_ * lin / D2;
  c.dpsi_th1 = k_t1_ * (dlin * D2 + lin * d2_) / (D2 * D2);

  {
    const double b2 = 1.0 - f1_ * g;
    const double N = lin * b2;
    const double dN = dlin * b2 - f1_ * lin;
    const double D = D1 * D2;
    const double dD = -d1_ * D2 - d2_ * D1;
    c.psi_th2 = k_t2_ * N / D;
    c.dpsi_th2 = k_t2_ * (dN * D - N * dD) / (D * D);
  }

  c.a_theta_over_r2 = k_at_ * D2 / D1;
  c.da_theta_over_r2 = k_at_ * (-d2_ * D1 + d1_ * D2) / (D1 * D1);
  return c;
}

double ClosureModel::axial_friction(double gamma) const {
  const double w = 1.0 - gamma;
  return k_fs_ * w * w;
}

double ClosureModel::angular_friction(double gamma) const {
  return k_ft_ * (1.0 - gamma) / (1.0 - d2_ * gamma);
}

ClosureSet coriolis(double gamma, double gamma_s, double gamma_theta) {
  if (!(std::abs(gamma) <= 1.0)) {
    std::ostringstream os;
    os << "|Gamma| = " << std::abs(gamma) << " exceeds 1";
    throw GeometryError(os.str());
  }
  return ClosureModel(gamma_s, gamma_theta).evaluate(gamma);
}

// Pressure

double area_times_p_hat(double a, double a_o, double g_o, double beta) {
  const double hb = 0.5 * beta;
  const double ap = a * g_o * (half_beta_power(a / a_o, hb) - 1.0);
  return beta / (beta + 2.0) * (ap - g_o * (a_o - a));
}

double area_times_dp_dA(double a, double a_o, double g_o, double beta) {
  const double hb = 0.5 * beta;
  return g_o * hb * half_beta_power(a / a_o, hb);
}

PressureState pressure(double a, double a_o, double g_o, double beta) {
  if (!(a > 0.0)) {
    std::ostringstream os;
    os << "pressure evaluated at collapsed area A = " << a;
    throw CollapsedVesselError(os.str());
  }
  const double hb = 0.5 * beta;
  const double ratio = half_beta_power(a / a_o, hb);
  PressureState s;
  s.p = g_o * (ratio - 1.0);
  const double w = beta / (beta + 2.0);
  s.p_hat = w * s.p - w * g_o * (a_o - a) / a;
  s.p_bar = s.p - s.p_hat;
  s.dp_dA = g_o * hb * ratio / a;
  return s;
}

PressureGradients pressure_source_gradients(const PressureState& ps, double a_o, double g_o,
                                            double dg_ds, double da_ds, double dg_dtheta,
                                            double da_dtheta) {
  PressureGradients out;
  out.ds = ps.p_bar / g_o * dg_ds - ps.p_hat / a_o * da_ds;
  out.dtheta = ps.p_bar / g_o * dg_dtheta - ps.p_hat / a_o * da_dtheta;
  return out;
}

SourceTerms source_terms(const SourceInput& in, const PhysicalConstants& c, const ClosureModel& model) {
  SourceTerms out;
  const double a = in.area;

  // A d2 p_bar written through A p_hat and A p_bar so that it stays finite as A -> 0.
  const double ap_hat = area_times_p_hat(a, in.a_o, in.g_o, c.beta);
  const double ap = a * in.g_o * (half_beta_power(a / in.a_o, 0.5 * c.beta) - 1.0);
  const double ap_bar = ap - ap_hat;
  const double a_dpbar_ds = ap_bar / in.g_o * in.dg_ds - ap_hat / in.a_o * in.da_ds;
  const double a_dpbar_dth = ap_bar / in.g_o * in.dg_dtheta - ap_hat / in.a_o * in.da_dtheta;

  out.s2 = -a_dpbar_ds / c.rho - c.g * a * in.sin_alpha;
  out.s3 = -a_dpbar_dth / c.rho;

  if (in.u != 0.0 || in.l != 0.0) {
    const double r = std::max(in.radius, kCollapseRadius);
    const double u2 = in.u * in.u;
    const double kc = model.curvature_coefficient();
    out.s2 -= kc * (a / r) * (a / r) * r * in.sin_theta * in.alpha_pp * u2;
    out.s3 -= kc * (a / r) * (a / r) * r * in.cos_theta * in.alpha_p * u2;
    const double wall = 2.0 * a / (r * r);
    out.s2 -= c.nu / c.rho * model.axial_friction(in.gamma) * wall * in.u;
    out.s3 -= c.nu / c.rho * model.angular_friction(in.gamma) * wall * in.l;
  }
  return out;
}

}  // namespace vessel2d
