#include "vessel2d/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vessel2d/errors.hpp"

namespace vessel2d {

double upsilon1(const ClosureSet& c, const AreaSensitivities& d) {
  const double t = (c.psi_s1 - 0.5 * d.psi_so) / c.psi_so;
  return t * t + (d.psi_s1 - c.psi_s1) / c.psi_so;
}

double upsilon2(const ClosureSet& c, const AreaSensitivities& d) {
  const double t = c.psi_th2 - 0.5 * d.a_theta_rel;
  return t * t + (d.psi_th2 + c.psi_th2 * d.a_theta_rel - c.psi_th2);
}

WaveSpeeds wave_speeds(double c2, double u, double omega, double a_theta, const ClosureSet& c,
                       const AreaSensitivities& d) {
  WaveSpeeds w;
  w.upsilon1 = upsilon1(c, d);
  w.upsilon2 = upsilon2(c, d);

  const double arg_s = c2 / c.psi_so + w.upsilon1 * u * u;
  const double arg_th = c2 / a_theta + w.upsilon2 * omega * omega;
  if (!(arg_s >= 0.0) || !(arg_th >= 0.0)) {
    std::ostringstream os;
    os << "loss of hyperbolicity: complex wave speeds (u=" << u << ", omega=" << omega
       << ", Gamma=" << c.gamma << ")";
    throw HyperbolicityError(os.str(), c2, u, omega, c.gamma);
  }

  const double mid_s = (2.0 * c.psi_s1 - d.psi_so) / (2.0 * c.psi_so) * u;
  const double root_s = std::sqrt(arg_s);
  w.lambda0_s = c.psi_th1 * u;
  w.lambdaP_s = mid_s + root_s;
  w.lambdaM_s = mid_s - root_s;

  const double mid_th = 0.5 * (2.0 * c.psi_th2 - d.a_theta_rel) * omega;
  const double root_th = std::sqrt(arg_th);
  w.lambda0_th = c.psi_s2 / c.psi_so * omega;
  w.lambdaP_th = mid_th + root_th;
  w.lambdaM_th = mid_th - root_th;
  return w;
}

WaveSpeeds wave_speeds(const PointState& st, const ClosureSet& c, const PressureState& ps, double rho) {
  const double c2 = st.area * ps.dp_dA / rho;
  const double a_theta = c.a_theta_over_r2 * st.radius * st.radius;
  return wave_speeds(c2, st.u, st.omega, a_theta, c, area_sensitivities(c));
}

QuasilinearMatrices assemble_quasilinear(const PointState& st, const ClosureSet& c,
                                         const PressureState& ps, double rho) {
  const AreaSensitivities d = area_sensitivities(c);
  const double c2 = st.area * ps.dp_dA / rho;
  const double u = st.u;
  const double om = st.omega;
  const double L = st.l;
  const double so = c.psi_so;
  const double s1 = c.psi_s1;
  const double s2 = c.psi_s2;
  const double t1 = c.psi_th1;
  const double t2 = c.psi_th2;
  const double at = c.a_theta_over_r2 * st.radius * st.radius;
  const double a_dat = d.a_theta_rel * at;  // A d1(A_theta)

  QuasilinearMatrices q;
  Mat3& ms = q.m_s;
  ms[0] = {-d.psi_so / so * u, 1.0 / so, 0.0};
  {
    const double d_term = (2.0 * so * d.psi_so + so * so) / s1 - so * so * d.psi_s1 / (s1 * s1);
    ms[1] = {c2 - (s1 / so) * (s1 / so) * d_term * u * u, 2.0 * s1 / so * u, 0.0};
  }
  {
    const double d_term = (d.psi_so + so) / t1 - so * d.psi_th1 / (t1 * t1);
    ms[2] = {-(t1 * t1 / so) * d_term * u * L, t1 / so * L, t1 * u};
  }

  Mat3& mt = q.m_theta;
  mt[0] = {-d.a_theta_rel * om, 0.0, 1.0 / at};
  {
    const double d_term = (d.psi_so * at + so * at + so * a_dat) / s2 - so * at * d.psi_s2 / (s2 * s2);
    mt[1] = {-(s2 * s2 / (so * at)) * d_term * u * om, s2 / so * om, s2 / at * u};
  }
  {
    const double d_term = (at + a_dat) / t2 - at * d.psi_th2 / (t2 * t2);
    mt[2] = {c2 - t2 * t2 * d_term * om * om, 0.0, 2.0 * t2 * om};
  }
  return q;
}

namespace {

bool near(double a, double b, double scale) {
  return std::abs(a - b) < std::max(1e-14, 1e-10 * scale);
}

}  // namespace

std::array<Vec3d, 3> eigenvectors_s(const Mat3& m, const WaveSpeeds& w) {
  const double scale = std::max({std::abs(w.lambda0_s), std::abs(w.lambdaP_s), std::abs(w.lambdaM_s)});
  auto vec = [&](double lam) -> Vec3d {
    const double a11 = m[0][0];
    const double a12 = m[0][1];
    if (near(m[2][2], lam, scale)) {
      // lambda_o coincides with lambda: third component decouples.
      return {a12, lam - a11, 0.0};
    }
    return {a12, lam - a11, ((a11 - lam) * m[2][1] - a12 * m[2][0]) / (m[2][2] - lam)};
  };
  return {Vec3d{0.0, 0.0, 1.0}, vec(w.lambdaP_s), vec(w.lambdaM_s)};
}

std::array<Vec3d, 3> eigenvectors_theta(const Mat3& m, const WaveSpeeds& w) {
  const double scale =
      std::max({std::abs(w.lambda0_th), std::abs(w.lambdaP_th), std::abs(w.lambdaM_th)});
  auto vec = [&](double lam) -> Vec3d {
    const double a11 = m[0][0];
    const double a13 = m[0][2];
    if (near(m[1][1], lam, scale)) {
      return {a13, 0.0, lam - a11};
    }
    return {a13, (m[1][0] * a13 + m[1][2] * (lam - a11)) / (lam - m[1][1]), lam - a11};
  };
  return {Vec3d{0.0, 1.0, 0.0}, vec(w.lambdaP_th), vec(w.lambdaM_th)};
}

HyperbolicityCheck hyperbolicity_sufficient(double s1, double s2, double t1) {
  HyperbolicityCheck h;
  h.residuals[0] = s1 - 1.0;
  h.residuals[1] = 20.0 * s1 * s1 + t1 * (9.0 * s2 + 5.0 * t1) - s1 * (6.0 + 9.0 * s2 + 19.0 * t1);
  h.residuals[2] = 16.0 * std::pow(s1, 4) - s2 * t1 * t1 * t1 -
                   4.0 * s1 * s1 * s1 * (5.0 + 2.0 * s2 + 4.0 * t1) +
                   s1 * t1 * (3.0 * s2 * (-3.0 + t1) + (-5.0 + t1) * t1) +
                   s1 * s1 * (3.0 + t1 * (19.0 + 2.0 * t1) + s2 * (9.0 + 6.0 * t1));
  h.residuals[3] = -32.0 * s1 * s1 - 27.0 * s2 * s2 - 18.0 * s2 * t1 + t1 * t1 +
                   4.0 * s1 * (-3.0 + 18.0 * s2 + 4.0 * t1);
  h.ok = std::all_of(h.residuals.begin(), h.residuals.end(), [](double r) { return r > 0.0; });
  return h;
}

HyperbolicityCheck hyperbolicity_sufficient(const ClosureSet& c) {
  return hyperbolicity_sufficient(c.psi_s1, c.psi_s2, c.psi_th1);
}

CardanoCoefficients cardano_discriminant(double c2sq, double u, double a_theta, const ClosureSet& c,
                                         double n_s, double n_theta, double r_ref) {
  const double s1 = c.psi_s1;
  const double s2 = c.psi_s2;
  const double t1 = c.psi_th1;
  const double w = r_ref * r_ref / a_theta;
  CardanoCoefficients k;
  k.c2 = (2.0 * s1 + t1) * u * n_s;
  k.c1 = c2sq * (n_s * n_s + w * n_theta * n_theta) - (s1 + 2.0 * s1 * t1) * u * u * n_s * n_s;
  k.c0 = (-c2sq + s1 * u * u) * t1 * n_s * n_s * n_s * u +
         c2sq * w * (-2.0 * s1 + s2) * n_theta * n_theta * u * n_s;
  k.discriminant = -27.0 * k.c0 * k.c0 - 18.0 * k.c2 * k.c1 * k.c0 + 4.0 * k.c1 * k.c1 * k.c1 -
                   4.0 * k.c2 * k.c2 * k.c2 * k.c0 + k.c2 * k.c2 * k.c1 * k.c1;
  return k;
}

}  // namespace vessel2d
