#pragma once

#include <array>

#include "vessel2d/closures.hpp"

namespace vessel2d {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3d = std::array<double, 3>;

/// Local flow state at one point.
struct PointState {
  double area = 0.0;
  double radius = 0.0;
  double u = 0.0;
  double omega = 0.0;
  double l = 0.0;  // L = A_theta * omega
};

struct WaveSpeeds {
  double lambda0_s = 0.0;
  double lambdaP_s = 0.0;
  double lambdaM_s = 0.0;
  double lambda0_th = 0.0;
  double lambdaP_th = 0.0;
  double lambdaM_th = 0.0;
  double upsilon1 = 0.0;
  double upsilon2 = 0.0;
};

double upsilon1(const ClosureSet& c, const AreaSensitivities& d);
double upsilon2(const ClosureSet& c, const AreaSensitivities& d);

/// Closed-form eigenvalues of M_s and M_theta. c2 = (1/rho) d1(A p_hat) = (1/rho) A dp/dA;
/// a_theta is A_theta at the point. Throws HyperbolicityError on a negative square-root argument.
WaveSpeeds wave_speeds(double c2, double u, double omega, double a_theta, const ClosureSet& c,
                       const AreaSensitivities& d);

/// Same as above with c2 taken from the pressure state.
WaveSpeeds wave_speeds(const PointState& st, const ClosureSet& c, const PressureState& ps, double rho);

struct QuasilinearMatrices {
  Mat3 m_s{};
  Mat3 m_theta{};
};

QuasilinearMatrices assemble_quasilinear(const PointState& st, const ClosureSet& c,
                                         const PressureState& ps, double rho);

/// Eigenvectors of M_s ordered (v_o, v_+, v_-).
std::array<Vec3d, 3> eigenvectors_s(const Mat3& m, const WaveSpeeds& w);
/// Eigenvectors of M_theta ordered (v_o, v_+, v_-).
std::array<Vec3d, 3> eigenvectors_theta(const Mat3& m, const WaveSpeeds& w);

struct HyperbolicityCheck {
  bool ok = false;
  std::array<double, 4> residuals{};  // psi_s1 - 1 and the three polynomial conditions
};

/// Sufficient conditions for a horizontal vessel with omega = 0.
HyperbolicityCheck hyperbolicity_sufficient(const ClosureSet& c);
HyperbolicityCheck hyperbolicity_sufficient(double psi_s1, double psi_s2, double psi_th1);

struct CardanoCoefficients {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double discriminant = 0.0;
};

/// Characteristic polynomial -l^3 + c2 l^2 + c1 l + c0 of n_s M_s + n_theta R_ref M_theta for a
/// horizontal vessel at omega = 0, and its discriminant. c2sq = (1/rho) d1(A p_hat).
CardanoCoefficients cardano_discriminant(double c2sq, double u, double a_theta, const ClosureSet& c,
                                         double n_s, double n_theta, double r_ref);

}  // namespace vessel2d
