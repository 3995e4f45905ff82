#pragma once

// Independent reference computations shared by the tests. Nothing here calls into the library.

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Composite 5-point Gauss-Legendre rule on [lo, hi].
inline double integrate(const std::function<double(double)>& f, double lo, double hi, int panels = 64) {
  static const std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                       0.9061798459386640};
  static const std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                       0.2369268850561891, 0.2369268850561891};
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) sum += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return 0.5 * h * sum;
}

/// Profile-weighted moments by direct quadrature of the velocity profiles over [0, R] with
/// |J| = r (1 - Gamma r/R).
struct ProfileMoments {
  double area = 0.0;
  double e_s = 0.0;
  double e_theta = 0.0;
  double psi_so = 0.0;
  double psi_s1 = 0.0;
  double psi_s2 = 0.0;
  double psi_th1 = 0.0;
  double psi_th2 = 0.0;
  double a_theta = 0.0;
  double u_tang_over_omega = 0.0;  // (1/A) int r V_theta |J| dr per unit omega
};

inline double vs_star(double x, double gamma, double gs) { return (1.0 - std::pow(x, gs)) / (1.0 - gamma * x); }
inline double vt_star(double x, double gt) { return (1.0 - gt / (gt + 1.0) * x) * std::pow(x, gt - 1.0); }

inline ProfileMoments profile_moments(double gamma, double r, double gs = 9.0, double gt = 2.0) {
  ProfileMoments m;
  // Substitute r = R x, dr = R dx.
  auto jac = [&](double x) { return r * x * (1.0 - gamma * x); };
  auto jr = [&](double x) { return 1.0 - gamma * x; };
  auto q = [&](const std::function<double(double)>& f) { return integrate([&](double x) { return f(x) * r; }, 0.0, 1.0); };
  m.area = q(jac);
  m.e_s = m.area / q([&](double x) { return vs_star(x, gamma, gs) * jac(x); });
  m.e_theta = m.area / q([&](double x) { return vt_star(x, gt) * jac(x); });
  auto vs = [&](double x) { return m.e_s * vs_star(x, gamma, gs); };
  auto vt = [&](double x) { return m.e_theta * vt_star(x, gt); };
  m.a_theta = q([&](double x) { return r * r * x * x * vt(x) * jac(x); }) / q([&](double x) { return vt(x) * jac(x); });
  m.psi_so = q([&](double x) { return jac(x) * jr(x) * jr(x) * vs(x); }) / m.area;
  m.psi_s1 = q([&](double x) { return jac(x) * jr(x) * jr(x) * vs(x) * vs(x); }) / m.area;
  m.psi_s2 = q([&](double x) { return jac(x) * jr(x) * jr(x) * vs(x) * vt(x); }) / m.area;
  m.psi_th1 = q([&](double x) { return jac(x) * r * r * x * x * vt(x) * vs(x); }) / (m.area * m.a_theta);
  m.psi_th2 = q([&](double x) { return jac(x) * r * r * x * x * vt(x) * vt(x); }) / (m.area * m.a_theta);
  m.u_tang_over_omega = q([&](double x) { return r * x * vt(x) * jac(x); }) / m.area;
  return m;
}

/// Real eigenvalues of a 3x3 matrix by the trigonometric cubic solution (all roots assumed real).
inline std::array<double, 3> char_poly(const std::array<std::array<double, 3>, 3>& m) {
  const double tr = m[0][0] + m[1][1] + m[2][2];
  const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                        m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {tr, minors, det};
}

}  // namespace oracle
