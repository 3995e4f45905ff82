#include "vessel2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "vessel2d/errors.hpp"

namespace vessel2d {

void GridSpec::validate() const {
  if (n_s < 4 || n_theta < 4) {
    throw ConfigError("grid needs n_s >= 4 and n_theta >= 4 (got " + std::to_string(n_s) + " x " +
                      std::to_string(n_theta) + ")");
  }
  if (!(s_length > 0.0) || !std::isfinite(s_length)) {
    throw ConfigError("grid length must be positive");
  }
}

void PhysicalConstants::validate() const {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  if (!(nu >= 0.0)) throw ConfigError("nu must be non-negative");
  if (!std::isfinite(g)) throw ConfigError("g must be finite");
  if (!(beta > 1.0)) throw ConfigError("beta must exceed 1");
  if (!(gamma_s > 0.0)) throw ConfigError("gamma_s must be positive");
  if (!(gamma_theta >= 1.0)) throw ConfigError("gamma_theta must be >= 1");
}

double area_from_radius_kappa(double r, double kappa) {
  return r * r * (0.5 - r * kappa / 3.0);
}

double area_from_radius(double r, double theta, double alpha_prime) {
  if (r < 0.0) throw GeometryError("negative radius");
  if (r * std::abs(alpha_prime) >= 1.0) {
    std::ostringstream os;
    os << "radius " << r << " exceeds the radius of curvature 1/|alpha'| = " << 1.0 / std::abs(alpha_prime);
    throw GeometryError(os.str());
  }
  return area_from_radius_kappa(r, std::sin(theta) * alpha_prime);
}

double gamma_parameter(double r, double theta, double alpha_prime) {
  return r * std::sin(theta) * alpha_prime;
}

namespace {

double bisect_radius(double a, double kappa, double r_hi) {
  double lo = 0.0;
  double hi = r_hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (area_from_radius_kappa(mid, kappa) < a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double radius_from_area_kappa(double a, double kappa) {
  if (!(a >= 0.0)) throw GeometryError("negative area in radius inversion");
  if (a == 0.0) return 0.0;
  const double seed = std::sqrt(2.0 * a);
  if (kappa == 0.0) return seed;

  // f(R) is increasing on [0, 1/|kappa|); outside that range there is no physical root.
  const double r_max = 1.0 / std::abs(kappa);
  if (a >= area_from_radius_kappa(r_max, kappa)) {
    std::ostringstream os;
    os << "area " << a << " too large for curvature bound (kappa = " << kappa << ")";
    throw GeometryError(os.str());
  }

  const double tol = 1e-12 * std::max(1.0, seed);
  double r = std::min(seed, 0.999 * r_max);
  for (int it = 0; it < 100; ++it) {
    const double f = area_from_radius_kappa(r, kappa) - a;
    const double df = r * (1.0 - kappa * r);
    if (!(df > 0.0)) break;
    const double step = f / df;
    r -= step;
    if (!(r > 0.0 && r < r_max)) break;
    if (std::abs(step) <= tol) return r;
  }
  return bisect_radius(a, kappa, 0.999 * r_max);
}

double radius_from_area(double a, double theta, double alpha_prime) {
  const double r = radius_from_area_kappa(a, std::sin(theta) * alpha_prime);
  if (r * std::abs(alpha_prime) >= 1.0) {
    throw GeometryError("recovered radius exceeds the radius of curvature");
  }
  return r;
}

// PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.empty() || knots_.size() != values_.size()) {
    throw ConfigError("piecewise-linear table needs matching, non-empty knots and values");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw ConfigError("piecewise-linear knots must increase");
  }
}

PiecewiseLinear PiecewiseLinear::constant(double value) { return PiecewiseLinear({0.0}, {value}); }

std::size_t PiecewiseLinear::segment(double s) const {
  // Index of the left knot of the linear piece used at s.
  if (knots_.size() < 2) return 0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  std::size_t idx = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(idx, knots_.size() - 2);
}

double PiecewiseLinear::derivative(double s) const {
  if (knots_.size() < 2) return 0.0;
  const std::size_t i = segment(s);
  // Flat extension past the last knot, linear extension before the first.
  if (s > knots_.back()) return 0.0;
  return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
}

double PiecewiseLinear::operator()(double s) const {
  if (knots_.size() < 2) return values_.front();
  if (s > knots_.back()) return values_.back();
  const std::size_t i = segment(s);
  const double w = (s - knots_[i]) / (knots_[i + 1] - knots_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

template <class Fn>
double PiecewiseLinear::integrate(double s, Fn&& antiderivative) const {
  const double lo = std::min(0.0, s);
  const double hi = std::max(0.0, s);
  std::vector<double> cuts{lo};
  for (double k : knots_) {
    if (k > lo && k < hi) cuts.push_back(k);
  }
  cuts.push_back(hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double p = cuts[i];
    const double q = cuts[i + 1];
    const double fp = (*this)(p);
    const double fq = (*this)(q);
    total += antiderivative(fp, fq, q - p);
  }
  return s >= 0.0 ? total : -total;
}

double PiecewiseLinear::integral_cos(double s) const {
  return integrate(s, [](double fp, double fq, double len) {
    const double df = fq - fp;
    if (std::abs(df) < 1e-9) return std::cos(0.5 * (fp + fq)) * len;
    return (std::sin(fq) - std::sin(fp)) * len / df;
  });
}

double PiecewiseLinear::integral_sin(double s) const {
  return integrate(s, [](double fp, double fq, double len) {
    const double df = fq - fp;
    if (std::abs(df) < 1e-9) return std::sin(0.5 * (fp + fq)) * len;
    return -(std::cos(fq) - std::cos(fp)) * len / df;
  });
}

// GeometryModel

Vec3 GeometryModel::centerline(double s) const {
  return {alpha.integral_cos(s), 0.0, alpha.integral_sin(s)};
}

Vec3 GeometryModel::surface_point(double s, double theta, double r) const {
  const Vec3 c = centerline(s);
  const double a = alpha(s);
  return {c.x - r * std::sin(a) * std::sin(theta), r * std::cos(theta),
          c.z + r * std::cos(a) * std::sin(theta)};
}

// VesselGeometry

VesselGeometry::VesselGeometry(GeometryModel model, const GridSpec& grid)
    : model_(std::move(model)), grid_(grid) {
  grid_.validate();
  const int G = GridSpec::ghost_layers;
  const int ns = grid_.n_s;
  const int nt = grid_.n_theta;
  const double ds = grid_.delta_s();
  const double dth = grid_.delta_theta();

  // alpha at faces -G-1 .. ns+G+1 and derived centered differences.
  alpha_f_.resize(static_cast<std::size_t>(ns + 2 * G + 3));
  for (int i = -G - 1; i <= ns + G + 1; ++i) alpha_f_[static_cast<std::size_t>(i + G + 1)] = model_.alpha(grid_.s_face(i));
  auto alpha_c = [&](int j) { return 0.5 * (alpha_face(j) + alpha_face(j + 1)); };
  auto alpha_pc = [&](int j) { return (alpha_face(j + 1) - alpha_face(j)) / ds; };
  alpha_pf_.resize(static_cast<std::size_t>(ns + 2 * G + 1));
  for (int i = -G; i <= ns + G; ++i) {
    alpha_pf_[static_cast<std::size_t>(i + G)] = (alpha_c(i) - alpha_c(i - 1)) / ds;
  }

  auto check = [&](const FaceSample& f, double alpha_prime, double s, double th) {
    if (!(f.r_o > 0.0) || !(f.g_o > 0.0) || !std::isfinite(f.r_o) || !std::isfinite(f.g_o)) {
      std::ostringstream os;
      os << "non-positive rest radius or elasticity at s=" << s << ", theta=" << th;
      throw GeometryError(os.str());
    }
    const double v = f.r_o * std::abs(alpha_prime);
    if (v >= 1.0) {
      std::ostringstream os;
      os << "rest radius exceeds the radius of curvature at s=" << s << ", theta=" << th
         << " (R_o |alpha'| = " << v << ")";
      throw GeometryError(os.str());
    }
    max_validity_ = std::max(max_validity_, v);
  };

  s_faces_.resize(static_cast<std::size_t>(ns + 2 * G + 1) * static_cast<std::size_t>(nt));
  for (int i = -G; i <= ns + G; ++i) {
    const double s = grid_.s_face(i);
    const double ap = alpha_prime_face(i);
    for (int k = 0; k < nt; ++k) {
      const double th = grid_.theta_center(k);
      FaceSample f;
      f.r_o = model_.r_o(s, th);
      f.g_o = model_.g_o(s, th);
      f.kappa = std::sin(th) * ap;
      check(f, ap, s, th);
      f.a_o = area_from_radius_kappa(f.r_o, f.kappa);
      s_faces_[s_face_index(i, k)] = f;
    }
  }

  const std::size_t n_cells = static_cast<std::size_t>(ns + 2 * G) * static_cast<std::size_t>(nt);
  theta_faces_.resize(n_cells);
  cells_.resize(n_cells);
  for (int j = -G; j < ns + G; ++j) {
    const double s = grid_.s_center(j);
    const double ap = alpha_pc(j);
    for (int k = 0; k < nt; ++k) {
      const double th = grid_.theta_face(k);
      FaceSample f;
      f.r_o = model_.r_o(s, th);
      f.g_o = model_.g_o(s, th);
      f.kappa = std::sin(th) * ap;
      check(f, ap, s, th);
      f.a_o = area_from_radius_kappa(f.r_o, f.kappa);
      theta_faces_[cell_index(j, k)] = f;
    }
  }

  double sum_r = 0.0;
  for (int j = -G; j < ns + G; ++j) {
    for (int k = 0; k < nt; ++k) {
      const FaceSample& w = s_face(j, k);
      const FaceSample& e = s_face(j + 1, k);
      const FaceSample& sth = theta_face(j, k);
      const FaceSample& nth = theta_face(j, k + 1);
      CellSample c;
      c.r_o = 0.25 * (w.r_o + e.r_o + sth.r_o + nth.r_o);
      c.g_o = 0.25 * (w.g_o + e.g_o + sth.g_o + nth.g_o);
      // Averaging A_o the same way keeps the interface relation of the reconstruction exact at rest.
      c.a_o = 0.25 * (w.a_o + e.a_o + sth.a_o + nth.a_o);
      c.alpha = alpha_c(j);
      c.sin_alpha = std::sin(c.alpha);
      c.alpha_p = alpha_pc(j);
      c.alpha_pp = (alpha_prime_face(j + 1) - alpha_prime_face(j)) / ds;
      const double th = grid_.theta_center(k);
      c.sin_theta = std::sin(th);
      c.cos_theta = std::cos(th);
      c.kappa = c.sin_theta * c.alpha_p;
      c.dg_ds = (e.g_o - w.g_o) / ds;
      c.da_ds = (e.a_o - w.a_o) / ds;
      c.dg_dtheta = (nth.g_o - sth.g_o) / dth;
      c.da_dtheta = (nth.a_o - sth.a_o) / dth;
      if (c.r_o * std::abs(c.alpha_p) >= 1.0) {
        throw GeometryError("cell-center rest radius exceeds the radius of curvature");
      }
      cells_[cell_index(j, k)] = c;
      if (j >= 0 && j < ns) {
        sum_r += c.r_o;
        max_a_o_ = std::max(max_a_o_, c.a_o);
      }
    }
  }
  mean_r_o_ = sum_r / (static_cast<double>(ns) * nt);
}

// Scenario presets

const std::vector<AortaSegment>& aorta_table() {
  static const std::vector<AortaSegment> table{
      {7.0357, 1.52, 1.39, 4.77, 4.91}, {0.8, 1.39, 1.37, 4.91, 4.93},
      {0.9, 1.37, 1.35, 4.93, 4.94},    {6.4737, 1.35, 1.23, 4.94, 5.09},
      {15.2, 1.23, 0.99, 5.09, 5.43},   {1.8, 0.99, 0.97, 5.43, 5.46},
      {0.7, 0.97, 0.962, 5.46, 5.48},   {0.7, 0.962, 0.955, 5.48, 5.49},
      {4.3, 0.955, 0.907, 5.49, 5.57},  {4.3, 0.907, 0.86, 5.57, 5.66},
  };
  return table;
}

double aorta_length() {
  double total = 0.0;
  for (const auto& seg : aorta_table()) total += seg.length_cm;
  return total * 1e-2;
}

double elasticity_from_wave_speed(double c_d, double rho) { return 2.0 * rho * c_d * c_d; }

double cross_section_shape(double theta, double xi) {
  const double st = std::sin(theta);
  return std::sqrt((1.0 - xi * xi * st * st) / (1.0 - xi * xi));
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"horizontal_tapered", "aorta_base", "aorta_bulge",
                                              "aorta_vortex"};
  return names;
}

namespace {

constexpr double kCm = 1e-2;
constexpr double kArchLength = 12.63 * kCm;

// Segment profile evaluated with clamping outside the table.
struct AortaProfiles {
  PiecewiseLinear radius;  // m
  PiecewiseLinear speed;   // m/s
  double length;

  AortaProfiles() {
    std::vector<double> knots;
    std::vector<double> r;
    std::vector<double> c;
    double s = 0.0;
    for (const auto& seg : aorta_table()) {
      if (knots.empty()) {
        knots.push_back(s);
        r.push_back(seg.r_left_cm * kCm);
        c.push_back(seg.c_left);
      }
      s += seg.length_cm * kCm;
      knots.push_back(s);
      r.push_back(seg.r_right_cm * kCm);
      c.push_back(seg.c_right);
    }
    radius = PiecewiseLinear(knots, r);
    speed = PiecewiseLinear(knots, c);
    length = s;
  }

  double clamp(double s) const { return std::clamp(s, 0.0, length); }
};

GeometryModel aorta_base_model(const PresetOptions& opts) {
  auto prof = std::make_shared<AortaProfiles>();
  GeometryModel m;
  m.name = "aorta_base";
  m.s_length = prof->length;
  // Straight up at s = 0, straight down from the end of the arch on.
  m.alpha = PiecewiseLinear({0.0, kArchLength}, {kPi / 2.0, -kPi / 2.0});
  const double xi = opts.xi;
  const double rho = opts.rho;
  m.r_o = [prof, xi](double s, double th) {
    return prof->radius(prof->clamp(s)) * cross_section_shape(th, xi);
  };
  m.g_o = [prof, rho](double s, double) {
    return elasticity_from_wave_speed(prof->speed(prof->clamp(s)), rho);
  };
  return m;
}

// Localized wall weakening and dilation around (s_star, theta_star).
GeometryModel with_bulge(GeometryModel base, std::string name, double s_star, double th_star,
                         double x_weight, double r_amp, double g_amp) {
  auto base_r = base.r_o;
  auto base_g = base.g_o;
  const GeometryModel frame = base;
  const Vec3 p_star = frame.surface_point(s_star, th_star, base_r(s_star, th_star));
  auto factor = [frame, base_r, p_star, x_weight](double s, double th) {
    const double r_rest = base_r(s, th);
    const Vec3 p = frame.surface_point(s, th, r_rest);
    const double dx = p_star.x - p.x;
    const double dy = p_star.y - p.y;
    const double dz = p_star.z - p.z;
    const double d = std::sqrt(x_weight * dx * dx + dy * dy + dz * dz);
    if (d > r_rest) return 0.0;
    return std::sin((1.0 - d / r_rest) * kPi / 2.0);
  };
  base.name = std::move(name);
  base.r_o = [base_r, factor, r_amp](double s, double th) {
    return (1.0 + r_amp * factor(s, th)) * base_r(s, th);
  };
  base.g_o = [base_g, factor, g_amp](double s, double th) {
    return (1.0 - g_amp * factor(s, th)) * base_g(s, th);
  };
  return base;
}

}  // namespace

GeometryModel build_scenario_model(const std::string& preset, const PresetOptions& opts) {
  if (preset == "horizontal_tapered") {
    const double a_star = (0.82 * kCm) * (0.82 * kCm);
    const double taper = 0.005 / kCm;
    const double g0 = elasticity_from_wave_speed(opts.horizontal_wave_speed, opts.rho);
    GeometryModel m;
    m.name = preset;
    m.s_length = 50.0 * kCm;
    m.alpha = PiecewiseLinear::constant(0.0);
    m.r_o = [a_star, taper](double s, double) { return std::sqrt(2.0 * a_star * (1.0 - s * taper)); };
    m.g_o = [g0](double, double) { return g0; };
    return m;
  }
  if (preset == "aorta_base") return aorta_base_model(opts);
  if (preset == "aorta_bulge") {
    return with_bulge(aorta_base_model(opts), preset, 21.0 * kCm, 1.5 * kPi, 0.25, 0.2, 0.5);
  }
  if (preset == "aorta_vortex") {
    return with_bulge(aorta_base_model(opts), preset, 5.0 * kCm, kPi, 1.0, 0.75, 0.5);
  }
  throw ConfigError("unknown geometry preset '" + preset + "'");
}

VesselGeometry build_scenario_geometry(const std::string& preset, const GridSpec& grid,
                                       const PresetOptions& opts) {
  GeometryModel m = build_scenario_model(preset, opts);
  GridSpec g = grid;
  if (!(g.s_length > 0.0)) g.s_length = m.s_length;
  return VesselGeometry(std::move(m), g);
}

GeometryModel build_tabulated_model(const TabulatedGeometry& t) {
  const std::size_t n = t.s.size();
  if (n < 2 || t.alpha.size() != n || t.r_o.size() != n || t.g_o.size() != n) {
    throw ConfigError("tabulated geometry needs at least two rows of equal-length s, alpha, r_o, g_o");
  }
  if (t.s.front() != 0.0) throw ConfigError("tabulated geometry must start at s = 0");
  if (!(t.xi >= 0.0 && t.xi < 1.0)) throw ConfigError("eccentricity xi must lie in [0, 1)");
  auto r = std::make_shared<PiecewiseLinear>(t.s, t.r_o);
  auto g = std::make_shared<PiecewiseLinear>(t.s, t.g_o);
  const double lo = t.s.front();
  const double hi = t.s.back();
  const double xi = t.xi;
  GeometryModel m;
  m.name = "custom";
  m.s_length = hi;
  m.alpha = PiecewiseLinear(t.s, t.alpha);
  m.r_o = [r, lo, hi, xi](double s, double th) {
    return (*r)(std::clamp(s, lo, hi)) * cross_section_shape(th, xi);
  };
  m.g_o = [g, lo, hi](double s, double) { return (*g)(std::clamp(s, lo, hi)); };
  return m;
}

}  // namespace vessel2d
