#include "vessel2d/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "vessel2d/eigensystem.hpp"
#include "vessel2d/errors.hpp"

namespace vessel2d {

ConservedField::ConservedField(const GridSpec& grid) : n_s(grid.n_s), n_theta(grid.n_theta) {
  const std::size_t n = static_cast<std::size_t>(grid.n_s + 2 * GridSpec::ghost_layers) *
                        static_cast<std::size_t>(grid.n_theta);
  a.assign(n, 0.0);
  q1.assign(n, 0.0);
  q2.assign(n, 0.0);
}

double minmod3(double z1, double z2, double z3) {
  if (z1 > 0.0 && z2 > 0.0 && z3 > 0.0) return std::min({z1, z2, z3});
  if (z1 < 0.0 && z2 < 0.0 && z3 < 0.0) return std::max({z1, z2, z3});
  return 0.0;
}

BoundaryKind parse_boundary_kind(const std::string& name) {
  if (name == "neumann") return BoundaryKind::neumann;
  if (name == "dirichlet_inlet") return BoundaryKind::dirichlet_inlet;
  if (name == "wall") return BoundaryKind::wall;
  if (name == "fixed") return BoundaryKind::fixed;
  throw ConfigError("unknown boundary kind '" + name + "'");
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::neumann: return "neumann";
    case BoundaryKind::dirichlet_inlet: return "dirichlet_inlet";
    case BoundaryKind::wall: return "wall";
    case BoundaryKind::fixed: return "fixed";
  }
  return "neumann";
}

void NumericsConfig::validate() const {
  if (!(phi >= 1.0 && phi <= 2.0)) throw ConfigError("limiter parameter phi must lie in [1, 2]");
  if (!(cfl > 0.0 && cfl <= 0.5)) throw ConfigError("cfl_fraction must lie in (0, 1/2]");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  if (!std::isfinite(a_threshold)) throw ConfigError("A_th must be finite");
}

double cfl_dt(double a, double b, double ds, double dtheta, double cfl, double dt_max) {
  if (a <= 0.0 && b <= 0.0) return dt_max;
  const double inf = std::numeric_limits<double>::infinity();
  const double ts = a > 0.0 ? ds / a : inf;
  const double tt = b > 0.0 ? dtheta / b : inf;
  return cfl * std::min(ts, tt);
}

std::array<double, 3> central_upwind_flux(const std::array<double, 3>& f_minus,
                                          const std::array<double, 3>& f_plus,
                                          const std::array<double, 3>& u_minus,
                                          const std::array<double, 3>& u_plus, double s_plus,
                                          double s_minus) {
  std::array<double, 3> h{};
  const double den = s_plus - s_minus;
  if (den < 1e-14) {
    for (int c = 0; c < 3; ++c) h[c] = 0.5 * (f_minus[c] + f_plus[c]);
    return h;
  }
  const double w = s_plus * s_minus / den;
  for (int c = 0; c < 3; ++c) {
    h[c] = (s_plus * f_minus[c] - s_minus * f_plus[c]) / den + w * (u_plus[c] - u_minus[c]);
  }
  return h;
}

Solver::Solver(const VesselGeometry& geometry, const PhysicalConstants& constants,
               const NumericsConfig& numerics, BoundaryConditions bc)
    : geo_(&geometry),
      constants_(constants),
      numerics_(numerics),
      bc_(std::move(bc)),
      closures_(constants.gamma_s, constants.gamma_theta) {
  constants_.validate();
  numerics_.validate();
  if ((bc_.left == BoundaryKind::dirichlet_inlet || bc_.right == BoundaryKind::dirichlet_inlet) &&
      !bc_.inlet_velocity) {
    throw ConfigError("dirichlet_inlet boundary needs an inlet waveform");
  }
  a_th_ = numerics_.a_threshold > 0.0 ? numerics_.a_threshold : 1e-10 * geometry.max_a_o();

  const GridSpec& g = geometry.grid();
  const std::size_t n_cells =
      static_cast<std::size_t>(g.n_s + 2 * GridSpec::ghost_layers) * static_cast<std::size_t>(g.n_theta);
  cal_a_.assign(n_cells, 0.0);
  rec_e_.assign(n_cells, {});
  rec_w_.assign(n_cells, {});
  rec_n_.assign(n_cells, {});
  rec_s_.assign(n_cells, {});
  const std::size_t ns_faces = static_cast<std::size_t>(g.n_s + 1) * static_cast<std::size_t>(g.n_theta);
  const std::size_t nt_faces = static_cast<std::size_t>(g.n_s) * static_cast<std::size_t>(g.n_theta);
  faces_.s_minus.assign(ns_faces, {});
  faces_.s_plus.assign(ns_faces, {});
  faces_.a_plus.assign(ns_faces, 0.0);
  faces_.a_minus.assign(ns_faces, 0.0);
  faces_.h_s.assign(ns_faces, {});
  faces_.th_minus.assign(nt_faces, {});
  faces_.th_plus.assign(nt_faces, {});
  faces_.b_plus.assign(nt_faces, 0.0);
  faces_.b_minus.assign(nt_faces, 0.0);
  faces_.h_th.assign(nt_faces, {});
  k1_ = ConservedField(g);
  stage_ = ConservedField(g);
}

ConservedField Solver::make_field() const { return ConservedField(geo_->grid()); }

ConservedField Solver::rest_field() const {
  ConservedField f(geo_->grid());
  const GridSpec& g = geo_->grid();
  for (int j = -GridSpec::ghost_layers; j < g.n_s + GridSpec::ghost_layers; ++j) {
    for (int k = 0; k < g.n_theta; ++k) f.A(j, k) = geo_->cell(j, k).a_o;
  }
  return f;
}

void Solver::set_fixed_state(const ConservedField& reference) {
  fixed_ = reference;
  have_fixed_ = true;
}

double Solver::inlet_velocity(double t) const {
  if (!bc_.inlet_velocity) throw ConfigError("no inlet waveform configured");
  return bc_.inlet_velocity(t);
}

void Solver::fill_ghost(ConservedField& f, int jg, int js, BoundaryKind kind, bool left) const {
  const int nt = f.n_theta;
  switch (kind) {
    case BoundaryKind::neumann:
      for (int k = 0; k < nt; ++k) {
        f.A(jg, k) = f.A(js, k) / geo_->cell(js, k).a_o * geo_->cell(jg, k).a_o;
        f.Q1(jg, k) = f.Q1(js, k);
        f.Q2(jg, k) = f.Q2(js, k);
      }
      break;
    case BoundaryKind::wall:
      for (int k = 0; k < nt; ++k) {
        f.A(jg, k) = f.A(js, k) / geo_->cell(js, k).a_o * geo_->cell(jg, k).a_o;
        f.Q1(jg, k) = -f.Q1(js, k);
        f.Q2(jg, k) = f.Q2(js, k);
      }
      break;
    case BoundaryKind::dirichlet_inlet: {
      const double u_in = bc_.inlet_velocity(f.time);
      for (int k = 0; k < nt; ++k) {
        const CellSample& c = geo_->cell(jg, k);
        const double r = radius_from_area_kappa(c.a_o, c.kappa);
        const double psi_so = c.kappa == 0.0 ? 1.0 : closures_.evaluate(r * c.kappa).psi_so;
        f.A(jg, k) = c.a_o;
        f.Q1(jg, k) = psi_so * c.a_o * u_in;
        f.Q2(jg, k) = 0.0;
      }
      break;
    }
    case BoundaryKind::fixed:
      if (!have_fixed_) throw ConfigError("fixed boundary requires a reference state");
      for (int k = 0; k < nt; ++k) {
        f.A(jg, k) = fixed_.A(jg, k);
        f.Q1(jg, k) = fixed_.Q1(jg, k);
        f.Q2(jg, k) = fixed_.Q2(jg, k);
      }
      break;
  }
  (void)left;
}

void Solver::apply_boundaries(ConservedField& f) const {
  const int ns = f.n_s;
  const bool mirror_l = bc_.left == BoundaryKind::wall;
  const bool mirror_r = bc_.right == BoundaryKind::wall;
  fill_ghost(f, -1, 0, bc_.left, true);
  fill_ghost(f, -2, mirror_l ? 1 : 0, bc_.left, true);
  fill_ghost(f, ns, ns - 1, bc_.right, false);
  fill_ghost(f, ns + 1, mirror_r ? ns - 2 : ns - 1, bc_.right, false);
}

void Solver::for_rows(int lo, int hi, const std::function<void(int)>& fn) const {
  const int n = hi - lo;
  const int workers = std::min(threads_, std::max(n, 1));
  if (workers <= 1) {
    for (int r = lo; r < hi; ++r) fn(r);
    return;
  }
  // Each row is computed independently, so the split does not change the result.
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int a = lo + n * w / workers;
    const int b = lo + n * (w + 1) / workers;
    pool.emplace_back([&, a, b, w] {
      try {
        for (int r = a; r < b; ++r) fn(r);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

inline void reconstruct_pair(double cbar, double delta, double ao_plus, double ao_minus, bool positivity,
                             double a_th, double& east, double& west) {
  east = (cbar + delta) * ao_plus;
  west = (cbar - delta) * ao_minus;
  if (positivity) {
    // Pair target keeps (east + west) equal to cbar (A_o+ + A_o-), so the four interface values
    // average back to the cell mean; reduces to 2 A_bar for uniform A_o.
    const double target = cbar * (ao_plus + ao_minus);
    const double half_err = -0.5 * delta * (ao_plus - ao_minus);
    east += half_err;
    west += half_err;
    const double clamped = std::min(std::max(east, a_th), target);
    if (clamped != east) west = target - clamped;
    east = clamped;
  }
  east = std::max(east, 0.0);
  west = std::max(west, 0.0);
}

inline double limited_half_jump(double qm, double q0, double qp, double phi) {
  return 0.5 * minmod3(phi * (q0 - qm), 0.5 * (qp - qm), phi * (qp - q0));
}

}  // namespace

void Solver::reconstruct_row(const ConservedField& f, int j) {
  const int nt = f.n_theta;
  const int ns = f.n_s;
  const double phi = numerics_.phi;
  const bool pos = numerics_.positivity;
  for (int k = 0; k < nt; ++k) {
    const std::size_t c = f.index(j, k);
    const std::size_t w = f.index(j - 1, k);
    const std::size_t e = f.index(j + 1, k);

    const double dca = limited_half_jump(cal_a_[w], cal_a_[c], cal_a_[e], phi);
    double a_east = 0.0;
    double a_west = 0.0;
    reconstruct_pair(cal_a_[c], dca, geo_->s_face(j + 1, k).a_o, geo_->s_face(j, k).a_o, pos, a_th_, a_east,
                     a_west);
    const double d1 = limited_half_jump(f.q1[w], f.q1[c], f.q1[e], phi);
    const double d2 = limited_half_jump(f.q2[w], f.q2[c], f.q2[e], phi);
    rec_e_[c] = {a_east, f.q1[c] + d1, f.q2[c] + d2};
    rec_w_[c] = {a_west, f.q1[c] - d1, f.q2[c] - d2};

    if (j < 0 || j >= ns) continue;
    const std::size_t sth = f.index(j, k == 0 ? nt - 1 : k - 1);
    const std::size_t nth = f.index(j, k == nt - 1 ? 0 : k + 1);
    const double tca = limited_half_jump(cal_a_[sth], cal_a_[c], cal_a_[nth], phi);
    double a_north = 0.0;
    double a_south = 0.0;
    reconstruct_pair(cal_a_[c], tca, geo_->theta_face(j, k + 1).a_o, geo_->theta_face(j, k).a_o, pos, a_th_,
                     a_north, a_south);
    const double t1 = limited_half_jump(f.q1[sth], f.q1[c], f.q1[nth], phi);
    const double t2 = limited_half_jump(f.q2[sth], f.q2[c], f.q2[nth], phi);
    rec_n_[c] = {a_north, f.q1[c] + t1, f.q2[c] + t2};
    rec_s_[c] = {a_south, f.q1[c] - t1, f.q2[c] - t2};
  }
}

FaceState Solver::face_state(double a, double q1, double q2, const FaceSample& fs, bool s_dir) const {
  FaceState st;
  st.a = a;
  const double r = radius_from_area_kappa(a, fs.kappa);
  const double gam = r * fs.kappa;
  st.radius = r;
  st.gamma = gam;

  ClosureSet local;
  AreaSensitivities local_sens;
  const ClosureSet* cl = &closures_.at_zero();
  const AreaSensitivities* sens = &closures_.sensitivities_at_zero();
  if (fs.kappa != 0.0) {
    local = closures_.evaluate(gam);
    local_sens = area_sensitivities(local);
    cl = &local;
    sens = &local_sens;
  }

  const double r_eff = std::max(r, kCollapseRadius);
  const double a_theta = cl->a_theta_over_r2 * r_eff * r_eff;
  if (a > a_th_) {
    st.q1 = q1;
    st.q2 = q2;
    st.u = q1 / (cl->psi_so * a);
    st.l = q2 / a;
    st.omega = st.l / a_theta;
  }

  const double rho = constants_.rho;
  const double beta = constants_.beta;
  st.ap_hat_rho = area_times_p_hat(a, fs.a_o, fs.g_o, beta) / rho;
  const double c2 = area_times_dp_dA(a, fs.a_o, fs.g_o, beta) / rho;

  if (s_dir) {
    const double ups = upsilon1(*cl, *sens);
    const double arg = c2 / cl->psi_so + ups * st.u * st.u;
    if (!(arg >= 0.0)) {
      throw HyperbolicityError("loss of hyperbolicity in the axial direction", a, st.u, st.omega, gam);
    }
    const double root = std::sqrt(arg);
    const double mid = (2.0 * cl->psi_s1 - sens->psi_so) / (2.0 * cl->psi_so) * st.u;
    const double l0 = cl->psi_th1 * st.u;
    st.speed_max = std::max({l0, mid + root, st.u});
    st.speed_min = std::min({l0, mid - root, st.u});
    st.flux = {a * st.u, cl->psi_s1 * a * st.u * st.u + st.ap_hat_rho, cl->psi_th1 * a * st.u * st.l};
  } else {
    const double ups = upsilon2(*cl, *sens);
    const double arg = c2 / a_theta + ups * st.omega * st.omega;
    if (!(arg >= 0.0)) {
      throw HyperbolicityError("loss of hyperbolicity in the angular direction", a, st.u, st.omega, gam);
    }
    const double root = std::sqrt(arg);
    const double mid = 0.5 * (2.0 * cl->psi_th2 - sens->a_theta_rel) * st.omega;
    const double l0 = cl->psi_s2 / cl->psi_so * st.omega;
    st.speed_max = std::max({l0, mid + root, st.omega});
    st.speed_min = std::min({l0, mid - root, st.omega});
    st.flux = {a * st.omega, cl->psi_s2 * a * st.u * st.omega,
               cl->psi_th2 * a * st.l * st.omega + st.ap_hat_rho};
  }
  if (!std::isfinite(st.speed_max) || !std::isfinite(st.speed_min)) {
    throw NumericError("non-finite local speed");
  }
  return st;
}

void Solver::faces_s_row(int i) {
  const int nt = geo_->grid().n_theta;
  const int ns = geo_->grid().n_s;
  const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(nt);
  for (int k = 0; k < nt; ++k) {
    try {
      const FaceSample& fs = geo_->s_face(i, k);
      const Rec& m = rec_e_[geo_->cell_index(i - 1, k)];
      const Rec& p = rec_w_[geo_->cell_index(i, k)];
      FaceState sm = face_state(m.a, m.q1, m.q2, fs, true);
      FaceState sp = face_state(p.a, p.q1, p.q2, fs, true);
      const double ap = std::max({sm.speed_max, sp.speed_max, 0.0});
      const double am = std::min({sm.speed_min, sp.speed_min, 0.0});
      std::array<double, 3> h =
          central_upwind_flux(sm.flux, sp.flux, {sm.a, sm.q1, sm.q2}, {sp.a, sp.q1, sp.q2}, ap, am);
      if (i == 0 && bc_.left == BoundaryKind::wall) h = {0.0, sp.ap_hat_rho, 0.0};
      if (i == ns && bc_.right == BoundaryKind::wall) h = {0.0, sm.ap_hat_rho, 0.0};
      const std::size_t idx = base + static_cast<std::size_t>(k);
      faces_.s_minus[idx] = sm;
      faces_.s_plus[idx] = sp;
      faces_.a_plus[idx] = ap;
      faces_.a_minus[idx] = am;
      faces_.h_s[idx] = h;
    } catch (const CellError&) {
      throw;
    } catch (const Error& e) {
      throw CellError(e.what(), std::min(i, ns - 1), k, time_);
    }
  }
}

void Solver::faces_theta_row(int j) {
  const int nt = geo_->grid().n_theta;
  const std::size_t base = static_cast<std::size_t>(j) * static_cast<std::size_t>(nt);
  for (int k = 0; k < nt; ++k) {
    try {
      const FaceSample& fs = geo_->theta_face(j, k);
      const Rec& m = rec_n_[geo_->cell_index(j, k == 0 ? nt - 1 : k - 1)];
      const Rec& p = rec_s_[geo_->cell_index(j, k)];
      FaceState sm = face_state(m.a, m.q1, m.q2, fs, false);
      FaceState sp = face_state(p.a, p.q1, p.q2, fs, false);
      const double bp = std::max({sm.speed_max, sp.speed_max, 0.0});
      const double bm = std::min({sm.speed_min, sp.speed_min, 0.0});
      const std::size_t idx = base + static_cast<std::size_t>(k);
      faces_.th_minus[idx] = sm;
      faces_.th_plus[idx] = sp;
      faces_.b_plus[idx] = bp;
      faces_.b_minus[idx] = bm;
      faces_.h_th[idx] = central_upwind_flux(sm.flux, sp.flux, {sm.a, sm.q1, sm.q2}, {sp.a, sp.q1, sp.q2}, bp, bm);
    } catch (const CellError&) {
      throw;
    } catch (const Error& e) {
      throw CellError(e.what(), j, k, time_);
    }
  }
}

void Solver::sources_row(const ConservedField& f, ConservedField& dudt, int j) const {
  const int nt = f.n_theta;
  const double ds = geo_->grid().delta_s();
  const double dth = geo_->grid().delta_theta();
  for (int k = 0; k < nt; ++k) {
    try {
      const std::size_t c = f.index(j, k);
      const CellSample& cs = geo_->cell(j, k);
      const double a = f.a[c];

      SourceInput in;
      in.area = a;
      in.radius = radius_from_area_kappa(a, cs.kappa);
      in.gamma = in.radius * cs.kappa;
      if (a > a_th_) {
        const double psi_so = cs.kappa == 0.0 ? 1.0 : closures_.evaluate(in.gamma).psi_so;
        in.u = f.q1[c] / (psi_so * a);
        in.l = f.q2[c] / a;
      }
      in.a_o = cs.a_o;
      in.g_o = cs.g_o;
      in.dg_ds = cs.dg_ds;
      in.da_ds = cs.da_ds;
      in.dg_dtheta = cs.dg_dtheta;
      in.da_dtheta = cs.da_dtheta;
      in.sin_alpha = cs.sin_alpha;
      in.alpha_p = cs.alpha_p;
      in.alpha_pp = cs.alpha_pp;
      in.sin_theta = cs.sin_theta;
      in.cos_theta = cs.cos_theta;
      const SourceTerms src = source_terms(in, constants_, closures_);

      const std::size_t fw = static_cast<std::size_t>(j) * static_cast<std::size_t>(nt) + static_cast<std::size_t>(k);
      const std::size_t fe = fw + static_cast<std::size_t>(nt);
      const std::size_t fs = fw;
      const std::size_t fn = static_cast<std::size_t>(j) * static_cast<std::size_t>(nt) +
                             static_cast<std::size_t>(k == nt - 1 ? 0 : k + 1);
      const auto& he = faces_.h_s[fe];
      const auto& hw = faces_.h_s[fw];
      const auto& hn = faces_.h_th[fn];
      const auto& hs = faces_.h_th[fs];
      dudt.a[c] = -(he[0] - hw[0]) / ds - (hn[0] - hs[0]) / dth;
      dudt.q1[c] = -(he[1] - hw[1]) / ds - (hn[1] - hs[1]) / dth + src.s2;
      dudt.q2[c] = -(he[2] - hw[2]) / ds - (hn[2] - hs[2]) / dth + src.s3;
      if (!std::isfinite(dudt.a[c]) || !std::isfinite(dudt.q1[c]) || !std::isfinite(dudt.q2[c])) {
        throw NumericError("non-finite right-hand side");
      }
    } catch (const CellError&) {
      throw;
    } catch (const Error& e) {
      throw CellError(e.what(), j, k, time_);
    }
  }
}

SpeedBounds Solver::rhs(const ConservedField& f, ConservedField& dudt) {
  const GridSpec& g = geo_->grid();
  const int ns = g.n_s;
  const int nt = g.n_theta;
  const int G = GridSpec::ghost_layers;
  time_ = f.time;
  if (dudt.n_s != ns || dudt.n_theta != nt) dudt = ConservedField(g);

  for (int j = -G; j < ns + G; ++j) {
    for (int k = 0; k < nt; ++k) {
      const std::size_t c = f.index(j, k);
      cal_a_[c] = f.a[c] / geo_->cell(j, k).a_o;
    }
  }
  for_rows(-1, ns + 1, [&](int j) { reconstruct_row(f, j); });
  for_rows(0, ns + 1, [&](int i) { faces_s_row(i); });
  for_rows(0, ns, [&](int j) { faces_theta_row(j); });
  for_rows(0, ns, [&](int j) { sources_row(f, dudt, j); });

  SpeedBounds sb;
  for (std::size_t i = 0; i < faces_.a_plus.size(); ++i) {
    sb.a = std::max({sb.a, faces_.a_plus[i], -faces_.a_minus[i]});
  }
  for (std::size_t i = 0; i < faces_.b_plus.size(); ++i) {
    sb.b = std::max({sb.b, faces_.b_plus[i], -faces_.b_minus[i]});
  }
  return sb;
}

StepInfo Solver::step(ConservedField& f, double t_end) {
  const GridSpec& g = geo_->grid();
  const int ns = g.n_s;
  const int nt = g.n_theta;

  apply_boundaries(f);
  StepInfo info;
  info.speeds = rhs(f, k1_);
  double dt = cfl_dt(info.speeds.a, info.speeds.b, g.delta_s(), g.delta_theta(), numerics_.cfl, numerics_.dt_max);
  if (f.time + dt > t_end) dt = t_end - f.time;
  if (!(dt > 0.0)) throw NumericError("non-positive time step");

  stage_.n_s = ns;
  stage_.n_theta = nt;
  if (stage_.a.size() != f.a.size()) stage_ = f;
  // The second stage must satisfy the same CFL bound; otherwise the step is redone with its dt.
  for (int attempt = 0;; ++attempt) {
    stage_.time = f.time + dt;
    for (int j = 0; j < ns; ++j) {
      for (int k = 0; k < nt; ++k) {
        const std::size_t c = f.index(j, k);
        stage_.a[c] = f.a[c] + dt * k1_.a[c];
        stage_.q1[c] = f.q1[c] + dt * k1_.q1[c];
        stage_.q2[c] = f.q2[c] + dt * k1_.q2[c];
      }
    }
    apply_boundaries(stage_);
    const SpeedBounds sb = rhs(stage_, k2_);
    const double dt2 = cfl_dt(sb.a, sb.b, g.delta_s(), g.delta_theta(), numerics_.cfl, numerics_.dt_max);
    if (dt <= dt2 || attempt >= 20) break;
    dt = dt2;
  }
  info.dt = dt;
  for (int j = 0; j < ns; ++j) {
    for (int k = 0; k < nt; ++k) {
      const std::size_t c = f.index(j, k);
      f.a[c] = 0.5 * f.a[c] + 0.5 * (stage_.a[c] + dt * k2_.a[c]);
      f.q1[c] = 0.5 * f.q1[c] + 0.5 * (stage_.q1[c] + dt * k2_.q1[c]);
      f.q2[c] = 0.5 * f.q2[c] + 0.5 * (stage_.q2[c] + dt * k2_.q2[c]);
      if (!std::isfinite(f.a[c]) || !std::isfinite(f.q1[c]) || !std::isfinite(f.q2[c])) {
        throw CellError("non-finite state after time step", j, k, f.time + dt);
      }
    }
  }
  f.time = stage_.time;
  apply_boundaries(f);
  return info;
}

}  // namespace vessel2d
