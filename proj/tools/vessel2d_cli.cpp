// Batch front end: run, validate, hyperbolicity-report, convergence.
// Exit codes: 0 success, 1 configuration error, 2 numeric failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vessel2d/driver.hpp"
#include "vessel2d/eigensystem.hpp"
#include "vessel2d/errors.hpp"

namespace {

using namespace vessel2d;

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

int env_threads() {
  const char* v = std::getenv("VESSEL2D_THREADS");
  if (!v || !*v) return 0;
  try {
    return std::stoi(v);
  } catch (...) {
    throw ConfigError(std::string("VESSEL2D_THREADS is not an integer: ") + v);
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads) {
  RunConfig cfg = load_config(config_path);
  if (threads <= 0) threads = env_threads();
  if (threads > 0) cfg.threads = threads;
  Simulation sim(cfg);
  const std::filesystem::path out(out_dir);
  const RunSummary s = sim.run(&out, &std::cerr);
  std::cout << "steps " << s.steps << " t_final " << format_number(s.t_final) << " final_state_hash "
            << hex64(s.final_hash) << " min_area " << format_number(s.min_area) << " pressure_range_Pa ["
            << format_number(s.min_pressure) << ", " << format_number(s.max_pressure) << "] wall "
            << s.wall_seconds << " s\n";
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  cfg.validate();
  const VesselGeometry geo = build_geometry(cfg.scenario);
  const ClosureModel model(cfg.scenario.constants.gamma_s, cfg.scenario.constants.gamma_theta);
  const HyperbolicityCheck h = hyperbolicity_sufficient(model.at_zero());
  std::cout << "config ok: " << (cfg.scenario.has_table ? "custom" : cfg.scenario.preset) << " "
            << geo.grid().n_s << "x" << geo.grid().n_theta << ", s_L = " << geo.grid().s_length << " m\n"
            << "max R_o |alpha'| = " << geo.max_curvature_product() << "\n"
            << "sufficient hyperbolicity conditions:";
  for (double r : h.residuals) std::cout << ' ' << r;
  std::cout << (h.ok ? " (all satisfied)\n" : " (NOT satisfied)\n");
  if (!h.ok) {
    std::cerr << "warning: closure exponents violate the sufficient hyperbolicity conditions\n";
  }
  return 0;
}

int cmd_hyperbolicity_report(const std::string& out_path, double r_ref, double wave_speed,
                             const PhysicalConstants& pc) {
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open " + out_path);
  const ClosureModel model(pc.gamma_s, pc.gamma_theta);
  const double g_o = elasticity_from_wave_speed(wave_speed, pc.rho);
  const double c2 = g_o * 0.5 * pc.beta / pc.rho;  // A dp/dA / rho at A = A_o

  out << "# R_o_ref = " << format_number(r_ref) << " m, G_o = " << format_number(g_o)
      << " Pa, A = A_o; discriminant uses the omega = 0 form and is empty otherwise\n";
  out << "gamma,u,omega,upsilon1,upsilon2,real_speeds,min_discriminant,min_discriminant_sign\n";
  constexpr int kDirections = 32;
  for (int ig = -9; ig <= 9; ++ig) {
    const double gamma = 0.1 * ig;
    const ClosureSet cl = model.evaluate(gamma);
    const AreaSensitivities d = area_sensitivities(cl);
    const double a_theta = cl.a_theta_over_r2 * r_ref * r_ref;
    for (int iu = -4; iu <= 4; ++iu) {
      const double u = 0.5 * iu;
      for (double omega : {-50.0, -10.0, 0.0, 10.0, 50.0}) {
        const double u1 = upsilon1(cl, d);
        const double u2 = upsilon2(cl, d);
        bool real = true;
        try {
          (void)wave_speeds(c2, u, omega, a_theta, cl, d);
        } catch (const HyperbolicityError&) {
          real = false;
        }
        out << format_number(gamma) << ',' << format_number(u) << ',' << format_number(omega) << ','
            << format_number(u1) << ',' << format_number(u2) << ',' << (real ? 1 : 0) << ',';
        if (omega == 0.0) {
          double dmin = INFINITY;
          for (int n = 0; n < kDirections; ++n) {
            const double phi = 2.0 * kPi * n / kDirections;
            const auto k = cardano_discriminant(c2, u, a_theta, cl, std::cos(phi), std::sin(phi), r_ref);
            dmin = std::min(dmin, k.discriminant);
          }
          out << format_number(dmin) << ',' << (dmin > 0.0 ? 1 : (dmin < 0.0 ? -1 : 0));
        } else {
          out << ',';
        }
        out << '\n';
      }
    }
  }
  if (!out) throw Error("write failed on " + out_path);
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

int cmd_convergence(const std::string& preset, int n_s, int n_theta, int levels, double t_end, int threads) {
  RunConfig base = convergence_config(preset, n_s, n_theta, t_end);
  if (threads <= 0) threads = env_threads();
  if (threads > 0) base.threads = threads;
  const auto rows = self_convergence(base, levels);
  std::cout << "n_s,n_theta,L1_difference,order\n";
  for (const auto& r : rows) {
    std::cout << r.n_s << ',' << r.n_theta << ',' << format_number(r.l1_difference) << ','
              << format_number(r.order) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional arterial blood flow solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run a configured scenario");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads (default: config or VESSEL2D_THREADS)");

  auto* validate = app.add_subcommand("validate", "Check a configuration without simulating");
  validate->add_option("--config", config_path, "JSON run configuration")->required();

  std::string report_path;
  double r_ref = 0.0;
  double wave_speed = 5.0;
  std::string report_preset = "aorta_base";
  auto* report = app.add_subcommand("hyperbolicity-report", "CSV sweep of the characteristic structure");
  report->add_option("--out", report_path, "Output CSV")->required();
  report->add_option("--r-ref", r_ref, "Reference radius in m (default: mean R_o of --preset)");
  report->add_option("--preset", report_preset, "Preset supplying the default reference radius");
  report->add_option("--wave-speed", wave_speed, "Wave speed c_d in m/s fixing G_o = 2 rho c_d^2");

  std::string conv_preset = "horizontal_tapered";
  int conv_ns = 50;
  int conv_nt = 32;
  int conv_levels = 3;
  double conv_t = 0.004;
  auto* conv = app.add_subcommand("convergence", "Self-convergence table on smooth data");
  conv->add_option("--preset", conv_preset, "Geometry preset");
  conv->add_option("--n-s", conv_ns, "Coarsest axial cell count");
  conv->add_option("--n-theta", conv_nt, "Coarsest angular cell count");
  conv->add_option("--levels", conv_levels, "Number of grids");
  conv->add_option("--t-end", conv_t, "End time in s");
  conv->add_option("--threads", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, threads);
    if (*validate) return cmd_validate(config_path);
    if (*report) {
      const PhysicalConstants pc;
      if (!(r_ref > 0.0)) {
        GridSpec g{100, 16, 0.0};
        r_ref = build_scenario_geometry(report_preset, g).mean_r_o();
      }
      return cmd_hyperbolicity_report(report_path, r_ref, wave_speed, pc);
    }
    if (*conv) return cmd_convergence(conv_preset, conv_ns, conv_nt, conv_levels, conv_t, threads);
  } catch (const CellError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n  cell j=" << e.j() << " k=" << e.k() << " t=" << e.t()
              << '\n';
    return kExitNumeric;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GeometryError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
