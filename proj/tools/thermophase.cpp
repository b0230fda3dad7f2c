#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "thermophase/config.hpp"
#include "thermophase/csv.hpp"
#include "thermophase/errors.hpp"
#include "thermophase/sweeps.hpp"
#include "thermophase/verify.hpp"
#include "thermophase/wkb.hpp"

namespace tp = thermophase;

namespace {

struct ConfigFlags {
  std::optional<std::string> config_path;
  std::optional<double> theta_th, t_ref, lambda_ref, fixed_lambda, mass, r_m;
  std::optional<std::string> mode, parity, norm_convention;

  tp::ModelConfig build() const {
    tp::ModelConfig cfg;
    if (config_path) cfg = tp::load_config_file(*config_path);
    if (theta_th) cfg.theta_th = *theta_th;
    if (t_ref) cfg.t_ref = *t_ref;
    if (lambda_ref) cfg.lambda_ref = *lambda_ref;
    if (fixed_lambda) cfg.fixed_lambda = *fixed_lambda;
    if (mass) cfg.mass = *mass;
    if (r_m) cfg.r_m = *r_m;
    if (mode) cfg.mode = tp::lambda_mode_from_string(*mode);
    if (parity) cfg.parity = tp::parity_from_string(*parity);
    if (norm_convention) {
      cfg.norm_convention = tp::norm_convention_from_string(*norm_convention);
    }
    auto errs = cfg.validate();
    if (!errs.empty()) {
      std::string msg = "invalid configuration:";
      for (const auto& e : errs) msg += "\n  " + e;
      throw tp::DomainError(msg);
    }
    return cfg;
  }
};

void emit(const tp::SweepResult& result, const std::optional<std::string>& out,
          bool as_json) {
  const std::string payload = as_json ? result.to_json() : result.to_csv();
  if (out) {
    std::ofstream f(*out, std::ios::binary);
    if (!f) throw tp::DomainError("cannot open output file: " + *out);
    f << payload;
  } else {
    std::cout << payload;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temperature-dependent geometric-phase pipeline"};
  app.fallthrough();
  app.require_subcommand(1);

  ConfigFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file");
  app.add_option("--theta-th", flags.theta_th, "thermal energy scale (K)");
  app.add_option("--t-ref", flags.t_ref, "reference temperature (K)");
  app.add_option("--lambda-ref", flags.lambda_ref, "exponent at t_ref (1/bohr)");
  app.add_option("--fixed-lambda", flags.fixed_lambda,
                 "exponent used in FixedLambda mode (1/bohr)");
  app.add_option("--mass", flags.mass, "nuclear reduced mass (m_e)");
  app.add_option("--rm", flags.r_m, "phase integral upper limit (bohr)");
  app.add_option("--mode", flags.mode,
                 "FixedLambda | FixedEpsilon | SelfConsistent");
  app.add_option("--parity", flags.parity, "Even | Odd");
  app.add_option("--norm-convention", flags.norm_convention,
                 "PaperLiteral | Normalized");

  std::optional<std::string> out_path;
  bool as_json = false;
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_flag("--json", as_json, "emit a JSON envelope instead of CSV");

  std::vector<double> temps{100.0, 200.0, 300.0};
  double r_min = 0.0, r_max = 8.0, r_step = 0.01;
  double t_min = 100.0, t_max = 300.0, t_step = 5.0;
  std::optional<double> rsep_opt;

  auto* sweep = app.add_subcommand("sweep", "evaluate a curve family");
  sweep->fallthrough();
  sweep->require_subcommand(1);

  auto add_r_grid = [&](CLI::App* cmd) {
    cmd->add_option("--r-min", r_min, "grid start (bohr)");
    cmd->add_option("--r-max", r_max, "grid end (bohr)");
    cmd->add_option("--r-step", r_step, "grid step (bohr)");
  };
  auto add_t_grid = [&](CLI::App* cmd) {
    cmd->add_option("--t-min", t_min, "temperature start (K)");
    cmd->add_option("--t-max", t_max, "temperature end (K)");
    cmd->add_option("--t-step", t_step, "temperature step (K)");
  };

  auto* sweep_gauge_cmd =
      sweep->add_subcommand("gauge", "gauge potential vs R per temperature");
  sweep_gauge_cmd->fallthrough();
  sweep_gauge_cmd->add_option("--temps", temps, "comma-separated kelvin list")
      ->delimiter(',');
  add_r_grid(sweep_gauge_cmd);

  auto* sweep_phase_cmd =
      sweep->add_subcommand("phase", "geometric phase vs temperature");
  sweep_phase_cmd->fallthrough();
  add_t_grid(sweep_phase_cmd);

  auto* sweep_veff_cmd = sweep->add_subcommand(
      "veff", "effective potential and components vs R per temperature");
  sweep_veff_cmd->fallthrough();
  sweep_veff_cmd->add_option("--temps", temps, "comma-separated kelvin list")
      ->delimiter(',');
  add_r_grid(sweep_veff_cmd);

  auto* sweep_lambda_cmd =
      sweep->add_subcommand("lambda", "orbital exponent vs temperature");
  sweep_lambda_cmd->fallthrough();
  add_t_grid(sweep_lambda_cmd);
  sweep_lambda_cmd->add_option("--rsep", rsep_opt,
                               "separation for SelfConsistent mode (bohr)");

  auto* minimize_cmd =
      app.add_subcommand("minimize", "equilibrium bond length per temperature");
  minimize_cmd->fallthrough();
  minimize_cmd->add_option("--temps", temps, "comma-separated kelvin list")
      ->delimiter(',');

  std::string golden_path = "data/golden/two_center.csv";
  bool regenerate = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "run every cross-validation check");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--golden", golden_path, "golden file location");
  verify_cmd->add_flag("--regenerate", regenerate,
                       "rewrite the golden file from the oracle first");

  std::string wkb_input;
  double wkb_epsilon = 1.0, wkb_hbar = 1.0;
  int wkb_orders = 2;
  auto* wkb_cmd = app.add_subcommand(
      "wkb", "semiclassical expansion of a tabulated radial problem");
  wkb_cmd->fallthrough();
  wkb_cmd->add_option("--input", wkb_input, "CSV table r,V[,A] with header")
      ->required();
  wkb_cmd->add_option("--epsilon", wkb_epsilon, "energy (hartree)")->required();
  wkb_cmd->add_option("--orders", wkb_orders, "expansion orders to keep (0-2)")
      ->check(CLI::Range(0, 2));
  wkb_cmd->add_option("--hbar", wkb_hbar, "dimensionless hbar for diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const tp::ModelConfig cfg = flags.build();

    if (sweep_gauge_cmd->parsed()) {
      emit(tp::sweep_gauge(temps, r_min, r_max, r_step, cfg), out_path, as_json);
      return 0;
    }
    if (sweep_phase_cmd->parsed()) {
      emit(tp::sweep_phase(t_min, t_max, t_step, cfg.r_m, cfg), out_path,
           as_json);
      return 0;
    }
    if (sweep_veff_cmd->parsed()) {
      if (!sweep_veff_cmd->count("--r-min")) r_min = 0.5;
      emit(tp::sweep_veff(temps, r_min, r_max, r_step, cfg), out_path, as_json);
      return 0;
    }
    if (sweep_lambda_cmd->parsed()) {
      emit(tp::sweep_lambda(t_min, t_max, t_step, rsep_opt, cfg), out_path,
           as_json);
      return 0;
    }
    if (minimize_cmd->parsed()) {
      const tp::SweepResult table = tp::minimize_table(temps, cfg);
      emit(table, out_path, as_json);
      bool any_ok = false;
      for (const auto& row : table.rows) {
        if (row.back() == "ok") any_ok = true;
      }
      return any_ok ? 0 : 1;
    }
    if (verify_cmd->parsed()) {
      const tp::VerifyReport report =
          tp::run_verification(cfg, golden_path, regenerate);
      std::cout << report.render();
      return report.all_passed() ? 0 : 1;
    }
    if (wkb_cmd->parsed()) {
      const tp::csv::RadialTable table = tp::csv::read_radial_table(wkb_input);
      tp::wkb::Problem problem;
      problem.grid = table.r;
      problem.potential = table.potential;
      problem.epsilon = wkb_epsilon;
      problem.amplitude = table.has_amplitude
                              ? table.amplitude
                              : Eigen::ArrayXd::Ones(table.r.size());
      const tp::wkb::Solution sol = tp::wkb::solve(problem, wkb_orders, wkb_hbar);
      const Eigen::ArrayXcd phi =
          tp::wkb::assemble_wavefunction(problem, sol, wkb_hbar);

      std::string payload = "# config_hash=" + tp::config_hash_hex(cfg) + "\n";
      payload += "r,S0,S1,S2,A,Re_phi,Im_phi\n";
      for (Eigen::Index i = 0; i < problem.grid.size(); ++i) {
        payload += tp::csv::format_double(problem.grid[i]) + ',' +
                   tp::csv::format_double(sol.s0[i]) + ',' +
                   tp::csv::format_double(sol.s1[i]) + ',' +
                   tp::csv::format_double(sol.s2[i]) + ',' +
                   tp::csv::format_double(problem.amplitude[i]) + ',' +
                   tp::csv::format_double(phi[i].real()) + ',' +
                   tp::csv::format_double(phi[i].imag()) + '\n';
      }
      if (out_path) {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f) throw tp::DomainError("cannot open output file: " + *out_path);
        f << payload;
      } else {
        std::cout << payload;
      }
      std::cerr << "residual_norm = " << tp::csv::format_double(sol.residual_norm)
                << "\n";
      return 0;
    }
  } catch (const tp::ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what()
              << " (best estimate " << e.best_estimate << ")\n";
    return 3;
  } catch (const tp::NoMinimumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
