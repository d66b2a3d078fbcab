// lrsta: pulse synthesis, propagation and verification from the command line.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lrsta/types.hpp"

namespace {

using lrsta::cli::RunConfig;

// Flag values; anything set here wins over the --config file.
struct Overrides {
  std::string config;
  std::optional<std::string> strategy, schedule, out, summary;
  std::optional<double> omega, A, B, omega_T, delta_t_over_T, Omega0_over_omega,
      target_delta_epsilon, calibration_tol;
  std::optional<int> n_periods, steps_per_period, record_stride, samples_per_period,
      verify_samples;
  bool neglect_imag = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON run config; flags override it");
    cmd->add_option("-s,--strategy", strategy, "a, b or c");
    cmd->add_option("--omega", omega, "carrier frequency (default 1)");
    cmd->add_option("--A", A, "strategy a amplitude");
    cmd->add_option("--B", B, "strategy b amplitude");
    cmd->add_option("--omega-T", omega_T, "omega*T; calibrated when omitted");
    cmd->add_option("--delta-t", delta_t_over_T, "strategy b patch half-width, units of T");
    cmd->add_flag("--neglect-imag", neglect_imag, "strategy b: drop Im(Omega)");
    cmd->add_option("--Omega0", Omega0_over_omega, "strategy c Omega0/omega");
    cmd->add_option("--target-delta-epsilon", target_delta_epsilon,
                    "strategy c epsilon gain per period (default pi/6)");
    cmd->add_option("--n-periods", n_periods, "strategy c carrier periods");
    cmd->add_option("--steps-per-period", steps_per_period, "RK4 steps per carrier period");
    cmd->add_option("--record-stride", record_stride, "steps between recorded samples");
    cmd->add_option("--samples-per-period", samples_per_period, "schedule CSV resolution");
    cmd->add_option("--verify-samples", verify_samples, "interior times checked by verify");
    cmd->add_option("--tol", calibration_tol, "calibration bisection width (units of pi)");
    cmd->add_option("--schedule", schedule, "use a schedule CSV instead of synthesizing");
    cmd->add_option("-o,--out", out, "primary output file");
    cmd->add_option("--summary", summary, "JSON summary file (default stdout)");
  }

  RunConfig resolve() const {
    RunConfig cfg = config.empty() ? RunConfig{} : lrsta::cli::load_run_config(config);
    auto set = [](auto& dst, const auto& src) {
      if (src) dst = *src;
    };
    set(cfg.strategy, strategy);
    set(cfg.schedule, schedule);
    set(cfg.out, out);
    set(cfg.summary, summary);
    set(cfg.omega, omega);
    if (A) cfg.A = A;
    if (B) cfg.B = B;
    if (omega_T) cfg.omega_T = omega_T;
    set(cfg.delta_t_over_T, delta_t_over_T);
    if (Omega0_over_omega) {
      cfg.Omega0_over_omega = Omega0_over_omega;
      cfg.target_delta_epsilon.reset();
    }
    if (target_delta_epsilon) {
      cfg.target_delta_epsilon = target_delta_epsilon;
      cfg.Omega0_over_omega.reset();
    }
    if (n_periods) cfg.n_periods = n_periods;
    set(cfg.steps_per_period, steps_per_period);
    set(cfg.record_stride, record_stride);
    set(cfg.samples_per_period, samples_per_period);
    set(cfg.verify_samples, verify_samples);
    set(cfg.calibration_tol, calibration_tol);
    if (neglect_imag) cfg.neglect_imag = true;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-based pulse synthesis for three-level systems beyond the RWA"};
  app.require_subcommand(1);

  std::string which;
  std::string table_out;
  double table_tol = 1e-6;
  auto* tables = app.add_subcommand("tables", "omega*T calibration tables (I: A, II: B)");
  tables->add_option("which", which, "I or II")->required()->check(CLI::IsMember({"I", "II"}));
  tables->add_option("-o,--out", table_out, "CSV path (default stdout)");
  tables->add_option("--tol", table_tol, "bisection width in units of pi");

  Overrides synth_o, sim_o, verify_o;
  auto* synth = app.add_subcommand("synth", "write a pulse schedule CSV");
  synth_o.add_to(synth);
  auto* simulate = app.add_subcommand("simulate", "propagate a schedule, write populations");
  sim_o.add_to(simulate);
  auto* verify = app.add_subcommand("verify", "run the invariant checks on a schedule");
  verify_o.add_to(verify);

  double target = lrsta::kPi / 6.0;
  std::string calib_out;
  auto* calib = app.add_subcommand("calibrate-c", "Omega0/omega for a strategy c epsilon gain");
  calib->add_option("--target-delta-epsilon", target, "epsilon gain per period (default pi/6)");
  calib->add_option("-o,--out", calib_out, "JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lrsta::cli::kValidation;
  }

  using namespace lrsta::cli;
  return guarded(std::cerr, [&]() -> int {
    if (*tables) return cmd_tables(which, table_out, table_tol, std::cout);
    if (*synth) return cmd_synth(synth_o.resolve(), std::cout);
    if (*simulate) return cmd_simulate(sim_o.resolve(), std::cout);
    if (*verify) return cmd_verify(verify_o.resolve(), std::cout, std::cerr);
    return cmd_calibrate_c(target, calib_out, std::cout);
  });
}
