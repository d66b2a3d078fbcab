#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "lrsta/errors.hpp"
#include "lrsta/io.hpp"
#include "lrsta/propagator.hpp"
#include "lrsta/verification.hpp"

namespace lrsta::cli {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ArgumentError*>(&e)) return kValidation;
  if (dynamic_cast<const Error*>(&e)) return kNumerical;
  return kNumerical;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const SynthesisError& e) {
    err << "error: " << e.what() << " (t = " << io::format_double(e.time()) << ")\n";
    return exit_code_for(e);
  } catch (const PropagationError& e) {
    err << "error: " << e.what() << " (t = " << io::format_double(e.time()) << ")\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

namespace {

void emit(const std::string& path, const std::string& text, std::ostream& log) {
  if (path.empty() || path == "-") {
    log << text;
  } else {
    io::write_file_atomic(path, text);
  }
}

std::string variant_path(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  fs::path out = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
  return out.string();
}

json schedule_header(const PulseSchedule& s) {
  json j;
  j["strategy"] = to_string(s.strategy);
  j["params"] = s.params;
  j["t_start"] = s.t_start();
  j["t_end"] = s.t_end();
  j["sampled"] = s.sampled;
  return j;
}

json envelope_extrema(const PulseSchedule& s, const std::vector<double>& times) {
  double re_min = INFINITY, re_max = -INFINITY, im_min = INFINITY, im_max = -INFINITY;
  double abs_max = 0.0, delta_max = 0.0, t_abs_max = s.t_start();
  for (double t : times) {
    const DriveSample d = s.at(t);
    re_min = std::min(re_min, d.Omega_p.real());
    re_max = std::max(re_max, d.Omega_p.real());
    im_min = std::min(im_min, d.Omega_p.imag());
    im_max = std::max(im_max, d.Omega_p.imag());
    if (std::abs(d.Omega_p) > abs_max) {
      abs_max = std::abs(d.Omega_p);
      t_abs_max = t;
    }
    delta_max = std::max({delta_max, std::abs(d.Delta_p), std::abs(d.Delta_s)});
  }
  return {{"re_min", re_min}, {"re_max", re_max},       {"im_min", im_min},
          {"im_max", im_max}, {"abs_max", abs_max},     {"t_abs_max", t_abs_max},
          {"abs_delta_max", delta_max}};
}

json calibration_json(const CalibrationResult& r, const char* parameter, const char* value) {
  return {{"parameter", parameter},
          {"parameter_value", r.parameter},
          {value, r.value},
          {"residual", r.residual},
          {"iterations", r.iterations}};
}

PulseSchedule strategy_b_variant(const PulseSchedule& s, bool neglect_imag) {
  return strategy_b(s.param("B"), s.param("omega"), s.param("T"), s.param("delta_t_over_T"),
                    neglect_imag);
}

}  // namespace

BuiltSchedule build_schedule(const RunConfig& cfg) {
  if (!cfg.schedule.empty()) {
    PulseSchedule s = io::load_schedule_csv(cfg.schedule);
    double unit = 1.0;
    if (s.strategy == Strategy::a || s.strategy == Strategy::b) {
      unit = s.param("T");
    } else if (s.strategy == Strategy::c) {
      unit = kPi / (2.0 * s.omega());
    }
    return {std::move(s), nullptr, unit};
  }

  const double omega = cfg.omega;
  if (cfg.strategy == "a" || cfg.strategy == "b") {
    const bool is_a = cfg.strategy == "a";
    const double amp = is_a ? *cfg.A : *cfg.B;
    json calib = nullptr;
    double omega_T = 0.0;
    if (cfg.omega_T) {
      omega_T = *cfg.omega_T;
    } else {
      const CalibrationResult r = is_a ? solve_omega_T_for_A(amp, cfg.calibration_tol)
                                       : solve_omega_T_for_B(amp, cfg.calibration_tol);
      omega_T = r.value;
      calib = calibration_json(r, is_a ? "A" : "B", "omega_T");
      calib["omega_T_over_pi"] = r.value / kPi;
    }
    const double T = omega_T / omega;
    PulseSchedule s = is_a ? strategy_a(amp, omega, T)
                           : strategy_b(amp, omega, T, cfg.delta_t_over_T, cfg.neglect_imag);
    return {std::move(s), calib, T};
  }

  double ratio = 0.0;
  double delta_eps = 0.0;
  json calib = nullptr;
  if (cfg.Omega0_over_omega) {
    ratio = *cfg.Omega0_over_omega;
    delta_eps = delta_epsilon_per_period(ratio);
  } else {
    delta_eps = cfg.target_delta_epsilon.value_or(kPi / 6.0);
    const CalibrationResult r = calibrate_strategy_c(delta_eps);
    ratio = r.value;
    calib = calibration_json(r, "target_delta_epsilon", "Omega0_over_omega");
  }
  int n = 1;
  if (cfg.n_periods) {
    n = *cfg.n_periods;
  } else if (delta_eps > 0.0) {
    n = static_cast<int>(std::ceil(kPi / delta_eps - 1e-9));
  }
  PulseSchedule s = strategy_c(ratio * omega, omega, n);
  return {std::move(s), calib, kPi / (2.0 * omega)};
}

std::string table_csv(const std::string& which, double tol) {
  std::vector<double> values;
  bool is_a = true;
  if (which == "I") {
    values = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  } else if (which == "II") {
    values = {0.4, 0.5, 0.6, 0.7};
    is_a = false;
  } else {
    throw ValidationError("table must be I or II");
  }
  std::string out = is_a ? "A,omegaT_over_pi\n" : "B,omegaT_over_pi\n";
  for (double v : values) {
    const CalibrationResult r = is_a ? solve_omega_T_for_A(v, tol) : solve_omega_T_for_B(v, tol);
    char param[32];
    std::snprintf(param, sizeof param, "%.6g", v);
    out += std::string(param) + ',' + io::format_double(r.value / kPi) + '\n';
  }
  return out;
}

int cmd_tables(const std::string& which, const std::string& out, double tol, std::ostream& log) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  emit(out, table_csv(which, tol), log);
  return kOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (!cfg.schedule.empty()) throw ValidationError("synth builds a schedule; drop --schedule");
  if (cfg.out.empty()) throw ValidationError("synth needs --out for the schedule CSV");
  BuiltSchedule built = build_schedule(cfg);

  std::vector<std::pair<std::string, PulseSchedule>> variants;
  if (built.schedule.strategy == Strategy::b && cfg.neglect_imag) {
    variants.emplace_back(cfg.out, strategy_b_variant(built.schedule, false));
    variants.emplace_back(variant_path(cfg.out, "_neglect_imag"), built.schedule);
  } else {
    variants.emplace_back(cfg.out, built.schedule);
  }

  json summary;
  summary["schema_version"] = io::kSchemaVersion;
  summary["kind"] = "synth_summary";
  summary["config"] = cfg.to_json();
  summary["calibration"] = built.calibration;
  summary["files"] = json::array();
  for (const auto& [path, schedule] : variants) {
    const auto times = io::schedule_sample_times(schedule, cfg.samples_per_period);
    io::write_file_atomic(path, io::schedule_csv(schedule, times));
    json f = schedule_header(schedule);
    f["path"] = path;
    f["samples"] = times.size();
    f["envelope"] = envelope_extrema(schedule, times);
    summary["files"].push_back(f);
  }
  emit(cfg.summary, summary.dump(2) + "\n", log);
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  BuiltSchedule built = build_schedule(cfg);
  const PulseSchedule& s = built.schedule;

  PropagationConfig pc;
  pc.steps_per_carrier_period = cfg.steps_per_period;
  pc.record_stride = cfg.record_stride;

  TransferReport report;
  const StateVector psi0 = basis_state(1);
  const bool analytic = !s.sampled && (s.strategy == Strategy::a || s.strategy == Strategy::c);
  if (analytic) {
    report = propagate_with_analytic(s, trajectory_for(s), psi0, pc);
  } else {
    report = propagate(s, psi0, pc);
  }

  if (!cfg.out.empty()) io::write_file_atomic(cfg.out, io::report_csv(report, built.time_unit));

  json summary;
  summary["schema_version"] = io::kSchemaVersion;
  summary["kind"] = "transfer_summary";
  summary["config"] = cfg.to_json();
  summary["schedule"] = schedule_header(s);
  summary["calibration"] = built.calibration;
  summary["time_unit"] = built.time_unit;
  summary["final_populations"] = report.final_populations;
  summary["P3_final"] = report.final_populations[2];
  summary["max_P2"] = report.max_p2;
  summary["norm_drift"] = report.norm_drift;
  summary["analytic_deviation"] = report.analytic_deviation;
  summary["analytic_population_deviation"] = report.analytic_population_deviation;
  summary["steps"] = report.steps;
  summary["step_size"] = report.step_size;
  if (!cfg.out.empty()) summary["report"] = cfg.out;
  emit(cfg.summary, summary.dump(2) + "\n", log);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  cfg.validate();
  BuiltSchedule built = build_schedule(cfg);
  const AuxiliaryTrajectory traj = trajectory_for(built.schedule);

  VerificationOptions opts;
  opts.samples = cfg.verify_samples;
  opts.propagation.steps_per_carrier_period = cfg.steps_per_period;
  opts.propagation.record_stride = cfg.record_stride;
  const VerificationReport report = verify_schedule(built.schedule, traj, opts);

  json j;
  j["schema_version"] = io::kSchemaVersion;
  j["kind"] = "verification";
  j["schedule"] = schedule_header(built.schedule);
  j["checks"] = json::array();
  for (const CheckResult& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"skipped", c.skipped},
                           {"value", c.value},
                           {"threshold", c.threshold},
                           {"detail", c.detail}});
  }
  j["passed"] = report.all_passed();
  j["failed"] = report.failed();
  emit(cfg.out, j.dump(2) + "\n", log);

  if (!report.all_passed()) {
    err << "verification failed:";
    for (const auto& name : report.failed()) err << ' ' << name;
    err << '\n';
    return kValidation;
  }
  return kOk;
}

int cmd_calibrate_c(double target, const std::string& out, std::ostream& log) {
  if (!(target > 0.0)) throw ValidationError("target_delta_epsilon must be positive");
  const CalibrationResult r = calibrate_strategy_c(target);
  const int n = static_cast<int>(std::ceil(kPi / target - 1e-9));
  const PulseSchedule s = strategy_c(r.value, 1.0, 1);
  const auto times = io::schedule_sample_times(s, 20000);
  double im_max = 0.0;
  for (double t : times) im_max = std::max(im_max, std::abs(s.at(t).Omega_p.imag()));

  json j;
  j["schema_version"] = io::kSchemaVersion;
  j["kind"] = "calibration";
  j["target_delta_epsilon"] = target;
  j["Omega0_over_omega"] = r.value;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["n_periods"] = n;
  j["max_abs_imag_over_omega"] = im_max;
  emit(out, j.dump(2) + "\n", log);
  return kOk;
}

}  // namespace lrsta::cli
