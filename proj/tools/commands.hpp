#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lrsta/synthesis.hpp"
#include "run_config.hpp"

namespace lrsta::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

/// Runs `body`, printing any escaping error to `err` and mapping it to an
/// exit code.
int guarded(std::ostream& err, const std::function<int()>& body);

struct BuiltSchedule {
  PulseSchedule schedule;
  nlohmann::json calibration;  // null when nothing was calibrated
  double time_unit = 1.0;      // T for a/b, pi/(2 omega) for c
};

/// Synthesizes (calibrating as needed) or loads the configured schedule.
BuiltSchedule build_schedule(const RunConfig& cfg);

/// CSV rows (param, omegaT_over_pi) for table I (A) or II (B).
std::string table_csv(const std::string& which, double tol);

int cmd_tables(const std::string& which, const std::string& out, double tol, std::ostream& log);
int cmd_synth(const RunConfig& cfg, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_calibrate_c(double target, const std::string& out, std::ostream& log);

}  // namespace lrsta::cli
