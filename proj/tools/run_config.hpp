#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lrsta/errors.hpp"

namespace lrsta::cli {

/// Bad command-line or config input; maps to exit code 1.
class ValidationError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Everything a synth/simulate/verify run needs. Unset optionals are either
/// calibrated (omega_T, Omega0_over_omega, n_periods) or irrelevant to the
/// chosen strategy.
struct RunConfig {
  std::string strategy;  // "a", "b" or "c"
  double omega = 1.0;

  std::optional<double> A;
  std::optional<double> B;
  std::optional<double> omega_T;  // skip calibration when given
  double delta_t_over_T = 0.01;
  bool neglect_imag = false;

  std::optional<double> Omega0_over_omega;
  std::optional<double> target_delta_epsilon;
  std::optional<int> n_periods;

  int steps_per_period = 2000;
  int record_stride = 0;
  int samples_per_period = 200;  // schedule CSV resolution
  int verify_samples = 50;
  double calibration_tol = 1e-6;  // bisection width, units of pi for omega*T

  std::string schedule;  // load a schedule CSV instead of synthesizing
  std::string out;
  std::string summary;

  /// Throws ValidationError when parameters do not match the strategy or a
  /// numeric setting is out of range.
  void validate() const;

  nlohmann::json to_json() const;
};

/// Fills `cfg` from a JSON object; unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace lrsta::cli
