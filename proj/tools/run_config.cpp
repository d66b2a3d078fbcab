#include "run_config.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "lrsta/io.hpp"

namespace lrsta::cli {

using nlohmann::json;

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config key '") + key + "' has the wrong type");
  }
}

template <typename T>
void read_key(const json& j, const char* key, std::optional<T>& dst) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T v{};
  read_key(j, key, v);
  dst = v;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be positive and finite");
  }
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

void RunConfig::validate() const {
  if (schedule.empty() && strategy != "a" && strategy != "b" && strategy != "c") {
    throw ValidationError("strategy must be one of a, b, c (got '" + strategy + "')");
  }
  require_positive(omega, "omega");
  require_positive(calibration_tol, "calibration_tol");
  if (steps_per_period < 100) throw ValidationError("steps_per_period must be at least 100");
  if (record_stride < 0) throw ValidationError("record_stride must be non-negative");
  if (samples_per_period < 1) throw ValidationError("samples_per_period must be positive");
  if (verify_samples < 1) throw ValidationError("verify_samples must be positive");
  if (!schedule.empty()) return;

  const bool is_a = strategy == "a", is_b = strategy == "b", is_c = strategy == "c";
  if (A && !is_a) throw ValidationError("A only applies to strategy a");
  if (B && !is_b) throw ValidationError("B only applies to strategy b");
  if (omega_T && is_c) throw ValidationError("omega_T does not apply to strategy c");
  if (neglect_imag && !is_b) throw ValidationError("neglect_imag only applies to strategy b");
  if ((Omega0_over_omega || target_delta_epsilon || n_periods) && !is_c) {
    throw ValidationError("Omega0_over_omega, target_delta_epsilon and n_periods only apply to strategy c");
  }
  if (is_a && !A) throw ValidationError("strategy a needs A");
  if (is_b && !B) throw ValidationError("strategy b needs B");
  if (A) require_positive(*A, "A");
  if (B) require_positive(*B, "B");
  if (omega_T) require_positive(*omega_T, "omega_T");
  if (is_b && !(delta_t_over_T > 0.0 && delta_t_over_T < 0.5)) {
    throw ValidationError("delta_t_over_T must lie in (0, 0.5)");
  }
  if (is_c) {
    if (Omega0_over_omega && target_delta_epsilon) {
      throw ValidationError("give either Omega0_over_omega or target_delta_epsilon, not both");
    }
    if (Omega0_over_omega && !(*Omega0_over_omega >= 0.0)) {
      throw ValidationError("Omega0_over_omega must be non-negative");
    }
    if (target_delta_epsilon) require_positive(*target_delta_epsilon, "target_delta_epsilon");
    if (n_periods && *n_periods < 1) throw ValidationError("n_periods must be at least 1");
  }
}

json RunConfig::to_json() const {
  json j;
  j["strategy"] = strategy;
  j["omega"] = omega;
  j["A"] = opt(A);
  j["B"] = opt(B);
  j["omega_T"] = opt(omega_T);
  j["delta_t_over_T"] = delta_t_over_T;
  j["neglect_imag"] = neglect_imag;
  j["Omega0_over_omega"] = opt(Omega0_over_omega);
  j["target_delta_epsilon"] = opt(target_delta_epsilon);
  j["n_periods"] = opt(n_periods);
  j["steps_per_period"] = steps_per_period;
  j["record_stride"] = record_stride;
  j["samples_per_period"] = samples_per_period;
  j["verify_samples"] = verify_samples;
  j["calibration_tol"] = calibration_tol;
  if (!schedule.empty()) j["schedule"] = schedule;
  return j;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> known = {
      "strategy", "omega", "A", "B", "omega_T", "delta_t_over_T", "neglect_imag",
      "Omega0_over_omega", "target_delta_epsilon", "n_periods", "steps_per_period",
      "record_stride", "samples_per_period", "verify_samples", "calibration_tol",
      "schedule", "out", "summary"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
  }
  read_key(j, "strategy", cfg.strategy);
  read_key(j, "omega", cfg.omega);
  read_key(j, "A", cfg.A);
  read_key(j, "B", cfg.B);
  read_key(j, "omega_T", cfg.omega_T);
  read_key(j, "delta_t_over_T", cfg.delta_t_over_T);
  read_key(j, "neglect_imag", cfg.neglect_imag);
  read_key(j, "Omega0_over_omega", cfg.Omega0_over_omega);
  read_key(j, "target_delta_epsilon", cfg.target_delta_epsilon);
  read_key(j, "n_periods", cfg.n_periods);
  read_key(j, "steps_per_period", cfg.steps_per_period);
  read_key(j, "record_stride", cfg.record_stride);
  read_key(j, "samples_per_period", cfg.samples_per_period);
  read_key(j, "verify_samples", cfg.verify_samples);
  read_key(j, "calibration_tol", cfg.calibration_tol);
  read_key(j, "schedule", cfg.schedule);
  read_key(j, "out", cfg.out);
  read_key(j, "summary", cfg.summary);
}

RunConfig load_run_config(const std::string& path) {
  const std::string text = io::read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("cannot parse config " + path + ": " + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

}  // namespace lrsta::cli
