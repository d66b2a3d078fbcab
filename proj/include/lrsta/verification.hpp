#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrsta/propagator.hpp"
#include "lrsta/synthesis.hpp"

namespace lrsta {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // pass bound (or target)
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  /// True when every non-skipped check passed.
  bool all_passed() const;
  std::vector<std::string> failed() const;
};

struct VerificationOptions {
  int samples = 50;
  /// Explicit sample times; replaces the uniform interior grid when set.
  std::optional<std::vector<double>> sample_times;
  /// Residual step as a fraction of the schedule duration.
  double fd_step_fraction = 1e-6;
  /// Coarsest step of the convergence ladder, in units of 1/omega.
  double ladder_start = 0.05;
  int ladder_levels = 5;
  double slope_tolerance = 0.1;
  /// Run RK4 and the analytic comparison (skipped automatically for strategy
  /// B and for sampled schedules).
  bool propagate = true;
  PropagationConfig propagation;
};

/// Invariance residual (value and h^2 convergence), invariant spectrum and
/// eigenvectors, LR phases of phi+/phi-, analytic agreement and norm drift.
VerificationReport verify_schedule(const PulseSchedule& schedule,
                                   const AuxiliaryTrajectory& traj,
                                   const VerificationOptions& opts = {});

/// Least-squares slope of log(residual) against log(h), residual summed over
/// `times`. Returns NaN when the residual is at round-off level throughout.
double invariance_convergence_slope(const SystemParams& sys, const AuxiliaryTrajectory& traj,
                                    const std::vector<double>& times,
                                    const std::vector<double>& steps);

/// Uniform interior sample times at least `margin` away from both ends,
/// excluding strategy-B modification intervals. Sampled schedules use their
/// stored knots instead of the uniform grid.
std::vector<double> verification_times(const PulseSchedule& schedule, int samples,
                                       double margin);

}  // namespace lrsta
