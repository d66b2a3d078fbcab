#pragma once

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "lrsta/synthesis.hpp"
#include "lrsta/trajectory.hpp"
#include "lrsta/types.hpp"

namespace lrsta {

struct PropagationConfig {
  int steps_per_carrier_period = 2000;
  /// Record every `record_stride` steps; 0 means ten samples per carrier period.
  int record_stride = 0;
  /// Defaults to the schedule domain.
  std::optional<double> t_start;
  std::optional<double> t_end;

  /// Throws ArgumentError when below the 100-steps-per-period floor or when
  /// the stride is negative.
  void validate() const;
};

/// Populations P_j(t) = |<j|psi(t)>|^2 recorded along one propagation.
struct TransferReport {
  std::vector<double> times;
  std::vector<std::array<double, 3>> populations;
  std::vector<double> norms;
  std::vector<StateVector> states;

  std::array<double, 3> final_populations{};
  StateVector final_state = StateVector::Zero();
  double norm_drift = 0.0;  // max |norm - 1| over recorded samples
  double max_p2 = 0.0;
  /// Filled in by compare_with_analytic; NaN when not computed.
  double analytic_deviation = std::numeric_limits<double>::quiet_NaN();
  double analytic_population_deviation = std::numeric_limits<double>::quiet_NaN();

  int steps = 0;
  double step_size = 0.0;
};

/// Integrates i d/dt psi = H(t) psi with fixed-step classical RK4. The norm is
/// never corrected; its drift is reported. Throws PropagationError when the
/// Hamiltonian is non-finite.
TransferReport propagate(const PulseSchedule& schedule, const StateVector& psi0,
                         const PropagationConfig& cfg = {});

/// Max componentwise |psi_rk4 - psi_analytic| over recorded samples, both
/// states aligned on the phase of the largest propagated component.
double compare_with_analytic(const PulseSchedule& schedule, const AuxiliaryTrajectory& traj,
                             const StateVector& psi0, const PropagationConfig& cfg = {});

/// Same samples, comparing populations |c_j|^2 instead of amplitudes.
double compare_populations_with_analytic(const PulseSchedule& schedule,
                                         const AuxiliaryTrajectory& traj,
                                         const StateVector& psi0,
                                         const PropagationConfig& cfg = {});

/// Propagation plus both analytic comparisons in one pass.
TransferReport propagate_with_analytic(const PulseSchedule& schedule,
                                       const AuxiliaryTrajectory& traj, const StateVector& psi0,
                                       const PropagationConfig& cfg = {});

struct ConvergencePoint {
  int steps_per_period = 0;
  double p3_final = 0.0;
  StateVector final_state = StateVector::Zero();
};

/// Final P3 at each resolution in `steps_list` (ascending). `base` supplies the
/// time window.
std::vector<ConvergencePoint> convergence_study(const PulseSchedule& schedule,
                                                const StateVector& psi0,
                                                const std::vector<int>& steps_list,
                                                const PropagationConfig& base = {});

/// log2 of successive ratios of final-state differences; for a 2x refinement
/// ladder this is the empirical order of accuracy. Final P3 is a poor probe
/// near complete transfer, where the O(h^5) norm loss of RK4 dominates it.
/// Empty when fewer than three points.
std::vector<double> observed_orders(const std::vector<ConvergencePoint>& study);

}  // namespace lrsta
