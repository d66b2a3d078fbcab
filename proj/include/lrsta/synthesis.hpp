#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lrsta/lr_core.hpp"
#include "lrsta/trajectory.hpp"

namespace lrsta {

enum class Strategy {
  general,  // synthesized from an arbitrary trajectory
  a,        // smooth beta with built-in carrier-zero cancellation
  b,        // flat beta, envelope patched around carrier zeros
  c,        // envelope chosen first, beta solved backwards
};

std::string to_string(Strategy s);
/// Accepts "general", "a", "b", "c". Throws ArgumentError otherwise.
Strategy strategy_from_string(std::string_view name);

/// A synthesized pulse schedule: the drive itself plus the strategy tag and
/// the parameters that produced it (A, B, T, delta_t_over_T, neglect_imag,
/// Omega0, n_periods, ...).
struct PulseSchedule {
  SystemParams system;
  Strategy strategy = Strategy::general;
  std::map<std::string, double> params;
  /// Set for schedules rebuilt from stored samples (linear interpolation
  /// between samples, exact at them).
  bool sampled = false;
  /// Stored sample times of a sampled schedule; the drive is exact there.
  std::vector<double> knots;

  DriveSample at(double t) const { return system.at(t); }
  double t_start() const { return system.t_start; }
  double t_end() const { return system.t_end; }
  /// Common carrier frequency. Throws ArgumentError when omega_p != omega_s.
  double omega() const;
  /// Parameter lookup; throws ArgumentError when absent.
  double param(const std::string& key) const;
};

struct CalibrationResult {
  double parameter = 0.0;   // A, B or target delta-epsilon
  double value = 0.0;       // omega*T or Omega0/omega
  double residual = 0.0;    // defining equation evaluated at value
  int iterations = 0;
};

/// General inverse engineering: envelopes and detunings that make
/// invariant_at(traj) a dynamical invariant of the full Hamiltonian.
/// The trajectory must satisfy alpha_dot = lambda_dot cos(beta) cos(epsilon)
/// (ArgumentError otherwise) and its theta_dot must be the zero-eigenvector
/// phase rate. At zeros of a carrier cosine the envelope numerator has to
/// vanish; a nonzero numerator raises SynthesisError carrying the time.
PulseSchedule synthesize_general(const AuxiliaryTrajectory& traj, double omega_p,
                                 double omega_s);

// Strategy A: beta = (A/2)[1 - cos(2 pi t/T)] cos^2(omega t), alpha = pi/4.
AuxiliaryTrajectory trajectory_a(double A, double omega, double T);
PulseSchedule strategy_a(double A, double omega, double T);
/// Smallest omega*T with epsilon(T) = pi. `tol` is the bisection width on
/// omega*T in units of pi.
CalibrationResult solve_omega_T_for_A(double A, double tol = 1e-6);

// Strategy B: beta = (B/2)[1 - cos(2 pi t/T)], envelope replaced by a linear
// interpolation on (t_n - dt, t_n + dt) around every zero t_n of cos(omega t).
AuxiliaryTrajectory trajectory_b(double B, double omega, double T);
PulseSchedule strategy_b(double B, double omega, double T, double delta_t_over_T,
                         bool neglect_imag = false);
CalibrationResult solve_omega_T_for_B(double B, double tol = 1e-6);
/// Modification intervals of a strategy-B schedule, clipped to [0, T].
std::vector<std::pair<double, double>> strategy_b_intervals(double omega, double T,
                                                            double delta_t);

// Strategy C: Re[Omega] = Omega0 cos^3(omega t) on a domain starting at
// pi/(2 omega) and spanning n_periods carrier periods.
AuxiliaryTrajectory trajectory_c(double Omega0, double omega, int n_periods);
PulseSchedule strategy_c(double Omega0, double omega, int n_periods);
/// Increment of epsilon over one carrier period for Omega0/omega = ratio,
/// ratio in [0, 1/(2 sqrt 2)].
double delta_epsilon_per_period(double ratio);
/// Upper end of the reachable delta-epsilon range (ratio -> 1/(2 sqrt 2)).
double max_delta_epsilon_per_period();
/// Omega0/omega giving the requested delta-epsilon. `tol` is the bisection
/// width on the ratio.
CalibrationResult calibrate_strategy_c(double target_delta_epsilon, double tol = 1e-10);

/// Supremum of the admissible Omega0/omega for strategy C.
inline const double kStrategyCMaxRatio = 1.0 / (2.0 * std::numbers::sqrt2);

/// Zeros (k + 1/2) pi / omega of cos(omega t) lying in [t0, t1].
std::vector<double> carrier_zeros(double omega, double t0, double t1);

/// Rebuilds the auxiliary trajectory of a strategy A, B or C schedule from its
/// stored parameters. Throws ArgumentError for general schedules.
AuxiliaryTrajectory trajectory_for(const PulseSchedule& schedule);

}  // namespace lrsta
