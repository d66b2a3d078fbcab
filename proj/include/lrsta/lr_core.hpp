#pragma once

#include <array>
#include <functional>

#include "lrsta/trajectory.hpp"
#include "lrsta/types.hpp"

namespace lrsta {

/// Drive amplitudes at one instant: complex Rabi envelopes and detunings, all
/// angular frequencies.
struct DriveSample {
  Complex Omega_p{0.0, 0.0};
  Complex Omega_s{0.0, 0.0};
  double Delta_p = 0.0;
  double Delta_s = 0.0;
};

/// Carrier frequencies plus evaluable envelopes on [t_start, t_end].
struct SystemParams {
  using Drive = std::function<DriveSample(double)>;

  SystemParams(double omega_p, double omega_s, Drive drive, double t_start, double t_end);

  double omega_p;
  double omega_s;
  Drive drive;
  double t_start;
  double t_end;

  bool contains(double t) const;
  /// Throws DomainError outside the domain.
  DriveSample at(double t) const;
};

/// Full three-level Hamiltonian (hbar = 1) with the carrier cosines kept, i.e.
/// without any rotating-wave approximation.
HermitianMatrix3 hamiltonian(double omega_p, double omega_s, const DriveSample& drive, double t);
HermitianMatrix3 hamiltonian_at(const SystemParams& sys, double t);

/// Lewis-Riesenfeld invariant I(alpha, beta, epsilon, lambda). Eigenvalues are
/// +1, -1 and 0.
HermitianMatrix3 invariant_at(const AuxParams& aux);

struct InvariantEigenbasis {
  StateVector phi_plus;   // eigenvalue +1
  StateVector phi_minus;  // eigenvalue -1
  StateVector phi_zero;   // eigenvalue 0
};

/// Closed-form eigenvectors of invariant_at(aux).
InvariantEigenbasis invariant_eigenvectors(const AuxParams& aux);

/// Frobenius norm of i dI/dt - [H, I] with dI/dt from a central difference of
/// step h. Vanishes (as O(h^2)) when the schedule was synthesized from the
/// trajectory.
double invariance_residual(const SystemParams& sys, const AuxiliaryTrajectory& traj, double t,
                           double h);

/// theta_dot of the zero eigenvector from the closed-form quotient
///   -(eps_dot + 2 lambda_dot sin(eps) cos(beta) cot(2 alpha)) / sin^2(beta).
/// This is the phase rate of phi0 relative to phi+ and phi-, which share a
/// common (generally nonzero) phase; only the difference enters psi(t).
/// Throws SingularityError where the quotient has a pole.
double lr_phase_rate(const AuxParams& aux);

/// <phi_k| i d/dt - H |phi_k> for (phi_plus, phi_minus, phi_zero), with the
/// time derivative of phi_k taken by central difference of step h.
std::array<double, 3> lr_phase_rates_numeric(const SystemParams& sys,
                                             const AuxiliaryTrajectory& traj, double t, double h);

/// psi(t) = C+ phi+(t) + C- phi-(t) + exp(i theta(t)) C0 phi0(t) with
/// C_k = <phi_k(t_start)|psi0>. Throws ArgumentError for unnormalized psi0.
StateVector analytic_evolution(const AuxiliaryTrajectory& traj, const StateVector& psi0, double t);

/// Final state for beta(0) = beta(T) = 0, lambda = 0, psi0 = |1>:
/// (cos^2 a + e^{i eps} sin^2 a, 0, (1 - e^{i eps}) sin a cos a).
StateVector final_state_prediction(double alpha, double epsilon_T);

/// Multiplies v by the phase that makes its largest-magnitude component real
/// and positive. With `reference` set, the component index is taken from it.
StateVector align_global_phase(const StateVector& v);
StateVector align_global_phase(const StateVector& v, const StateVector& reference);

}  // namespace lrsta
