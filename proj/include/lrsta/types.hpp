#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace lrsta {

using Complex = std::complex<double>;

/// Amplitudes (c1, c2, c3) on the basis {|1>, |2>, |3>}.
using StateVector = Eigen::Vector3cd;

/// 3x3 complex matrix expected to equal its own adjoint (a Hamiltonian or an
/// invariant). Hermiticity is a property of the producers, not enforced by the type.
using HermitianMatrix3 = Eigen::Matrix3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Auxiliary angles of the invariant and their first time derivatives.
/// theta is the Lewis-Riesenfeld phase attached to the zero eigenvector.
struct AuxParams {
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  double lambda = 0.0;
  double theta = 0.0;

  double alpha_dot = 0.0;
  double beta_dot = 0.0;
  double epsilon_dot = 0.0;
  double lambda_dot = 0.0;
  double theta_dot = 0.0;

  bool finite() const;

  /// alpha_dot - lambda_dot * cos(beta) * cos(epsilon); must vanish for I(t)
  /// to be a dynamical invariant.
  double constraint_residual() const;
};

/// Basis state |k>, k in {1, 2, 3}.
StateVector basis_state(int k);

}  // namespace lrsta
