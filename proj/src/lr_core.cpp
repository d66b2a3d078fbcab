#include "lrsta/lr_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrsta/errors.hpp"
#include "lrsta/numerics.hpp"

namespace lrsta {

SystemParams::SystemParams(double omega_p_, double omega_s_, Drive drive_, double t_start_,
                           double t_end_)
    : omega_p(omega_p_), omega_s(omega_s_), drive(std::move(drive_)), t_start(t_start_),
      t_end(t_end_) {
  if (!(omega_p > 0.0) || !(omega_s > 0.0)) {
    throw ArgumentError("carrier frequencies must be positive");
  }
  if (!drive) throw ArgumentError("drive function is empty");
  if (!(t_start <= t_end)) throw ArgumentError("schedule domain must satisfy t_start <= t_end");
}

bool SystemParams::contains(double t) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(t_start), std::abs(t_end)});
  return t >= t_start - slack && t <= t_end + slack;
}

DriveSample SystemParams::at(double t) const {
  if (!contains(t)) {
    std::ostringstream msg;
    msg << "time " << t << " outside schedule domain [" << t_start << ", " << t_end << "]";
    throw DomainError(msg.str());
  }
  return drive(t);
}

HermitianMatrix3 hamiltonian(double omega_p, double omega_s, const DriveSample& d, double t) {
  const double cp = std::cos(omega_p * t);
  const double cs = std::cos(omega_s * t);
  HermitianMatrix3 h = HermitianMatrix3::Zero();
  h(0, 0) = -omega_p - d.Delta_p;
  h(2, 2) = -omega_s - d.Delta_s;
  h(0, 1) = d.Omega_p * cp;
  h(1, 0) = std::conj(d.Omega_p) * cp;
  h(1, 2) = std::conj(d.Omega_s) * cs;
  h(2, 1) = d.Omega_s * cs;
  return h;
}

HermitianMatrix3 hamiltonian_at(const SystemParams& sys, double t) {
  return hamiltonian(sys.omega_p, sys.omega_s, sys.at(t), t);
}

HermitianMatrix3 invariant_at(const AuxParams& aux) {
  if (!aux.finite()) throw ArgumentError("invariant_at: non-finite auxiliary parameters");
  const double ca = std::cos(aux.alpha), sa = std::sin(aux.alpha);
  const double cb = std::cos(aux.beta), sb = std::sin(aux.beta);
  const double c2l = std::cos(2.0 * aux.lambda), s2l = std::sin(2.0 * aux.lambda);
  const double ce = std::cos(aux.epsilon), se = std::sin(aux.epsilon);
  const double s2a = std::sin(2.0 * aux.alpha), c2a = std::cos(2.0 * aux.alpha);
  const Complex e_plus = std::polar(1.0, aux.epsilon);

  const double i11 = c2l * (ca * ca * cb * cb - sa * sa) + ce * cb * s2a * s2l;
  const Complex i12 = (ca * c2l * cb + std::conj(e_plus) * sa * s2l) * sb;
  const Complex i13 = 0.25 * c2l * (3.0 + std::cos(2.0 * aux.beta)) * s2a -
                      cb * Complex(ce * c2a, se) * s2l;
  const double i22 = c2l * sb * sb;
  const Complex i23 = (sa * c2l * cb - e_plus * ca * s2l) * sb;
  const double i33 = c2l * (sa * sa * cb * cb - ca * ca) - ce * cb * s2a * s2l;

  HermitianMatrix3 inv;
  inv << i11, i12, i13,
         std::conj(i12), i22, i23,
         std::conj(i13), std::conj(i23), i33;
  return inv;
}

InvariantEigenbasis invariant_eigenvectors(const AuxParams& aux) {
  const double ca = std::cos(aux.alpha), sa = std::sin(aux.alpha);
  const double cb = std::cos(aux.beta), sb = std::sin(aux.beta);
  const double cl = std::cos(aux.lambda), sl = std::sin(aux.lambda);
  // exp(-i eps): with exp(+i eps) the +-1 vectors stop being eigenvectors of
  // the invariant as soon as sin(eps) sin(lambda) != 0.
  const Complex e = std::polar(1.0, -aux.epsilon);

  InvariantEigenbasis basis;
  basis.phi_plus << ca * cb * cl + e * sa * sl, sb * cl, sa * cb * cl - e * ca * sl;
  basis.phi_minus << ca * cb * sl - e * sa * cl, sb * sl, sa * cb * sl + e * ca * cl;
  basis.phi_zero << ca * sb, -cb, sa * sb;
  return basis;
}

double invariance_residual(const SystemParams& sys, const AuxiliaryTrajectory& traj, double t,
                           double h) {
  if (!(h > 0.0)) throw ArgumentError("invariance_residual: step h must be positive");
  auto invariant = [&traj](double s) -> HermitianMatrix3 { return invariant_at(traj.at(s)); };
  const HermitianMatrix3 di = numerics::central_diff(invariant, t, h);
  const HermitianMatrix3 inv = invariant(t);
  const HermitianMatrix3 ham = hamiltonian_at(sys, t);
  const HermitianMatrix3 r = kI * di - (ham * inv - inv * ham);
  return r.norm();
}

double lr_phase_rate(const AuxParams& aux) {
  const double sb = std::sin(aux.beta);
  double coupling = 0.0;
  if (aux.lambda_dot != 0.0) {
    const double s2a = std::sin(2.0 * aux.alpha);
    if (std::abs(s2a) < 1e-14) {
      throw SingularityError("lr_phase_rate: cot(2 alpha) pole with nonzero lambda_dot");
    }
    coupling = 2.0 * aux.lambda_dot * std::sin(aux.epsilon) * std::cos(aux.beta) *
               std::cos(2.0 * aux.alpha) / s2a;
  }
  const double numerator = aux.epsilon_dot + coupling;
  if (std::abs(sb) < 1e-14) {
    if (numerator == 0.0) return 0.0;
    throw SingularityError("lr_phase_rate: sin(beta) = 0 with nonzero numerator");
  }
  return -numerator / (sb * sb);
}

std::array<double, 3> lr_phase_rates_numeric(const SystemParams& sys,
                                             const AuxiliaryTrajectory& traj, double t,
                                             double h) {
  if (!(h > 0.0)) throw ArgumentError("lr_phase_rates_numeric: step h must be positive");
  const InvariantEigenbasis up = invariant_eigenvectors(traj.at(t + h));
  const InvariantEigenbasis down = invariant_eigenvectors(traj.at(t - h));
  const InvariantEigenbasis mid = invariant_eigenvectors(traj.at(t));
  const HermitianMatrix3 ham = hamiltonian_at(sys, t);

  auto rate = [&](const StateVector& phi, const StateVector& a, const StateVector& b) {
    const StateVector dphi = (a - b) / (2.0 * h);
    return (phi.dot(kI * dphi) - phi.dot(ham * phi)).real();
  };
  return {rate(mid.phi_plus, up.phi_plus, down.phi_plus),
          rate(mid.phi_minus, up.phi_minus, down.phi_minus),
          rate(mid.phi_zero, up.phi_zero, down.phi_zero)};
}

StateVector analytic_evolution(const AuxiliaryTrajectory& traj, const StateVector& psi0,
                               double t) {
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw ArgumentError("analytic_evolution: initial state is not normalized");
  }
  const InvariantEigenbasis start = invariant_eigenvectors(traj.at(traj.t_start()));
  const AuxParams aux = traj.at(t);
  const InvariantEigenbasis now = invariant_eigenvectors(aux);
  // Eigen's dot() conjugates the left operand.
  const Complex c_plus = start.phi_plus.dot(psi0);
  const Complex c_minus = start.phi_minus.dot(psi0);
  const Complex c_zero = start.phi_zero.dot(psi0);
  return c_plus * now.phi_plus + c_minus * now.phi_minus +
         std::polar(1.0, aux.theta) * c_zero * now.phi_zero;
}

StateVector final_state_prediction(double alpha, double epsilon_T) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const Complex e = std::polar(1.0, epsilon_T);
  StateVector psi;
  psi << ca * ca + e * sa * sa, 0.0, (1.0 - e) * sa * ca;
  return psi;
}

namespace {

Eigen::Index largest_component(const StateVector& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  return k;
}

StateVector rotate_to_real(const StateVector& v, Eigen::Index k) {
  const double mag = std::abs(v(k));
  if (mag == 0.0) return v;
  return v * (std::conj(v(k)) / mag);
}

}  // namespace

StateVector align_global_phase(const StateVector& v) {
  return rotate_to_real(v, largest_component(v));
}

StateVector align_global_phase(const StateVector& v, const StateVector& reference) {
  return rotate_to_real(v, largest_component(reference));
}

}  // namespace lrsta
