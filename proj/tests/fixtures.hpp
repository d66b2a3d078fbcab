// Shared test trajectories built on the library API.
#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "lrsta/lr_core.hpp"
#include "lrsta/synthesis.hpp"
#include "lrsta/trajectory.hpp"

namespace fixture {

inline lrsta::AuxParams random_aux(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  lrsta::AuxParams a;
  a.alpha = angle(rng);
  a.beta = angle(rng);
  a.epsilon = angle(rng);
  a.lambda = angle(rng);
  return a;
}

/// Smooth trajectory with every angle moving, lambda_dot != 0, and alpha
/// integrated from the constraint. The domain [-1.2, 1.2] avoids the carrier
/// zeros +-pi/2 of omega = 1.
inline lrsta::AuxiliaryTrajectory wobbling_trajectory(double p1, double p2, double p3) {
  using lrsta::AuxParams;
  struct Shape {
    double p1, p2, p3;
    double beta(double t) const { return 0.7 + 0.3 * std::sin(1.3 * t + p1); }
    double beta_dot(double t) const { return 0.39 * std::cos(1.3 * t + p1); }
    double eps(double t) const { return 0.4 + 0.5 * std::sin(0.7 * t + p2); }
    double eps_dot(double t) const { return 0.35 * std::cos(0.7 * t + p2); }
    double lam(double t) const { return 0.2 * std::sin(0.9 * t + p3); }
    double lam_dot(double t) const { return 0.18 * std::cos(0.9 * t + p3); }
    double alpha_dot(double t) const {
      return lam_dot(t) * std::cos(beta(t)) * std::cos(eps(t));
    }
  };
  const Shape s{p1, p2, p3};
  const double t0 = -1.2, t1 = 1.2;
  auto alpha = std::make_shared<lrsta::CumulativeIntegral>(
      [s](double t) { return s.alpha_dot(t); }, t0, t1, 0.05);
  auto eval = [s, alpha](double t) {
    AuxParams a;
    a.alpha = 0.5 + (*alpha)(t);
    a.alpha_dot = s.alpha_dot(t);
    a.beta = s.beta(t);
    a.beta_dot = s.beta_dot(t);
    a.epsilon = s.eps(t);
    a.epsilon_dot = s.eps_dot(t);
    a.lambda = s.lam(t);
    a.lambda_dot = s.lam_dot(t);
    a.theta_dot = lrsta::lr_phase_rate(a);
    return a;
  };
  return lrsta::AuxiliaryTrajectory(eval, t0, t1);
}

}  // namespace fixture
