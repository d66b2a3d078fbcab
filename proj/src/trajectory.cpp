#include "lrsta/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrsta/errors.hpp"

namespace lrsta {

bool AuxParams::finite() const {
  for (double v : {alpha, beta, epsilon, lambda, theta, alpha_dot, beta_dot, epsilon_dot,
                   lambda_dot, theta_dot}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double AuxParams::constraint_residual() const {
  return alpha_dot - lambda_dot * std::cos(beta) * std::cos(epsilon);
}

StateVector basis_state(int k) {
  if (k < 1 || k > 3) throw ArgumentError("basis index must be 1, 2 or 3");
  StateVector v = StateVector::Zero();
  v(k - 1) = 1.0;
  return v;
}

namespace {

double domain_slack(double t_start, double t_end) {
  return 1e-12 * std::max({1.0, std::abs(t_start), std::abs(t_end)});
}

}  // namespace

AuxiliaryTrajectory::AuxiliaryTrajectory(Evaluator evaluator, double t_start, double t_end)
    : evaluator_(std::move(evaluator)), t_start_(t_start), t_end_(t_end) {
  if (!evaluator_) throw ArgumentError("trajectory evaluator is empty");
  if (!(t_start <= t_end)) throw ArgumentError("trajectory domain must satisfy t_start <= t_end");
}

bool AuxiliaryTrajectory::contains(double t) const {
  const double slack = domain_slack(t_start_, t_end_);
  return t >= t_start_ - slack && t <= t_end_ + slack;
}

AuxParams AuxiliaryTrajectory::at(double t) const {
  if (!contains(t)) {
    std::ostringstream msg;
    msg << "time " << t << " outside trajectory domain [" << t_start_ << ", " << t_end_ << "]";
    throw DomainError(msg.str());
  }
  return evaluator_(t);
}

double AuxiliaryTrajectory::max_constraint_residual(int samples) const {
  double worst = 0.0;
  const int n = std::max(samples, 2);
  for (int i = 0; i < n; ++i) {
    const double t = t_start_ + (t_end_ - t_start_) * i / (n - 1);
    worst = std::max(worst, std::abs(evaluator_(t).constraint_residual()));
  }
  return worst;
}

CumulativeIntegral::CumulativeIntegral(numerics::RealFunction f, double t0, double t1,
                                       double node_spacing, double abs_tol)
    : f_(std::move(f)), t0_(t0), spacing_(node_spacing), abs_tol_(abs_tol) {
  if (!(t1 >= t0)) throw ArgumentError("cumulative integral needs t1 >= t0");
  if (!(node_spacing > 0.0)) throw ArgumentError("node spacing must be positive");
  const auto count = static_cast<std::size_t>(std::ceil((t1 - t0) / spacing_)) + 1;
  nodes_.reserve(count + 1);
  nodes_.push_back(0.0);
  numerics::QuadratureOptions opts;
  opts.abs_tol = abs_tol_;
  opts.initial_panels = 8;
  for (std::size_t k = 1; k <= count; ++k) {
    const double a = t0_ + spacing_ * static_cast<double>(k - 1);
    nodes_.push_back(nodes_.back() + numerics::integrate(f_, a, a + spacing_, opts));
  }
}

double CumulativeIntegral::operator()(double t) const {
  const double offset = (t - t0_) / spacing_;
  const auto last = static_cast<double>(nodes_.size() - 1);
  const double k = std::clamp(std::floor(offset), 0.0, last);
  const double base = t0_ + spacing_ * k;
  if (t == base) return nodes_[static_cast<std::size_t>(k)];
  numerics::QuadratureOptions opts;
  opts.abs_tol = abs_tol_;
  opts.initial_panels = 8;
  return nodes_[static_cast<std::size_t>(k)] + numerics::integrate(f_, base, t, opts);
}

}  // namespace lrsta
