#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lrsta/numerics.hpp"
#include "lrsta/types.hpp"

namespace lrsta {

/// Time-dependent auxiliary parameters on a closed domain [t_start, t_end].
class AuxiliaryTrajectory {
 public:
  using Evaluator = std::function<AuxParams(double)>;

  AuxiliaryTrajectory(Evaluator evaluator, double t_start, double t_end);

  /// Throws DomainError outside [t_start, t_end].
  AuxParams at(double t) const;
  AuxParams operator()(double t) const { return at(t); }

  bool contains(double t) const;
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }

  /// Largest |constraint_residual| over `samples` uniformly spaced times.
  double max_constraint_residual(int samples = 257) const;

 private:
  Evaluator evaluator_;
  double t_start_;
  double t_end_;
};

/// F(t) = integral of f from t0 to t, for t in [t0, t1]. Values at evenly
/// spaced nodes are computed once; each query integrates only from the
/// nearest node below t.
class CumulativeIntegral {
 public:
  CumulativeIntegral(numerics::RealFunction f, double t0, double t1, double node_spacing,
                     double abs_tol = 1e-12);

  double operator()(double t) const;

 private:
  numerics::RealFunction f_;
  double t0_;
  double spacing_;
  double abs_tol_;
  std::vector<double> nodes_;
};

}  // namespace lrsta
