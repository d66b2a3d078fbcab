#pragma once

#include <cstddef>
#include <functional>
#include <type_traits>

namespace lrsta::numerics {

using RealFunction = std::function<double(double)>;

/// Interval [lo, hi] on which a continuous function changes sign (or hits zero).
class Bracket {
 public:
  /// Evaluates f at both ends; throws ArgumentError unless lo < hi and
  /// f(lo) * f(hi) <= 0.
  static Bracket make(const RealFunction& f, double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double f_lo() const { return f_lo_; }
  double f_hi() const { return f_hi_; }

 private:
  Bracket(double lo, double hi, double f_lo, double f_hi)
      : lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  double lo_;
  double hi_;
  double f_lo_;
  double f_hi_;
};

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // f(x)
  int iterations = 0;
};

/// Bisection. Stops once the bracket is narrower than tol or f hits zero
/// exactly. Throws ConvergenceError after max_iterations halvings.
RootResult find_root(const RealFunction& f, const Bracket& bracket, double tol,
                     int max_iterations = 200);

/// Searches x0, 2*x0, 4*x0, ... for the first point where f changes sign
/// relative to f(x0) and returns the bracket [x/2, x]. Throws
/// CalibrationError when x would exceed x_max.
Bracket bracket_by_doubling(const RealFunction& f, double x0, double x_max);

struct QuadratureOptions {
  double abs_tol = 1e-9;
  std::size_t initial_panels = 64;
  std::size_t max_panels = std::size_t{1} << 20;
};

/// Composite Simpson rule with a fixed number of subintervals (rounded up to
/// an even count).
double simpson(const RealFunction& f, double a, double b, std::size_t subintervals);

/// Composite Simpson, doubling the subinterval count until two successive
/// estimates differ by less than opts.abs_tol. Earlier function values are
/// reused at each refinement.
double integrate(const RealFunction& f, double a, double b, const QuadratureOptions& opts);

inline double integrate(const RealFunction& f, double a, double b, double abs_tol) {
  QuadratureOptions opts;
  opts.abs_tol = abs_tol;
  return integrate(f, a, b, opts);
}

/// Second-order central difference (f(t+h) - f(t-h)) / 2h. Works for scalar
/// and Eigen-valued f.
template <class F>
auto central_diff(F&& f, double t, double h) {
  using R = std::decay_t<decltype(f(t))>;
  const R up = f(t + h);
  const R down = f(t - h);
  return R((up - down) / (2.0 * h));
}

}  // namespace lrsta::numerics
