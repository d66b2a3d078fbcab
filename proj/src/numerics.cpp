#include "lrsta/numerics.hpp"

#include <cmath>
#include <string>

#include "lrsta/errors.hpp"

namespace lrsta::numerics {

namespace {

bool same_sign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

}  // namespace

Bracket Bracket::make(const RealFunction& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw ArgumentError("bracket requires lo < hi, got [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  }
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
    throw ArgumentError("bracket end points evaluate to non-finite values");
  }
  if (same_sign(f_lo, f_hi)) {
    throw ArgumentError("function does not change sign on [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  }
  return Bracket(lo, hi, f_lo, f_hi);
}

RootResult find_root(const RealFunction& f, const Bracket& bracket, double tol,
                     int max_iterations) {
  if (!(tol > 0.0)) throw ArgumentError("root tolerance must be positive");

  double a = bracket.lo();
  double b = bracket.hi();
  double fa = bracket.f_lo();
  if (fa == 0.0) return {a, 0.0, 0};
  if (bracket.f_hi() == 0.0) return {b, 0.0, 0};

  int it = 0;
  while (b - a > tol) {
    if (it == max_iterations) {
      throw ConvergenceError("bisection did not converge in " + std::to_string(max_iterations) +
                             " iterations");
    }
    ++it;
    const double m = a + 0.5 * (b - a);
    const double fm = f(m);
    if (!std::isfinite(fm)) throw ConvergenceError("non-finite function value during bisection");
    if (fm == 0.0) return {m, 0.0, it};
    if (same_sign(fm, fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  const double x = a + 0.5 * (b - a);
  return {x, f(x), it};
}

Bracket bracket_by_doubling(const RealFunction& f, double x0, double x_max) {
  if (!(x0 > 0.0) || !(x_max > x0)) throw ArgumentError("doubling search needs 0 < x0 < x_max");
  const double f0 = f(x0);
  if (f0 == 0.0) return Bracket::make(f, x0 / 2.0, x0);
  for (double x = 2.0 * x0; x <= x_max; x *= 2.0) {
    const double fx = f(x);
    if (!same_sign(fx, f0)) return Bracket::make(f, x / 2.0, x);
  }
  throw CalibrationError("no sign change found up to x = " + std::to_string(x_max));
}

double simpson(const RealFunction& f, double a, double b, std::size_t subintervals) {
  std::size_t n = subintervals < 2 ? 2 : subintervals + (subintervals % 2);
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(a + static_cast<double>(i) * h);
    if (i % 2 == 1) {
      odd += v;
    } else {
      even += v;
    }
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double integrate(const RealFunction& f, double a, double b, const QuadratureOptions& opts) {
  if (!(opts.abs_tol > 0.0)) throw ArgumentError("quadrature tolerance must be positive");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, opts);

  // Trapezoid sums T_n on n subintervals; Simpson S_2n = (4 T_2n - T_n) / 3.
  std::size_t n = opts.initial_panels == 0 ? 1 : opts.initial_panels;
  double h = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) sum += f(a + static_cast<double>(i) * h);
  double trap = h * sum;

  bool have_previous = false;
  double previous = 0.0;
  while (2 * n <= opts.max_panels) {
    double mid = 0.0;
    for (std::size_t i = 0; i < n; ++i) mid += f(a + (static_cast<double>(i) + 0.5) * h);
    sum += mid;
    n *= 2;
    h *= 0.5;
    const double refined = h * sum;
    const double estimate = (4.0 * refined - trap) / 3.0;
    trap = refined;
    if (!std::isfinite(estimate)) throw ConvergenceError("non-finite integrand in quadrature");
    if (have_previous && std::abs(estimate - previous) < opts.abs_tol) return estimate;
    previous = estimate;
    have_previous = true;
  }
  throw ConvergenceError("quadrature did not reach tolerance within " +
                         std::to_string(opts.max_panels) + " subintervals");
}

}  // namespace lrsta::numerics
