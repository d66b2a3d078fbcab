#include <doctest.h>

#include <cmath>

#include "lrsta/errors.hpp"
#include "lrsta/numerics.hpp"

using namespace lrsta;
using namespace lrsta::numerics;

TEST_CASE("bisection finds sqrt 2 to the requested width") {
  auto f = [](double x) { return x * x - 2.0; };
  const RootResult r = find_root(f, Bracket::make(f, 0.0, 2.0), 1e-12);
  CHECK(r.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(r.residual) < 1e-11);
  CHECK(r.iterations > 30);
}

TEST_CASE("bracket rejects reversed ends and missing sign change") {
  auto f = [](double x) { return x - 1.0; };
  CHECK_THROWS_AS(Bracket::make(f, 2.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(Bracket::make(f, 2.0, 3.0), ArgumentError);
  CHECK_THROWS_AS(Bracket::make([](double) { return NAN; }, 0.0, 1.0), ArgumentError);
}

TEST_CASE("bisection gives up after max iterations") {
  auto f = [](double x) { return x - 0.3; };
  CHECK_THROWS_AS(find_root(f, Bracket::make(f, 0.0, 1.0), 1e-15, 5), ConvergenceError);
}

TEST_CASE("doubling brackets the first sign change") {
  auto f = [](double x) { return x - 10.0; };
  const Bracket b = bracket_by_doubling(f, 1.0, 100.0);
  CHECK(b.lo() == 8.0);
  CHECK(b.hi() == 16.0);
  CHECK_THROWS_AS(bracket_by_doubling(f, 1.0, 5.0), CalibrationError);
}

TEST_CASE("simpson is exact for cubics") {
  auto f = [](double x) { return 3.0 * x * x * x - x * x + 2.0; };
  const double exact = 0.75 * 16.0 - 8.0 / 3.0 + 4.0;
  for (std::size_t n : {2u, 3u, 10u}) CHECK(simpson(f, 0.0, 2.0, n) == doctest::Approx(exact));
}

TEST_CASE("adaptive simpson meets its tolerance") {
  const double v = integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846, 1e-12);
  CHECK(std::abs(v - 2.0) < 1e-11);
  // Oscillatory integrand with a known closed form.
  const double w = integrate([](double x) { return std::cos(40.0 * x) * std::cos(40.0 * x); },
                             0.0, 1.0, 1e-10);
  CHECK(std::abs(w - (0.5 + std::sin(80.0) / 160.0)) < 1e-9);
}

TEST_CASE("adaptive simpson reports non-convergence") {
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_panels = 128;
  CHECK_THROWS_AS(integrate([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0, opts),
                  ConvergenceError);
}

TEST_CASE("central difference error shrinks as h^2") {
  auto f = [](double x) { return std::exp(x); };
  const double e1 = std::abs(central_diff(f, 0.3, 1e-2) - std::exp(0.3));
  const double e2 = std::abs(central_diff(f, 0.3, 5e-3) - std::exp(0.3));
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));
}
