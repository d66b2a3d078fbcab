#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "lrsta/errors.hpp"
#include "lrsta/lr_core.hpp"
#include "lrsta/synthesis.hpp"
#include "oracles.hpp"

using namespace lrsta;

TEST_CASE("invariant matches the entrywise oracle and is Hermitian") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const AuxParams a = fixture::random_aux(rng);
    const HermitianMatrix3 I = invariant_at(a);
    CHECK((I - oracle::invariant(a.alpha, a.beta, a.epsilon, a.lambda)).norm() < 1e-14);
    CHECK((I - I.adjoint()).norm() < 1e-15);
  }
}

TEST_CASE("invariant spectrum is {-1, 0, 1} over random draws") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(invariant_at(fixture::random_aux(rng)));
    const Eigen::Vector3d ev = es.eigenvalues();
    worst = std::max({worst, std::abs(ev(0) + 1.0), std::abs(ev(1)), std::abs(ev(2) - 1.0)});
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("closed-form eigenvectors are orthonormal eigenvectors") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 1000; ++k) {
    const AuxParams a = fixture::random_aux(rng);
    const HermitianMatrix3 I = invariant_at(a);
    const InvariantEigenbasis b = invariant_eigenvectors(a);
    Eigen::Matrix3cd V;
    V << b.phi_plus, b.phi_minus, b.phi_zero;
    CHECK((V.adjoint() * V - Eigen::Matrix3cd::Identity()).norm() < 1e-12);
    CHECK((I * b.phi_plus - b.phi_plus).norm() < 1e-12);
    CHECK((I * b.phi_minus + b.phi_minus).norm() < 1e-12);
    CHECK((I * b.phi_zero).norm() < 1e-12);
  }
}

TEST_CASE("non-finite angles are rejected") {
  AuxParams a;
  a.beta = NAN;
  CHECK_THROWS_AS(invariant_at(a), ArgumentError);
}

TEST_CASE("hamiltonian keeps the carrier cosines") {
  DriveSample d{{0.3, -0.2}, {0.1, 0.4}, 0.05, -0.07};
  const double wp = 1.5, ws = 0.8, t = 0.37;
  const HermitianMatrix3 H = hamiltonian(wp, ws, d, t);
  CHECK(std::abs(H(0, 0) - Complex(-wp - 0.05, 0)) < 1e-15);
  CHECK(std::abs(H(1, 1)) == 0.0);
  CHECK(std::abs(H(2, 2) - Complex(-ws + 0.07, 0)) < 1e-15);
  CHECK(std::abs(H(0, 1) - d.Omega_p * std::cos(wp * t)) < 1e-15);
  CHECK(std::abs(H(1, 2) - std::conj(d.Omega_s) * std::cos(ws * t)) < 1e-15);
  CHECK(std::abs(H(0, 2)) == 0.0);
  CHECK((H - H.adjoint()).norm() == 0.0);
}

TEST_CASE("system domain is enforced") {
  SystemParams sys(1.0, 1.0, [](double) { return DriveSample{}; }, 0.0, 2.0);
  CHECK_NOTHROW(sys.at(2.0));
  CHECK_THROWS_AS(sys.at(2.1), DomainError);
  CHECK_THROWS_AS(SystemParams(0.0, 1.0, [](double) { return DriveSample{}; }, 0.0, 1.0),
                  ArgumentError);
}

TEST_CASE("general synthesis makes I(t) invariant for random moving angles") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> phase(0.0, 6.28);
  for (int k = 0; k < 5; ++k) {
    const auto traj = fixture::wobbling_trajectory(phase(rng), phase(rng), phase(rng));
    const PulseSchedule s = synthesize_general(traj, 1.0, 1.0);
    for (double t : {-1.0, -0.4, 0.0, 0.55, 1.1}) {
      const double r1 = invariance_residual(s.system, traj, t, 1e-3);
      const double r2 = invariance_residual(s.system, traj, t, 5e-4);
      CHECK(r2 < 1e-6);
      CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
    }
  }
}

TEST_CASE("phi+ and phi- share a phase and phi0 leads it by the closed-form rate") {
  const auto traj = fixture::wobbling_trajectory(0.3, 1.1, 2.0);
  const PulseSchedule s = synthesize_general(traj, 1.0, 1.0);
  for (double t : {-0.8, 0.2, 0.9}) {
    const auto rates = lr_phase_rates_numeric(s.system, traj, t, 1e-5);
    CHECK(std::abs(rates[0] - rates[1]) < 1e-8);
    CHECK(rates[2] - rates[0] == doctest::Approx(lr_phase_rate(traj.at(t))).epsilon(1e-7));
  }
}

TEST_CASE("common phase of phi+ and phi- for the bare carrier system") {
  // H = diag(-omega, 0, -omega), alpha = pi/4, beta = 0: phi+ = (1, 0, 1)/sqrt 2
  // picks up -<phi+|H|phi+> = omega.
  const PulseSchedule s = strategy_c(0.0, 1.0, 1);
  const auto traj = trajectory_for(s);
  const auto rates = lr_phase_rates_numeric(s.system, traj, 4.0, 1e-5);
  CHECK(rates[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rates[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("phase rate pole is reported") {
  AuxParams a;
  a.alpha = 0.3;
  a.beta = 0.0;
  a.epsilon_dot = 1.0;
  CHECK_THROWS_AS(lr_phase_rate(a), SingularityError);
  a.epsilon_dot = 0.0;
  CHECK(lr_phase_rate(a) == 0.0);
}

TEST_CASE("analytic evolution reaches the predicted final populations") {
  const double T = 29.7323 * kPi;
  const auto traj = trajectory_a(0.5, 1.0, T);
  const StateVector end = analytic_evolution(traj, basis_state(1), T);
  const StateVector pred = final_state_prediction(kPi / 4.0, traj.at(T).epsilon);
  for (int k = 0; k < 3; ++k) CHECK(std::norm(end(k)) == doctest::Approx(std::norm(pred(k))).epsilon(1e-9));
}

TEST_CASE("predicted final state for epsilon = pi at alpha = pi/4 is |3>") {
  const StateVector f = final_state_prediction(kPi / 4.0, kPi);
  CHECK(std::abs(f(0)) < 1e-15);
  CHECK(std::abs(f(1)) == 0.0);
  CHECK(std::abs(std::abs(f(2)) - 1.0) < 1e-15);
}

TEST_CASE("analytic evolution starts at psi0 and stays normalized") {
  const auto traj = trajectory_a(0.5, 1.0, 29.7323 * kPi);
  const StateVector psi0 = basis_state(1);
  CHECK((analytic_evolution(traj, psi0, 0.0) - psi0).norm() < 1e-12);
  for (double t : {5.0, 30.0, 80.0}) CHECK(analytic_evolution(traj, psi0, t).norm() ==
                                           doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(analytic_evolution(traj, 2.0 * psi0, 1.0), ArgumentError);
}

TEST_CASE("global phase alignment") {
  StateVector v(Complex(0.1, 0.2), Complex(0.0, -0.9), Complex(0.3, 0.0));
  const StateVector a = align_global_phase(v);
  CHECK(std::abs(a(1).imag()) < 1e-15);
  CHECK(a(1).real() > 0.0);
  CHECK(std::abs(a.norm() - v.norm()) < 1e-15);
}
