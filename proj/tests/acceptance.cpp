// Acceptance checks. Usage: lrsta_acceptance [N ...]; no arguments runs all.
// Prints one PASS/FAIL line per criterion (diagnostics indented above it) and
// exits nonzero when any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lrsta/lr_core.hpp"
#include "lrsta/propagator.hpp"
#include "lrsta/synthesis.hpp"
#include "lrsta/verification.hpp"
#include "oracles.hpp"

using namespace lrsta;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Criterion {
 public:
  explicit Criterion(int id) : id_(id) {}

  bool check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("    [%s] %s\n", ok ? " ok " : "FAIL", buf);
    all_ &= ok;
    return ok;
  }

  void note(const std::string& s) { std::printf("    [info] %s\n", s.c_str()); }

  bool finish(const char* title) {
    std::printf("criterion %d %s: %s\n", id_, all_ ? "PASS" : "FAIL", title);
    std::fflush(stdout);
    return all_;
  }

 private:
  int id_;
  bool all_ = true;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool table_one() {
  Criterion c(1);
  const std::map<double, double> expected = {{0.2, 179.04}, {0.3, 80.28}, {0.4, 45.72},
                                             {0.5, 29.73},  {0.6, 21.05}, {0.7, 15.83}};
  const auto t0 = Clock::now();
  for (auto [A, want] : expected) {
    const double got = solve_omega_T_for_A(A).value / kPi;
    c.check(std::abs(got - want) <= 0.01 + 1e-9, "A=%.1f  omega*T = %.4f pi (expected %.2f pi)", A,
            got, want);
  }
  const double elapsed = seconds_since(t0);
  c.check(elapsed < 10.0, "runtime %.3f s < 10 s", elapsed);
  return c.finish("calibrated omega*T for A = 0.2..0.7 within 0.01 pi");
}

bool table_two() {
  Criterion c(2);
  const std::map<double, double> expected = {{0.4, 17.33}, {0.5, 11.34}, {0.6, 8.09}, {0.7, 6.13}};
  for (auto [B, want] : expected) {
    const double got = solve_omega_T_for_B(B).value / kPi;
    c.check(std::abs(got - want) <= 0.01 + 1e-9, "B=%.1f  omega*T = %.4f pi (expected %.2f pi)", B,
            got, want);
  }
  return c.finish("calibrated omega*T for B = 0.4..0.7 within 0.01 pi");
}

bool strategy_a_fidelity() {
  Criterion c(3);
  const std::vector<std::pair<double, double>> runs = {
      {0.4, 45.7223}, {0.5, 29.7323}, {0.6, 21.0533}, {0.7, 15.8274}};
  double prev_p2 = -1.0;
  for (auto [A, omega_T_over_pi] : runs) {
    const auto t0 = Clock::now();
    const PulseSchedule s = strategy_a(A, 1.0, omega_T_over_pi * kPi);
    const TransferReport r = propagate(s, basis_state(1));
    const double elapsed = seconds_since(t0);
    c.check(r.final_populations[2] > 0.999, "A=%.1f  P3(T) = %.10f > 0.999", A,
            r.final_populations[2]);
    c.check(r.max_p2 > prev_p2, "A=%.1f  max P2 = %.4f increases with A", A, r.max_p2);
    c.check(elapsed < 60.0, "A=%.1f  run time %.3f s < 60 s", A, elapsed);
    prev_p2 = r.max_p2;
  }
  return c.finish("strategy A transfer P3(T) > 0.999, max P2 increasing in A");
}

bool strategy_b_fidelity() {
  Criterion c(4);
  const double T = 11.3369 * kPi;
  struct Case {
    double dt;
    bool neglect;
    double want;
  };
  for (const Case& k : {Case{0.01, false, 0.8516}, Case{0.005, false, 0.9618},
                        Case{0.01, true, 0.8675}, Case{0.005, true, 0.9680}}) {
    const PulseSchedule s = strategy_b(0.5, 1.0, T, k.dt, k.neglect);
    const double p3 = propagate(s, basis_state(1)).final_populations[2];
    c.check(std::abs(p3 - k.want) <= 0.02, "dt=%.3fT%s  P3(T) = %.4f (expected %.4f +- 0.02)",
            k.dt, k.neglect ? " neglect-imag" : "", p3, k.want);
  }
  return c.finish("strategy B fidelities for B = 0.5 within 0.02");
}

bool strategy_c_timing() {
  Criterion c(5);
  const CalibrationResult cal = calibrate_strategy_c(kPi / 6.0);
  c.check(std::abs(cal.value - 0.3396) <= 0.0005, "Omega0/omega = %.6f (0.3396 +- 0.0005)",
          cal.value);

  const double delta_eps = delta_epsilon_per_period(cal.value);
  const int n = static_cast<int>(std::ceil(kPi / delta_eps - 1e-9));
  const double unit = kPi / 2.0;  // pi / (2 omega), omega = 1
  const PulseSchedule s = strategy_c(cal.value, 1.0, 6);
  PropagationConfig cfg;
  cfg.record_stride = 1;
  const TransferReport r = propagate(s, basis_state(1), cfg);

  auto p3_at = [&](double t_units) {
    const double t = t_units * unit;
    auto it = std::lower_bound(r.times.begin(), r.times.end(), t - 1e-9);
    return r.populations[static_cast<std::size_t>(it - r.times.begin())][2];
  };
  double best_before_last = 0.0;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    if (r.times[i] <= s.t_start() + 5 * 2.0 * kPi) {
      best_before_last = std::max(best_before_last, r.populations[i][2]);
    }
  }
  c.check(n == 6 && best_before_last < 0.9999 && r.final_populations[2] >= 0.9999,
          "periods needed = %d; max P3 within 5 periods = %.4f; P3 after 6 = %.8f", n,
          best_before_last, r.final_populations[2]);

  const double p24 = p3_at(24.0);
  c.check(std::abs(p24 - 0.806) <= 0.01, "P3(24 pi/2w) = %.5f (0.806 +- 0.01)", p24);

  double min_tail = 1.0, first_hold = NAN;
  for (std::size_t i = r.times.size(); i-- > 0;) {
    if (r.populations[i][2] < 0.9999) {
      first_hold = (i + 1 < r.times.size()) ? r.times[i + 1] / unit : NAN;
      break;
    }
  }
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    if (r.times[i] >= 24.71 * unit - 1e-9) min_tail = std::min(min_tail, r.populations[i][2]);
  }
  c.check(min_tail >= 0.9999,
          "min P3 on [24.71, 25] pi/2w = %.6f (needs >= 0.9999); P3 stays >= 0.9999 from %.4f "
          "pi/2w on",
          min_tail, first_hold);

  double im_max = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double t = s.t_start() + 2.0 * kPi * k / 20000.0;
    im_max = std::max(im_max, std::abs(s.at(t).Omega_p.imag()));
  }
  c.check(im_max < 0.64, "max |Im Omega| = %.4f omega < 0.64 omega", im_max);
  return c.finish("strategy C calibration and timing");
}

bool property_suite() {
  Criterion c(6);

  const PulseSchedule a = strategy_a(0.5, 1.0, 29.7323 * kPi);
  const PulseSchedule b = strategy_b(0.5, 1.0, 11.3369 * kPi, 0.01);
  const PulseSchedule cc = strategy_c(calibrate_strategy_c(kPi / 6.0).value, 1.0, 6);

  const std::vector<double> ladder = {0.08, 0.04, 0.02, 0.01, 0.005};
  for (const PulseSchedule* s : {&a, &b, &cc}) {
    const auto traj = trajectory_for(*s);
    const auto times = verification_times(*s, 40, 0.1);
    const double slope = invariance_convergence_slope(s->system, traj, times, ladder);
    c.check(std::abs(slope - 2.0) <= 0.1, "strategy %s  invariance residual ~ h^%.3f",
            to_string(s->strategy).c_str(), slope);
  }

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double eig_err = 0.0, ortho_err = 0.0;
  for (int k = 0; k < 1000; ++k) {
    AuxParams p;
    p.alpha = angle(rng);
    p.beta = angle(rng);
    p.epsilon = angle(rng);
    p.lambda = angle(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(invariant_at(p), Eigen::EigenvaluesOnly);
    const Eigen::Vector3d ev = es.eigenvalues();
    eig_err = std::max({eig_err, std::abs(ev(0) + 1.0), std::abs(ev(1)), std::abs(ev(2) - 1.0)});
    const InvariantEigenbasis v = invariant_eigenvectors(p);
    Eigen::Matrix3cd V;
    V << v.phi_plus, v.phi_minus, v.phi_zero;
    ortho_err = std::max(ortho_err, (V.adjoint() * V - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
  }
  c.check(eig_err <= 1e-10, "eigenvalues {-1,0,1}: max error %.2e over 1000 draws", eig_err);
  c.check(ortho_err <= 1e-12, "eigenvector orthonormality: max error %.2e", ortho_err);

  for (const PulseSchedule* s : {&a, &cc}) {
    const auto traj = trajectory_for(*s);
    double worst = 0.0, relative = 0.0;
    for (double t : verification_times(*s, 50, 0.01)) {
      const auto rates = lr_phase_rates_numeric(s->system, traj, t, 1e-5);
      worst = std::max({worst, std::abs(rates[0]), std::abs(rates[1])});
      relative = std::max({relative, std::abs(rates[0] - rates[1]),
                           std::abs(rates[2] - rates[0] - traj.at(t).theta_dot)});
    }
    c.check(worst < 1e-6, "strategy %s  LR phase rates of phi+/phi- up to %.3e omega (< 1e-6)",
            to_string(s->strategy).c_str(), worst);
    c.note("strategy " + to_string(s->strategy) +
           "  phi+/phi- common phase and phi0 lead vs theta: max mismatch " +
           fmt("%.3e", relative) + " omega");
  }

  for (const PulseSchedule* s : {&a, &cc}) {
    const TransferReport r = propagate_with_analytic(*s, trajectory_for(*s), basis_state(1));
    c.check(r.analytic_deviation <= 1e-4, "strategy %s  analytic vs RK4 amplitudes: %.3e (<= 1e-4)",
            to_string(s->strategy).c_str(), r.analytic_deviation);
    c.note("strategy " + to_string(s->strategy) + "  analytic vs RK4 populations: " +
           fmt("%.3e", r.analytic_population_deviation));
    c.check(r.norm_drift <= 1e-9, "strategy %s  norm drift %.2e <= 1e-9",
            to_string(s->strategy).c_str(), r.norm_drift);
  }
  const TransferReport rb = propagate(b, basis_state(1));
  c.check(rb.norm_drift <= 1e-9, "strategy b  norm drift %.2e <= 1e-9", rb.norm_drift);

  const PulseSchedule shortest = strategy_a(0.7, 1.0, 15.8274 * kPi);
  const auto orders = observed_orders(convergence_study(shortest, basis_state(1), {100, 200, 400, 800}));
  for (double p : orders) c.check(std::abs(p - 4.0) <= 0.5, "RK4 empirical order %.3f", p);
  return c.finish("invariant-based property suite");
}

bool oracle_equivalence() {
  Criterion c(7);
  const double a_lib = solve_omega_T_for_A(0.45, 1e-9).value;
  const double a_ref = oracle::omega_T_a(0.45);
  c.check(std::abs(a_lib - a_ref) < 1e-4, "A=0.45  omega*T %.8f vs oracle %.8f", a_lib, a_ref);
  const double b_lib = solve_omega_T_for_B(0.45, 1e-9).value;
  const double b_ref = oracle::omega_T_b(0.45);
  c.check(std::abs(b_lib - b_ref) < 1e-4, "B=0.45  omega*T %.8f vs oracle %.8f", b_lib, b_ref);
  const double c_lib = calibrate_strategy_c(kPi / 8.0).value;
  const double c_ref = oracle::ratio_c(kPi / 8.0);
  c.check(std::abs(c_lib - c_ref) < 1e-4, "delta eps = pi/8  Omega0/omega %.10f vs oracle %.10f",
          c_lib, c_ref);
  return c.finish("calibrations match the brute-force oracle within 1e-4");
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<bool()>> criteria = {
      {1, table_one},           {2, table_two},           {3, strategy_a_fidelity},
      {4, strategy_b_fidelity}, {5, strategy_c_timing},   {6, property_suite},
      {7, oracle_equivalence}};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [id, _] : criteria) selected.push_back(id);
  }
  bool ok = true;
  for (int id : selected) {
    auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::printf("criterion %d FAIL: unknown criterion\n", id);
      ok = false;
      continue;
    }
    ok &= it->second();
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
