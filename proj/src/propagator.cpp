#include "lrsta/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrsta/errors.hpp"
#include "lrsta/lr_core.hpp"

namespace lrsta {

void PropagationConfig::validate() const {
  if (steps_per_carrier_period < 100) {
    throw ArgumentError("steps_per_carrier_period must be at least 100");
  }
  if (record_stride < 0) throw ArgumentError("record_stride must be non-negative");
}

namespace {

struct Window {
  double t0;
  double t1;
};

Window resolve_window(const PulseSchedule& schedule, const PropagationConfig& cfg) {
  const Window w{cfg.t_start.value_or(schedule.t_start()), cfg.t_end.value_or(schedule.t_end())};
  if (!(w.t1 >= w.t0)) throw ArgumentError("propagation window must satisfy start <= end");
  if (!schedule.system.contains(w.t0) || !schedule.system.contains(w.t1)) {
    throw DomainError("propagation window exceeds the schedule domain");
  }
  return w;
}

HermitianMatrix3 checked_hamiltonian(const PulseSchedule& schedule, double t) {
  HermitianMatrix3 h = hamiltonian_at(schedule.system, t);
  if (!h.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite Hamiltonian at t = " << t;
    throw PropagationError(msg.str(), t);
  }
  return h;
}

void record(TransferReport& r, double t, const StateVector& psi) {
  const std::array<double, 3> p{std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))};
  const double norm = std::sqrt(p[0] + p[1] + p[2]);
  r.times.push_back(t);
  r.populations.push_back(p);
  r.norms.push_back(norm);
  r.states.push_back(psi);
  r.norm_drift = std::max(r.norm_drift, std::abs(norm - 1.0));
  r.max_p2 = std::max(r.max_p2, p[1]);
}

struct AnalyticDeviation {
  double amplitude = 0.0;
  double population = 0.0;
};

AnalyticDeviation analytic_deviation(const TransferReport& r, const AuxiliaryTrajectory& traj,
                                     const StateVector& psi0) {
  AnalyticDeviation dev;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const StateVector exact = analytic_evolution(traj, psi0, r.times[i]);
    const StateVector& numeric = r.states[i];
    const StateVector a = align_global_phase(numeric);
    const StateVector b = align_global_phase(exact, numeric);
    dev.amplitude = std::max(dev.amplitude, (a - b).cwiseAbs().maxCoeff());
    for (int k = 0; k < 3; ++k) {
      dev.population = std::max(dev.population, std::abs(std::norm(numeric(k)) -
                                                         std::norm(exact(k))));
    }
  }
  return dev;
}

void check_analytic_domain(const PulseSchedule& schedule, const AuxiliaryTrajectory& traj,
                           const PropagationConfig& cfg) {
  const Window w = resolve_window(schedule, cfg);
  if (!traj.contains(w.t0) || !traj.contains(w.t1)) {
    throw ArgumentError("trajectory and schedule domains do not cover the comparison window");
  }
  if (std::abs(traj.t_start() - w.t0) > 1e-12 * std::max(1.0, std::abs(w.t0))) {
    throw ArgumentError("analytic comparison must start at the trajectory start");
  }
}

}  // namespace

TransferReport propagate(const PulseSchedule& schedule, const StateVector& psi0,
                         const PropagationConfig& cfg) {
  cfg.validate();
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ArgumentError("initial state is not normalized");
  const Window w = resolve_window(schedule, cfg);

  const double carrier = std::max(schedule.system.omega_p, schedule.system.omega_s);
  const double periods = (w.t1 - w.t0) * carrier / (2.0 * kPi);
  const long steps = std::max(1L, static_cast<long>(std::ceil(
                                      periods * cfg.steps_per_carrier_period - 1e-9)));
  const int stride =
      cfg.record_stride > 0 ? cfg.record_stride : std::max(1, cfg.steps_per_carrier_period / 10);
  const double h = (w.t1 - w.t0) / static_cast<double>(steps);

  TransferReport report;
  report.steps = static_cast<int>(steps);
  report.step_size = h;

  StateVector psi = psi0;
  record(report, w.t0, psi);
  if (w.t1 == w.t0) {
    report.final_state = psi;
    report.final_populations = report.populations.back();
    return report;
  }

  const Complex minus_i(0.0, -1.0);
  for (long n = 0; n < steps; ++n) {
    const double t = w.t0 + static_cast<double>(n) * h;
    const HermitianMatrix3 h0 = checked_hamiltonian(schedule, t);
    const HermitianMatrix3 hm = checked_hamiltonian(schedule, t + 0.5 * h);
    const HermitianMatrix3 h1 = checked_hamiltonian(schedule, t + h);
    const StateVector k1 = minus_i * (h0 * psi);
    const StateVector k2 = minus_i * (hm * (psi + 0.5 * h * k1));
    const StateVector k3 = minus_i * (hm * (psi + 0.5 * h * k2));
    const StateVector k4 = minus_i * (h1 * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((n + 1) % stride == 0 || n + 1 == steps) {
      record(report, n + 1 == steps ? w.t1 : w.t0 + static_cast<double>(n + 1) * h, psi);
    }
  }
  report.final_state = psi;
  report.final_populations = report.populations.back();
  return report;
}

TransferReport propagate_with_analytic(const PulseSchedule& schedule,
                                       const AuxiliaryTrajectory& traj, const StateVector& psi0,
                                       const PropagationConfig& cfg) {
  check_analytic_domain(schedule, traj, cfg);
  TransferReport report = propagate(schedule, psi0, cfg);
  const AnalyticDeviation dev = analytic_deviation(report, traj, psi0);
  report.analytic_deviation = dev.amplitude;
  report.analytic_population_deviation = dev.population;
  return report;
}

double compare_with_analytic(const PulseSchedule& schedule, const AuxiliaryTrajectory& traj,
                             const StateVector& psi0, const PropagationConfig& cfg) {
  return propagate_with_analytic(schedule, traj, psi0, cfg).analytic_deviation;
}

double compare_populations_with_analytic(const PulseSchedule& schedule,
                                         const AuxiliaryTrajectory& traj,
                                         const StateVector& psi0,
                                         const PropagationConfig& cfg) {
  return propagate_with_analytic(schedule, traj, psi0, cfg).analytic_population_deviation;
}

std::vector<ConvergencePoint> convergence_study(const PulseSchedule& schedule,
                                                const StateVector& psi0,
                                                const std::vector<int>& steps_list,
                                                const PropagationConfig& base) {
  if (!std::is_sorted(steps_list.begin(), steps_list.end())) {
    throw ArgumentError("convergence_study expects ascending step counts");
  }
  std::vector<ConvergencePoint> out;
  out.reserve(steps_list.size());
  for (int steps : steps_list) {
    PropagationConfig cfg = base;
    cfg.steps_per_carrier_period = steps;
    cfg.record_stride = std::numeric_limits<int>::max();
    const TransferReport r = propagate(schedule, psi0, cfg);
    out.push_back({steps, r.final_populations[2], r.final_state});
  }
  return out;
}

std::vector<double> observed_orders(const std::vector<ConvergencePoint>& study) {
  std::vector<double> orders;
  for (std::size_t i = 2; i < study.size(); ++i) {
    const double coarse = (study[i - 1].final_state - study[i - 2].final_state).norm();
    const double fine = (study[i].final_state - study[i - 1].final_state).norm();
    orders.push_back(std::log2(coarse / fine));
  }
  return orders;
}

}  // namespace lrsta
