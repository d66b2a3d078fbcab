#include "lrsta/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "lrsta/errors.hpp"
#include "lrsta/numerics.hpp"

namespace lrsta {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kQuarterPi = kPi / 4.0;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ArgumentError(std::string(name) + " must be positive and finite");
  }
}

/// sin(x)/x, with its Taylor series for |x| < 1e-4.
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// Envelope for alpha = pi/4, two-photon resonance and theta_dot = -omega:
///   Omega cos(omega t) = -(2i beta_dot + omega sin 2 beta) / (2 sqrt 2).
/// Callers pass beta_dot and sin(2 beta) already divided by cos(omega t).
Complex resonant_envelope(double beta_dot_over_cos, double sin2beta_over_cos, double omega) {
  return -Complex(omega * sin2beta_over_cos, 2.0 * beta_dot_over_cos) / (2.0 * kSqrt2);
}

double resonant_detuning(double beta, double omega) {
  const double sb = std::sin(beta);
  return -2.0 * omega * sb * sb;
}

// Epsilon as omega times the running integral of sin^2(beta), with nodes
// every quarter carrier period.
template <class BetaFn>
std::shared_ptr<const CumulativeIntegral> epsilon_integral(BetaFn beta, double omega, double t0,
                                                           double t1) {
  auto integrand = [beta, omega](double t) {
    const double sb = std::sin(beta(t));
    return omega * sb * sb;
  };
  return std::make_shared<const CumulativeIntegral>(integrand, t0, t1, kPi / (2.0 * omega));
}

// --- strategy A -----------------------------------------------------------

struct ShapeA {
  double A, omega, T;

  double envelope_window(double t) const { return 1.0 - std::cos(2.0 * kPi * t / T); }
  double beta(double t) const {
    const double c = std::cos(omega * t);
    return 0.5 * A * envelope_window(t) * c * c;
  }
  double beta_dot(double t) const {
    const double c = std::cos(omega * t);
    return kPi * A / T * std::sin(2.0 * kPi * t / T) * c * c -
           0.5 * A * omega * envelope_window(t) * std::sin(2.0 * omega * t);
  }
  // beta_dot / cos(omega t) and sin(2 beta) / cos(omega t) with the common
  // cos(omega t) factor cancelled analytically.
  Complex envelope(double t) const {
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const double w = envelope_window(t);
    const double bdot_over_c = kPi * A / T * std::sin(2.0 * kPi * t / T) * c - A * omega * w * s;
    const double two_beta = A * w * c * c;
    const double sin2b_over_c = sinc(two_beta) * A * w * c;
    return resonant_envelope(bdot_over_c, sin2b_over_c, omega);
  }
};

void validate_a(double A, double omega, double T) {
  if (!(A >= 0.0) || !std::isfinite(A)) throw ArgumentError("A must be non-negative and finite");
  require_positive(omega, "omega");
  require_positive(T, "T");
}

// --- strategy B -----------------------------------------------------------

struct ShapeB {
  double B, omega, T;

  double beta(double t) const { return 0.5 * B * (1.0 - std::cos(2.0 * kPi * t / T)); }
  double beta_dot(double t) const { return kPi * B / T * std::sin(2.0 * kPi * t / T); }
  Complex raw_envelope(double t) const {
    const double c = std::cos(omega * t);
    return resonant_envelope(beta_dot(t) / c, std::sin(2.0 * beta(t)) / c, omega);
  }
};

void validate_b(double B, double omega, double T) {
  if (!(B >= 0.0) || !std::isfinite(B)) throw ArgumentError("B must be non-negative and finite");
  require_positive(omega, "omega");
  require_positive(T, "T");
}

// --- strategy C -----------------------------------------------------------

struct ShapeC {
  double Omega0, omega;

  double arcsin_argument(double t) const {
    const double c = std::cos(omega * t);
    const double c2 = c * c;
    return 2.0 * kSqrt2 * Omega0 / omega * c2 * c2;
  }
  double beta(double t) const { return -0.5 * std::asin(arcsin_argument(t)); }
  double beta_dot(double t) const {
    const double c = std::cos(omega * t);
    const double x = arcsin_argument(t);
    return 4.0 * kSqrt2 * Omega0 * c * c * c * std::sin(omega * t) / std::sqrt(1.0 - x * x);
  }
  Complex envelope(double t) const {
    const double c = std::cos(omega * t);
    const double re = Omega0 * c * c * c;
    const double q = re * c / omega;
    const double im = -4.0 * Omega0 * c * c * std::sin(omega * t) / std::sqrt(1.0 - 8.0 * q * q);
    return {re, im};
  }
};

double strategy_c_start(double omega) { return kPi / (2.0 * omega); }

void validate_c(double Omega0, double omega, int n_periods) {
  require_positive(omega, "omega");
  if (!(Omega0 >= 0.0) || !(Omega0 < kStrategyCMaxRatio * omega)) {
    throw ArgumentError("Omega0 must lie in [0, omega / (2 sqrt 2)) to keep beta real");
  }
  if (n_periods < 1) throw ArgumentError("n_periods must be at least 1");
}

// --- shared ---------------------------------------------------------------

PulseSchedule resonant_schedule(double omega, SystemParams::Drive drive, double t0, double t1,
                                Strategy tag, std::map<std::string, double> params) {
  params["omega"] = omega;
  return PulseSchedule{SystemParams(omega, omega, std::move(drive), t0, t1), tag,
                       std::move(params), false, {}};
}

CalibrationResult calibrate_omega_T(double parameter, double tol,
                                    const numerics::RealFunction& epsilon_of_omega_T) {
  if (!(tol > 0.0)) throw ArgumentError("calibration tolerance must be positive");
  auto g = [&](double omega_T) { return epsilon_of_omega_T(omega_T) - kPi; };
  const numerics::Bracket bracket = numerics::bracket_by_doubling(g, kPi, kPi * 65536.0);
  const numerics::RootResult root = numerics::find_root(g, bracket, tol * kPi);
  return {parameter, root.x, root.residual, root.iterations};
}

numerics::QuadratureOptions carrier_resolved_quadrature(double span_in_periods) {
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-9;
  opts.initial_panels = 64 * static_cast<std::size_t>(std::max(1.0, std::ceil(span_in_periods)));
  return opts;
}

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::general: return "general";
    case Strategy::a: return "a";
    case Strategy::b: return "b";
    case Strategy::c: return "c";
  }
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "general") return Strategy::general;
  if (name == "a" || name == "A") return Strategy::a;
  if (name == "b" || name == "B") return Strategy::b;
  if (name == "c" || name == "C") return Strategy::c;
  throw ArgumentError("unknown strategy '" + std::string(name) + "'");
}

double PulseSchedule::omega() const {
  if (system.omega_p != system.omega_s) {
    throw ArgumentError("schedule has distinct pump and Stokes carriers");
  }
  return system.omega_p;
}

double PulseSchedule::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ArgumentError("schedule has no parameter '" + key + "'");
  return it->second;
}

std::vector<double> carrier_zeros(double omega, double t0, double t1) {
  require_positive(omega, "omega");
  std::vector<double> zeros;
  const double first = std::ceil(omega * t0 / kPi - 0.5);
  for (double k = first;; k += 1.0) {
    const double t = (k + 0.5) * kPi / omega;
    if (t > t1) break;
    if (t >= t0) zeros.push_back(t);
  }
  return zeros;
}

// --- general inverse engineering ------------------------------------------

namespace {

struct GeneralNumerators {
  Complex pump;      // Omega_p cos(omega_p t)
  Complex stokes;    // Omega_s cos(omega_s t)
  double pump_diag;  // omega_p + Delta_p
  double stokes_diag;
};

GeneralNumerators general_numerators(const AuxParams& a) {
  const double ca = std::cos(a.alpha), sa = std::sin(a.alpha);
  const double cb = std::cos(a.beta), sb = std::sin(a.beta);
  const double se = std::sin(a.epsilon);
  const double s2a = std::sin(2.0 * a.alpha);
  const Complex e_minus = std::polar(1.0, -a.epsilon);
  const Complex shared(a.theta_dot * std::sin(2.0 * a.beta), -2.0 * a.beta_dot);

  GeneralNumerators n;
  n.pump = kI * a.lambda_dot * e_minus * sa * sb + 0.5 * ca * shared;
  n.stokes = -kI * a.lambda_dot * e_minus * ca * sb + 0.5 * sa * shared;
  n.pump_diag = -a.epsilon_dot * sa * sa + a.theta_dot * (ca * ca * sb * sb - cb * cb) -
                a.lambda_dot * se * s2a * cb;
  n.stokes_diag = -a.epsilon_dot * ca * ca + a.theta_dot * (sa * sa * sb * sb - cb * cb) +
                  a.lambda_dot * se * s2a * cb;
  return n;
}

double numerator_scale(const AuxParams& a, double omega) {
  return omega + std::abs(a.beta_dot) + std::abs(a.theta_dot) + std::abs(a.lambda_dot);
}

// Envelope = numerator / cos(omega t). Within 1e-7 of a carrier zero the
// quotient is replaced by the ratio of secant slopes across the zero.
template <class Numerator>
Complex regular_quotient(const AuxiliaryTrajectory& traj, Numerator numerator, double omega,
                         double t) {
  const double c = std::cos(omega * t);
  if (std::abs(c) >= 1e-7) return numerator(traj.at(t)) / c;
  const double d = 1e-4 / omega;
  const double a = std::max(t - d, traj.t_start());
  const double b = std::min(t + d, traj.t_end());
  const Complex dn = numerator(traj.at(b)) - numerator(traj.at(a));
  return dn / (std::cos(omega * b) - std::cos(omega * a));
}

}  // namespace

PulseSchedule synthesize_general(const AuxiliaryTrajectory& traj, double omega_p,
                                 double omega_s) {
  require_positive(omega_p, "omega_p");
  require_positive(omega_s, "omega_s");

  const int samples = 257;
  for (int i = 0; i < samples; ++i) {
    const double t = traj.t_start() + (traj.t_end() - traj.t_start()) * i / (samples - 1);
    const AuxParams a = traj.at(t);
    if (!a.finite()) throw ArgumentError("trajectory has non-finite parameters");
    const double scale = 1.0 + std::abs(a.alpha_dot) + std::abs(a.lambda_dot);
    if (std::abs(a.constraint_residual()) > 1e-10 * scale) {
      std::ostringstream msg;
      msg << "trajectory violates alpha_dot = lambda_dot cos(beta) cos(epsilon) at t = " << t;
      throw ArgumentError(msg.str());
    }
  }

  auto pump = [](const AuxParams& a) { return general_numerators(a).pump; };
  auto stokes = [](const AuxParams& a) { return general_numerators(a).stokes; };

  auto check_zeros = [&](double omega, auto numerator, const char* which) {
    for (double tz : carrier_zeros(omega, traj.t_start(), traj.t_end())) {
      const AuxParams a = traj.at(tz);
      if (std::abs(numerator(a)) > 1e-9 * numerator_scale(a, omega)) {
        std::ostringstream msg;
        msg << which << " envelope diverges at carrier zero t = " << tz;
        throw SynthesisError(msg.str(), tz);
      }
    }
  };
  check_zeros(omega_p, pump, "pump");
  check_zeros(omega_s, stokes, "Stokes");

  auto drive = [traj, omega_p, omega_s, pump, stokes](double t) {
    const GeneralNumerators n = general_numerators(traj.at(t));
    DriveSample d;
    d.Omega_p = regular_quotient(traj, pump, omega_p, t);
    d.Omega_s = regular_quotient(traj, stokes, omega_s, t);
    d.Delta_p = n.pump_diag - omega_p;
    d.Delta_s = n.stokes_diag - omega_s;
    return d;
  };
  return PulseSchedule{SystemParams(omega_p, omega_s, drive, traj.t_start(), traj.t_end()),
                       Strategy::general,
                       {{"omega_p", omega_p}, {"omega_s", omega_s}},
                       false,
                       {}};
}

// --- strategy A -------------------------------------------------------------

AuxiliaryTrajectory trajectory_a(double A, double omega, double T) {
  validate_a(A, omega, T);
  const ShapeA shape{A, omega, T};
  auto eps = epsilon_integral([shape](double t) { return shape.beta(t); }, omega, 0.0, T);
  auto eval = [shape, eps](double t) {
    AuxParams a;
    a.alpha = kQuarterPi;
    a.beta = shape.beta(t);
    a.beta_dot = shape.beta_dot(t);
    const double sb = std::sin(a.beta);
    a.epsilon = (*eps)(t);
    a.epsilon_dot = shape.omega * sb * sb;
    a.theta = -shape.omega * t;
    a.theta_dot = -shape.omega;
    return a;
  };
  return AuxiliaryTrajectory(eval, 0.0, T);
}

PulseSchedule strategy_a(double A, double omega, double T) {
  validate_a(A, omega, T);
  const ShapeA shape{A, omega, T};
  auto drive = [shape](double t) {
    DriveSample d;
    d.Omega_p = shape.envelope(t);
    d.Omega_s = d.Omega_p;
    d.Delta_p = resonant_detuning(shape.beta(t), shape.omega);
    d.Delta_s = d.Delta_p;
    return d;
  };
  return resonant_schedule(omega, drive, 0.0, T, Strategy::a, {{"A", A}, {"T", T}});
}

CalibrationResult solve_omega_T_for_A(double A, double tol) {
  if (!(A > 0.0) || !(A <= 0.8)) throw ArgumentError("A must lie in (0, 0.8]");
  // omega = 1, so T equals omega*T.
  auto epsilon_T = [A](double omega_T) {
    const ShapeA shape{A, 1.0, omega_T};
    auto integrand = [&shape](double t) {
      const double sb = std::sin(shape.beta(t));
      return sb * sb;
    };
    return numerics::integrate(integrand, 0.0, omega_T,
                               carrier_resolved_quadrature(omega_T / (2.0 * kPi)));
  };
  return calibrate_omega_T(A, tol, epsilon_T);
}

// --- strategy B -------------------------------------------------------------

AuxiliaryTrajectory trajectory_b(double B, double omega, double T) {
  validate_b(B, omega, T);
  const ShapeB shape{B, omega, T};
  auto eps = epsilon_integral([shape](double t) { return shape.beta(t); }, omega, 0.0, T);
  auto eval = [shape, eps](double t) {
    AuxParams a;
    a.alpha = kQuarterPi;
    a.beta = shape.beta(t);
    a.beta_dot = shape.beta_dot(t);
    const double sb = std::sin(a.beta);
    a.epsilon = (*eps)(t);
    a.epsilon_dot = shape.omega * sb * sb;
    a.theta = -shape.omega * t;
    a.theta_dot = -shape.omega;
    return a;
  };
  return AuxiliaryTrajectory(eval, 0.0, T);
}

std::vector<std::pair<double, double>> strategy_b_intervals(double omega, double T,
                                                            double delta_t) {
  require_positive(delta_t, "delta_t");
  if (2.0 * delta_t >= kPi / omega) {
    throw ArgumentError("modification intervals around adjacent carrier zeros overlap");
  }
  std::vector<std::pair<double, double>> out;
  for (double tn : carrier_zeros(omega, 0.0, T)) {
    out.emplace_back(std::max(0.0, tn - delta_t), std::min(T, tn + delta_t));
  }
  return out;
}

PulseSchedule strategy_b(double B, double omega, double T, double delta_t_over_T,
                         bool neglect_imag) {
  validate_b(B, omega, T);
  const double dt = delta_t_over_T * T;
  const ShapeB shape{B, omega, T};
  const auto zeros = carrier_zeros(omega, 0.0, T);
  strategy_b_intervals(omega, T, dt);  // validates dt

  struct Patch {
    double center;
    Complex left;
    Complex right;
  };
  std::vector<Patch> patches;
  patches.reserve(zeros.size());
  for (double tn : zeros) {
    patches.push_back({tn, shape.raw_envelope(tn - dt), shape.raw_envelope(tn + dt)});
  }

  auto drive = [shape, dt, patches, neglect_imag](double t) {
    Complex env;
    bool patched = false;
    // Zero n (1-based) sits at (n - 1/2) pi / omega.
    const double n = std::round(shape.omega * t / kPi + 0.5);
    const auto index = static_cast<long>(n) - 1;
    if (index >= 0 && index < static_cast<long>(patches.size())) {
      const Patch& p = patches[static_cast<std::size_t>(index)];
      if (std::abs(t - p.center) < dt) {
        env = p.left + (p.right - p.left) / (2.0 * dt) * (t - p.center + dt);
        patched = true;
      }
    }
    if (!patched) env = shape.raw_envelope(t);
    if (neglect_imag) env = Complex(env.real(), 0.0);
    DriveSample d;
    d.Omega_p = env;
    d.Omega_s = env;
    d.Delta_p = resonant_detuning(shape.beta(t), shape.omega);
    d.Delta_s = d.Delta_p;
    return d;
  };
  return resonant_schedule(omega, drive, 0.0, T, Strategy::b,
                           {{"B", B},
                            {"T", T},
                            {"delta_t_over_T", delta_t_over_T},
                            {"neglect_imag", neglect_imag ? 1.0 : 0.0},
                            {"n_singular", static_cast<double>(zeros.size())}});
}

CalibrationResult solve_omega_T_for_B(double B, double tol) {
  if (!(B > 0.0) || !(B <= 0.8)) throw ArgumentError("B must lie in (0, 0.8]");
  auto epsilon_T = [B](double omega_T) {
    const ShapeB shape{B, 1.0, omega_T};
    auto integrand = [&shape](double t) {
      const double sb = std::sin(shape.beta(t));
      return sb * sb;
    };
    return numerics::integrate(integrand, 0.0, omega_T,
                               carrier_resolved_quadrature(omega_T / (2.0 * kPi)));
  };
  return calibrate_omega_T(B, tol, epsilon_T);
}

// --- strategy C -------------------------------------------------------------

AuxiliaryTrajectory trajectory_c(double Omega0, double omega, int n_periods) {
  validate_c(Omega0, omega, n_periods);
  const ShapeC shape{Omega0, omega};
  const double t0 = strategy_c_start(omega);
  const double t1 = t0 + n_periods * 2.0 * kPi / omega;
  auto eps = epsilon_integral([shape](double t) { return shape.beta(t); }, omega, t0, t1);
  auto eval = [shape, eps, t0](double t) {
    AuxParams a;
    a.alpha = kQuarterPi;
    a.beta = shape.beta(t);
    a.beta_dot = shape.beta_dot(t);
    const double sb = std::sin(a.beta);
    a.epsilon = (*eps)(t);
    a.epsilon_dot = shape.omega * sb * sb;
    a.theta = -shape.omega * (t - t0);
    a.theta_dot = -shape.omega;
    return a;
  };
  return AuxiliaryTrajectory(eval, t0, t1);
}

PulseSchedule strategy_c(double Omega0, double omega, int n_periods) {
  validate_c(Omega0, omega, n_periods);
  const ShapeC shape{Omega0, omega};
  const double t0 = strategy_c_start(omega);
  const double t1 = t0 + n_periods * 2.0 * kPi / omega;
  auto drive = [shape](double t) {
    DriveSample d;
    d.Omega_p = shape.envelope(t);
    d.Omega_s = d.Omega_p;
    d.Delta_p = resonant_detuning(shape.beta(t), shape.omega);
    d.Delta_s = d.Delta_p;
    return d;
  };
  return resonant_schedule(omega, drive, t0, t1, Strategy::c,
                           {{"Omega0", Omega0}, {"n_periods", static_cast<double>(n_periods)}});
}

namespace {

double delta_epsilon_unchecked(double ratio) {
  auto integrand = [ratio](double t) {
    const double c = std::cos(t);
    const double x = std::min(1.0, 2.0 * kSqrt2 * ratio * c * c * c * c);
    const double sb = std::sin(0.5 * std::asin(x));
    return sb * sb;
  };
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.initial_panels = 64;
  return numerics::integrate(integrand, kPi / 2.0, 5.0 * kPi / 2.0, opts);
}

}  // namespace

double delta_epsilon_per_period(double ratio) {
  if (!(ratio >= 0.0) || !(ratio < kStrategyCMaxRatio)) {
    throw ArgumentError("Omega0/omega must lie in [0, 1/(2 sqrt 2))");
  }
  return delta_epsilon_unchecked(ratio);
}

double max_delta_epsilon_per_period() { return delta_epsilon_unchecked(kStrategyCMaxRatio); }

CalibrationResult calibrate_strategy_c(double target, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("calibration tolerance must be positive");
  if (target == 0.0) return {0.0, 0.0, 0.0, 0};
  const double reachable = max_delta_epsilon_per_period();
  if (!(target > 0.0) || !(target < reachable)) {
    std::ostringstream msg;
    msg << "delta-epsilon target " << target << " outside the reachable range (0, " << reachable
        << ")";
    throw CalibrationError(msg.str());
  }
  auto g = [target](double ratio) { return delta_epsilon_unchecked(ratio) - target; };
  const auto bracket = numerics::Bracket::make(g, 0.0, kStrategyCMaxRatio);
  const auto root = numerics::find_root(g, bracket, tol);
  return {target, root.x, root.residual, root.iterations};
}

AuxiliaryTrajectory trajectory_for(const PulseSchedule& schedule) {
  switch (schedule.strategy) {
    case Strategy::a:
      return trajectory_a(schedule.param("A"), schedule.omega(), schedule.param("T"));
    case Strategy::b:
      return trajectory_b(schedule.param("B"), schedule.omega(), schedule.param("T"));
    case Strategy::c:
      return trajectory_c(schedule.param("Omega0"), schedule.omega(),
                          static_cast<int>(std::lround(schedule.param("n_periods"))));
    default:
      throw ArgumentError("no closed-form trajectory for a " + to_string(schedule.strategy) +
                          " schedule");
  }
}

}  // namespace lrsta
