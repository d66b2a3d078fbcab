#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lrsta/errors.hpp"
#include "lrsta/io.hpp"
#include "lrsta/lr_core.hpp"
#include "lrsta/propagator.hpp"
#include "lrsta/synthesis.hpp"
#include "lrsta/verification.hpp"

namespace py = pybind11;
using namespace lrsta;

namespace {

py::dict report_dict(const TransferReport& r) {
  py::dict d;
  Eigen::MatrixX3d pops(static_cast<Eigen::Index>(r.populations.size()), 3);
  for (std::size_t i = 0; i < r.populations.size(); ++i) {
    for (int k = 0; k < 3; ++k) pops(static_cast<Eigen::Index>(i), k) = r.populations[i][k];
  }
  d["times"] = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
      r.times.data(), static_cast<Eigen::Index>(r.times.size())));
  d["populations"] = pops;
  d["norms"] = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
      r.norms.data(), static_cast<Eigen::Index>(r.norms.size())));
  d["final_populations"] = r.final_populations;
  d["final_state"] = r.final_state;
  d["norm_drift"] = r.norm_drift;
  d["max_p2"] = r.max_p2;
  d["analytic_deviation"] = r.analytic_deviation;
  d["analytic_population_deviation"] = r.analytic_population_deviation;
  d["steps"] = r.steps;
  return d;
}

py::dict calibration_dict(const CalibrationResult& r) {
  py::dict d;
  d["parameter"] = r.parameter;
  d["value"] = r.value;
  d["residual"] = r.residual;
  d["iterations"] = r.iterations;
  return d;
}

PropagationConfig make_config(int steps_per_period, int record_stride, py::object t_start,
                              py::object t_end) {
  PropagationConfig cfg;
  cfg.steps_per_carrier_period = steps_per_period;
  cfg.record_stride = record_stride;
  if (!t_start.is_none()) cfg.t_start = t_start.cast<double>();
  if (!t_end.is_none()) cfg.t_end = t_end.cast<double>();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Invariant-based pulse synthesis for three-level systems (no RWA).";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<SynthesisError>(m, "SynthesisError", base.ptr());
  py::register_exception<PropagationError>(m, "PropagationError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  py::class_<AuxParams>(m, "AuxParams")
      .def(py::init([](double alpha, double beta, double epsilon, double lambda) {
             AuxParams a;
             a.alpha = alpha;
             a.beta = beta;
             a.epsilon = epsilon;
             a.lambda = lambda;
             return a;
           }),
           py::arg("alpha") = 0.0, py::arg("beta") = 0.0, py::arg("epsilon") = 0.0,
           py::arg("lambda_") = 0.0)
      .def_readwrite("alpha", &AuxParams::alpha)
      .def_readwrite("beta", &AuxParams::beta)
      .def_readwrite("epsilon", &AuxParams::epsilon)
      .def_readwrite("lambda_", &AuxParams::lambda)
      .def_readwrite("theta", &AuxParams::theta)
      .def_readwrite("alpha_dot", &AuxParams::alpha_dot)
      .def_readwrite("beta_dot", &AuxParams::beta_dot)
      .def_readwrite("epsilon_dot", &AuxParams::epsilon_dot)
      .def_readwrite("lambda_dot", &AuxParams::lambda_dot)
      .def_readwrite("theta_dot", &AuxParams::theta_dot);

  m.def("invariant", &invariant_at, py::arg("aux"));
  m.def(
      "invariant_eigenvectors",
      [](const AuxParams& a) {
        const InvariantEigenbasis b = invariant_eigenvectors(a);
        return py::make_tuple(b.phi_plus, b.phi_minus, b.phi_zero);
      },
      py::arg("aux"), "(phi_plus, phi_minus, phi_zero)");

  py::class_<PulseSchedule>(m, "Schedule")
      .def_property_readonly("strategy", [](const PulseSchedule& s) { return to_string(s.strategy); })
      .def_property_readonly("params", [](const PulseSchedule& s) { return s.params; })
      .def_property_readonly("t_start", &PulseSchedule::t_start)
      .def_property_readonly("t_end", &PulseSchedule::t_end)
      .def_property_readonly("sampled", [](const PulseSchedule& s) { return s.sampled; })
      .def(
          "at",
          [](const PulseSchedule& s, double t) {
            const DriveSample d = s.at(t);
            py::dict out;
            out["Omega_p"] = d.Omega_p;
            out["Omega_s"] = d.Omega_s;
            out["Delta_p"] = d.Delta_p;
            out["Delta_s"] = d.Delta_s;
            return out;
          },
          py::arg("t"))
      .def(
          "hamiltonian", [](const PulseSchedule& s, double t) { return hamiltonian_at(s.system, t); },
          py::arg("t"))
      .def(
          "to_csv",
          [](const PulseSchedule& s, int samples_per_period) {
            return io::schedule_csv(s, io::schedule_sample_times(s, samples_per_period));
          },
          py::arg("samples_per_period") = 200)
      .def("__repr__", [](const PulseSchedule& s) {
        return "<lrsta.Schedule strategy=" + to_string(s.strategy) + " t=[" +
               io::format_double(s.t_start()) + ", " + io::format_double(s.t_end()) + "]>";
      });

  m.def("strategy_a", &strategy_a, py::arg("A"), py::arg("omega"), py::arg("T"));
  m.def("strategy_b", &strategy_b, py::arg("B"), py::arg("omega"), py::arg("T"),
        py::arg("delta_t_over_T"), py::arg("neglect_imag") = false);
  m.def("strategy_c", &strategy_c, py::arg("Omega0"), py::arg("omega"), py::arg("n_periods"));
  m.def(
      "load_schedule", [](const std::string& path) { return io::load_schedule_csv(path); },
      py::arg("path"));

  m.def(
      "solve_omega_T_for_A",
      [](double A, double tol) { return calibration_dict(solve_omega_T_for_A(A, tol)); },
      py::arg("A"), py::arg("tol") = 1e-6);
  m.def(
      "solve_omega_T_for_B",
      [](double B, double tol) { return calibration_dict(solve_omega_T_for_B(B, tol)); },
      py::arg("B"), py::arg("tol") = 1e-6);
  m.def(
      "calibrate_strategy_c",
      [](double target, double tol) { return calibration_dict(calibrate_strategy_c(target, tol)); },
      py::arg("target_delta_epsilon"), py::arg("tol") = 1e-10);
  m.def("delta_epsilon_per_period", &delta_epsilon_per_period, py::arg("ratio"));

  m.def(
      "propagate",
      [](const PulseSchedule& s, const StateVector& psi0, int steps_per_period, int record_stride,
         py::object t_start, py::object t_end, bool analytic) {
        const PropagationConfig cfg = make_config(steps_per_period, record_stride, t_start, t_end);
        if (analytic) return report_dict(propagate_with_analytic(s, trajectory_for(s), psi0, cfg));
        return report_dict(propagate(s, psi0, cfg));
      },
      py::arg("schedule"), py::arg("psi0") = basis_state(1), py::arg("steps_per_period") = 2000,
      py::arg("record_stride") = 0, py::arg("t_start") = py::none(), py::arg("t_end") = py::none(),
      py::arg("analytic") = false);

  m.def(
      "verify",
      [](const PulseSchedule& s, int samples, bool propagate) {
        VerificationOptions opts;
        opts.samples = samples;
        opts.propagate = propagate;
        const VerificationReport r = verify_schedule(s, trajectory_for(s), opts);
        py::list checks;
        for (const CheckResult& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["skipped"] = c.skipped;
          d["value"] = c.value;
          d["threshold"] = c.threshold;
          d["detail"] = c.detail;
          checks.append(d);
        }
        return checks;
      },
      py::arg("schedule"), py::arg("samples") = 50, py::arg("propagate") = true);
}
