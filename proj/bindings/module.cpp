// pybind11 bindings for the pdgo core: problem types, Lagrangian gradients,
// primal-dual step maps, step-size design, contraction certificates,
// oracles and trajectory runs.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdgo/contraction.hpp"
#include "pdgo/dynamics.hpp"
#include "pdgo/geometry.hpp"
#include "pdgo/lagrangian.hpp"
#include "pdgo/pipeline.hpp"
#include "pdgo/problem_io.hpp"
#include "pdgo/problems.hpp"
#include "pdgo/trace.hpp"
#include "pdgo/types.hpp"

namespace py = pybind11;
using namespace pdgo;

PYBIND11_MODULE(_pdgo, m) {
  m.doc() = "Primal-dual gradient optimization with contraction-based step "
            "design and numerical convergence certificates";

  py::register_exception<DesignInfeasibleError>(m, "DesignInfeasibleError");

  py::enum_<ConstraintKind>(m, "ConstraintKind")
      .value("Equality", ConstraintKind::Equality)
      .value("Inequality", ConstraintKind::Inequality);

  py::class_<Objective>(m, "Objective")
      .def(py::init<Matrix, double, double>(), py::arg("Q"),
           py::arg("rho_lo"), py::arg("rho_hi"))
      .def_readonly("Q", &Objective::Q)
      .def_readonly("rho_lo", &Objective::rho_lo)
      .def_readonly("rho_hi", &Objective::rho_hi)
      .def("dim", &Objective::dim)
      .def("value", &Objective::value, py::arg("x"))
      .def("gradient", &Objective::gradient, py::arg("x"));

  py::class_<ConstraintBlock>(m, "ConstraintBlock")
      .def(py::init<ConstraintKind, Matrix, Vector, double, double>(),
           py::arg("kind"), py::arg("A"), py::arg("b"), py::arg("sigma_lo"),
           py::arg("sigma_hi"))
      .def_readonly("kind", &ConstraintBlock::kind)
      .def_readonly("A", &ConstraintBlock::A)
      .def_readonly("b", &ConstraintBlock::b)
      .def_readonly("sigma_lo", &ConstraintBlock::sigma_lo)
      .def_readonly("sigma_hi", &ConstraintBlock::sigma_hi);

  py::class_<ConstrainedProblem>(m, "ConstrainedProblem")
      .def(py::init<Objective, ConstraintBlock>(), py::arg("objective"),
           py::arg("constraint"))
      .def_readonly("objective", &ConstrainedProblem::objective)
      .def_readonly("constraint", &ConstrainedProblem::constraint)
      .def("n", &ConstrainedProblem::n)
      .def("p", &ConstrainedProblem::p)
      .def("kind", &ConstrainedProblem::kind);

  py::class_<PrimalDualState>(m, "PrimalDualState")
      .def(py::init<Vector, Vector, std::int64_t>(), py::arg("x"),
           py::arg("lam"), py::arg("k") = 0)
      .def_readwrite("x", &PrimalDualState::x)
      .def_readwrite("lam", &PrimalDualState::lambda)
      .def_readwrite("k", &PrimalDualState::k)
      .def("stacked", &PrimalDualState::stacked)
      .def("all_finite", &PrimalDualState::all_finite);

  py::class_<StepConfig>(m, "StepConfig")
      .def(py::init<double, double, double>(), py::arg("alpha"),
           py::arg("beta"), py::arg("gamma") = 1.0)
      .def_readwrite("alpha", &StepConfig::alpha)
      .def_readwrite("beta", &StepConfig::beta)
      .def_readwrite("gamma", &StepConfig::gamma);

  m.def("validate_problem", &validate_problem, py::arg("problem"));
  m.def("validate_steps", &validate_steps, py::arg("steps"), py::arg("kind"));

  // --- Lagrangian evaluation ---

  py::class_<KktResidual>(m, "KktResidual")
      .def_readonly("stationarity_norm", &KktResidual::stationarity_norm)
      .def_readonly("feasibility_norm", &KktResidual::feasibility_norm)
      .def("total", &KktResidual::total);

  m.def(
      "grad_lagrangian_eq",
      [](const ConstrainedProblem& problem, const PrimalDualState& state) {
        const GradientPair g = grad_lagrangian_eq(problem, state);
        return py::make_tuple(g.x, g.lambda);
      },
      py::arg("problem"), py::arg("state"));
  m.def("penalty_phi", &penalty_phi, py::arg("gamma"), py::arg("slack"),
        py::arg("lambda_i"));
  m.def(
      "grad_aug_lagrangian",
      [](const ConstrainedProblem& problem, const PrimalDualState& state,
         double gamma) {
        const GradientPair g = grad_aug_lagrangian(problem, state, gamma);
        return py::make_tuple(g.x, g.lambda);
      },
      py::arg("problem"), py::arg("state"), py::arg("gamma"));
  m.def("lagrangian_eq_value", &lagrangian_eq_value, py::arg("problem"),
        py::arg("state"));
  m.def("aug_lagrangian_value", &aug_lagrangian_value, py::arg("problem"),
        py::arg("state"), py::arg("gamma"));
  m.def("kkt_residual", &kkt_residual, py::arg("problem"), py::arg("state"),
        py::arg("gamma") = 1.0);

  // --- Step maps and linearization ---

  py::class_<JacobianTheta>(m, "JacobianTheta")
      .def_readonly("theta", &JacobianTheta::theta)
      .def_readonly("psi_diag", &JacobianTheta::psi_diag);

  m.def("step_eq", &step_eq, py::arg("problem"), py::arg("state"),
        py::arg("steps"));
  m.def("step_ineq", &step_ineq, py::arg("problem"), py::arg("state"),
        py::arg("steps"));
  m.def("step", &step, py::arg("problem"), py::arg("state"), py::arg("steps"));
  m.def("compute_psi", &compute_psi, py::arg("problem"), py::arg("state"),
        py::arg("reference"), py::arg("gamma"));
  m.def("assemble_theta", &assemble_theta, py::arg("problem"),
        py::arg("steps"), py::arg("psi_diag") = std::nullopt);

  // --- Geometry ---

  py::class_<MetricSpaceView>(m, "MetricSpaceView")
      .def(py::init<Matrix>(), py::arg("M"))
      .def_property_readonly("M", &MetricSpaceView::metric)
      .def("cholesky_lower", &MetricSpaceView::cholesky_lower)
      .def("dim", &MetricSpaceView::dim)
      .def("norm", &MetricSpaceView::norm, py::arg("v"))
      .def("distance", &MetricSpaceView::distance, py::arg("s1"),
           py::arg("s2"))
      .def("energy", &MetricSpaceView::energy, py::arg("s1"), py::arg("s2"));

  // --- Step design and contraction certificates ---

  py::class_<StepDesignReport>(m, "StepDesignReport")
      .def_readonly("steps", &StepDesignReport::steps)
      .def_readonly("c", &StepDesignReport::c)
      .def_readonly("c1", &StepDesignReport::c1)
      .def_readonly("c2", &StepDesignReport::c2)
      .def_readonly("c3", &StepDesignReport::c3)
      .def_readonly("c4", &StepDesignReport::c4)
      .def_readonly("feasible", &StepDesignReport::feasible)
      .def_readonly("margin", &StepDesignReport::margin)
      .def_readonly("binding", &StepDesignReport::binding);

  py::class_<ContractionCertificate>(m, "ContractionCertificate")
      .def_readonly("M", &ContractionCertificate::M)
      .def_readonly("c", &ContractionCertificate::c)
      .def_readonly("tau", &ContractionCertificate::tau)
      .def_readonly("mu_max", &ContractionCertificate::mu_max)
      .def_readonly("verified", &ContractionCertificate::verified)
      .def_readonly("samples_checked", &ContractionCertificate::samples_checked)
      .def_readonly("rate_sigma_lo", &ContractionCertificate::rate_sigma_lo);

  py::class_<DualBlockBoundCheck>(m, "DualBlockBoundCheck")
      .def_readonly("hypothesis_met", &DualBlockBoundCheck::hypothesis_met)
      .def_readonly("hypothesis_note", &DualBlockBoundCheck::hypothesis_note)
      .def_readonly("pass_", &DualBlockBoundCheck::pass)
      .def_readonly("worst_eigenvalue", &DualBlockBoundCheck::worst_eigenvalue)
      .def_readonly("samples_checked", &DualBlockBoundCheck::samples_checked);

  m.def("design_steps_eq", &design_steps_eq, py::arg("problem"),
        py::arg("target_fraction") = 0.9);
  m.def("design_steps_ineq", &design_steps_ineq, py::arg("problem"),
        py::arg("gamma"), py::arg("target_fraction") = 0.9);
  m.def("evaluate_design", &evaluate_design, py::arg("problem"),
        py::arg("steps"));
  m.def("build_metric", &build_metric, py::arg("problem"), py::arg("steps"),
        py::arg("c"));
  m.def("rate", &rate, py::arg("problem"), py::arg("steps"), py::arg("c"));
  m.def("contraction_factor", &contraction_factor, py::arg("theta"),
        py::arg("metric"));
  m.def("certify", &certify, py::arg("problem"), py::arg("steps"),
        py::arg("c"), py::arg("psi_samples") = 1000,
        py::call_guard<py::gil_scoped_release>());
  m.def("assemble_dual_block", &assemble_dual_block, py::arg("problem"),
        py::arg("steps"), py::arg("c"), py::arg("psi_diag"));
  m.def("check_dual_block_bound", &check_dual_block_bound, py::arg("problem"),
        py::arg("steps"), py::arg("c"), py::arg("psi_samples") = 1000,
        py::call_guard<py::gil_scoped_release>());

  // --- Instance generation and oracles ---

  py::class_<GeneratorSpec>(m, "GeneratorSpec")
      .def(py::init([](int n, int p, ConstraintKind kind, std::uint64_t seed,
                       double shift) {
             GeneratorSpec spec;
             spec.n = n;
             spec.p = p;
             spec.kind = kind;
             spec.seed = seed;
             spec.shift = shift;
             return spec;
           }),
           py::arg("n"), py::arg("p"), py::arg("kind"), py::arg("seed"),
           py::arg("shift") = 5.0)
      .def_readwrite("n", &GeneratorSpec::n)
      .def_readwrite("p", &GeneratorSpec::p)
      .def_readwrite("kind", &GeneratorSpec::kind)
      .def_readwrite("seed", &GeneratorSpec::seed)
      .def_readwrite("shift", &GeneratorSpec::shift);

  py::class_<OracleSolution>(m, "OracleSolution")
      .def_readonly("x_star", &OracleSolution::x_star)
      .def_readonly("lambda_star", &OracleSolution::lambda_star)
      .def_readonly("active_set", &OracleSolution::active_set)
      .def_readonly("kkt_norm", &OracleSolution::kkt_norm);

  m.def("generate", &generate, py::arg("spec"));
  m.def("solve_oracle_eq", &solve_oracle_eq, py::arg("problem"));
  m.def("solve_oracle_ineq", &solve_oracle_ineq, py::arg("problem"));
  m.def("solve_oracle", &solve_oracle, py::arg("problem"));

  // --- Trajectories ---

  py::enum_<Termination>(m, "Termination")
      .value("Converged", Termination::Converged)
      .value("MaxIter", Termination::MaxIter)
      .value("Diverged", Termination::Diverged);

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("k", &TraceRow::k)
      .def_readonly("f", &TraceRow::f)
      .def_readonly("stat_norm", &TraceRow::stat_norm)
      .def_readonly("feas_norm", &TraceRow::feas_norm)
      .def_readonly("dist_m", &TraceRow::dist_m)
      .def_readonly("energy_ratio", &TraceRow::energy_ratio);

  py::class_<TrajectoryTrace>(m, "TrajectoryTrace")
      .def_readonly("rows", &TrajectoryTrace::rows)
      .def_readonly("termination", &TrajectoryTrace::termination)
      .def_readonly("final_state", &TrajectoryTrace::final_state)
      .def_readonly("steps", &TrajectoryTrace::steps)
      .def_readonly("tol", &TrajectoryTrace::tol)
      .def("iterations", &TrajectoryTrace::iterations);

  py::class_<RunOptions>(m, "RunOptions")
      .def(py::init([](std::int64_t max_iter, double tol) {
             RunOptions o;
             o.max_iter = max_iter;
             o.tol = tol;
             return o;
           }),
           py::arg("max_iter") = 100000, py::arg("tol") = 1e-8)
      .def_readwrite("max_iter", &RunOptions::max_iter)
      .def_readwrite("tol", &RunOptions::tol);

  m.def(
      "run",
      [](const ConstrainedProblem& problem, const StepConfig& steps,
         const PrimalDualState& init, const RunOptions& options,
         const std::optional<Matrix>& metric,
         const std::optional<Vector>& reference) {
        if (metric.has_value() != reference.has_value()) {
          throw std::invalid_argument(
              "metric and reference must be supplied together");
        }
        if (!metric) return run(problem, steps, init, options);
        const MetricSpaceView view(*metric);
        return run(problem, steps, init, options, &view, &*reference);
      },
      py::arg("problem"), py::arg("steps"), py::arg("init"),
      py::arg("options") = RunOptions{}, py::arg("metric") = std::nullopt,
      py::arg("reference") = std::nullopt,
      py::call_guard<py::gil_scoped_release>());

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("tau_hat", &RateFit::tau_hat)
      .def_readonly("c_hat", &RateFit::c_hat);

  m.def("fit_rate", &fit_rate, py::arg("trace"), py::arg("burn_in") = 10);
  m.def("empirical_prefactor", &empirical_prefactor, py::arg("trace"),
        py::arg("tau"));
  m.def("write_trace_csv", &write_trace_csv, py::arg("trace"),
        py::arg("path"));
  m.def("read_trace_csv", &read_trace_csv, py::arg("path"));

  // --- Pipelines ---

  py::class_<PipelineOptions>(m, "PipelineOptions")
      .def(py::init<>())
      .def_readwrite("alpha", &PipelineOptions::alpha)
      .def_readwrite("beta", &PipelineOptions::beta)
      .def_readwrite("gamma", &PipelineOptions::gamma)
      .def_readwrite("target_fraction", &PipelineOptions::target_fraction)
      .def_readwrite("max_iter", &PipelineOptions::max_iter)
      .def_readwrite("tol", &PipelineOptions::tol)
      .def_readwrite("psi_samples", &PipelineOptions::psi_samples)
      .def_readwrite("with_certificate", &PipelineOptions::with_certificate)
      .def_readwrite("init", &PipelineOptions::init);

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("design", &PipelineResult::design)
      .def_readonly("certificate", &PipelineResult::certificate)
      .def_readonly("oracle", &PipelineResult::oracle)
      .def_readonly("trace", &PipelineResult::trace)
      .def_readonly("fit", &PipelineResult::fit)
      .def_readonly("empirical_c", &PipelineResult::empirical_c);

  m.def("run_pipeline", &run_pipeline, py::arg("problem"), py::arg("options"),
        py::call_guard<py::gil_scoped_release>());
  m.def("heuristic_steps", &heuristic_steps, py::arg("problem"),
        py::arg("gamma"));

  py::class_<GammaSweepRow>(m, "GammaSweepRow")
      .def_readonly("gamma", &GammaSweepRow::gamma)
      .def_readonly("design", &GammaSweepRow::design)
      .def_readonly("tau", &GammaSweepRow::tau)
      .def_readonly("run_steps", &GammaSweepRow::run_steps)
      .def_readonly("termination", &GammaSweepRow::termination)
      .def_readonly("iterations", &GammaSweepRow::iterations)
      .def_readonly("tau_hat", &GammaSweepRow::tau_hat)
      .def_readonly("error", &GammaSweepRow::error);

  py::class_<GammaSweepResult>(m, "GammaSweepResult")
      .def_readonly("rows", &GammaSweepResult::rows)
      .def_readonly("traces", &GammaSweepResult::traces);

  m.def("gamma_sweep", &gamma_sweep, py::arg("problem"), py::arg("gammas"),
        py::arg("alpha") = std::nullopt, py::arg("beta") = std::nullopt,
        py::arg("options") = RunOptions{}, py::arg("init") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());

  // --- Problem file I/O ---

  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("save_problem", &save_problem, py::arg("problem"), py::arg("path"));
  m.def(
      "problem_to_json_str",
      [](const ConstrainedProblem& problem) {
        return problem_to_json(problem).dump(2);
      },
      py::arg("problem"));
  m.def(
      "problem_from_json_str",
      [](const std::string& text) {
        return problem_from_json(Json::parse(text));
      },
      py::arg("text"));
}
