#include "pdgo/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "pdgo/parallel.hpp"

namespace pdgo {

namespace {

constexpr int kOracleEnumerationLimit = 20;

PrimalDualState default_init(const ConstrainedProblem& problem) {
  return PrimalDualState(Vector::Zero(problem.n()), Vector::Zero(problem.p()));
}

std::optional<OracleSolution> try_oracle(const ConstrainedProblem& problem) {
  if (problem.kind() == ConstraintKind::Inequality &&
      problem.p() > kOracleEnumerationLimit) {
    return std::nullopt;
  }
  return solve_oracle(problem);
}

}  // namespace

StepConfig heuristic_steps(const ConstrainedProblem& problem, double gamma) {
  const double lipschitz =
      problem.objective.rho_hi + gamma * problem.constraint.sigma_hi;
  return StepConfig(0.9 / lipschitz, gamma / 2.0, gamma);
}

PipelineResult run_pipeline(const ConstrainedProblem& problem,
                            const PipelineOptions& options) {
  ensure_valid(problem);
  PipelineResult result;

  if (options.alpha.has_value() != options.beta.has_value()) {
    throw std::invalid_argument("alpha and beta must be given together");
  }
  if (options.alpha) {
    StepConfig steps(*options.alpha, *options.beta, options.gamma);
    if (problem.kind() == ConstraintKind::Inequality &&
        steps.gamma < 2.0 * steps.beta) {
      throw DesignInfeasibleError("gamma >= 2*beta",
                                  "gamma >= 2*beta violated by the supplied "
                                  "step sizes");
    }
    result.design = evaluate_design(problem, steps);
  } else {
    result.design =
        problem.kind() == ConstraintKind::Equality
            ? design_steps_eq(problem, options.target_fraction)
            : design_steps_ineq(problem, options.gamma,
                                options.target_fraction);
    if (!result.design.feasible) {
      throw DesignInfeasibleError(result.design.binding,
                                  "step design infeasible; binding constraint: " +
                                      result.design.binding);
    }
  }
  const StepConfig steps = result.design.steps;

  if (options.with_certificate && result.design.c > 0.0 &&
      result.design.c < 1.0) {
    result.certificate =
        certify(problem, steps, result.design.c, options.psi_samples);
  }

  result.oracle = try_oracle(problem);

  std::optional<MetricSpaceView> view;
  Vector reference;
  if (result.certificate && result.oracle) {
    view.emplace(result.certificate->M);
    reference =
        PrimalDualState(result.oracle->x_star, result.oracle->lambda_star)
            .stacked();
  }

  RunOptions run_options;
  run_options.max_iter = options.max_iter;
  run_options.tol = options.tol;
  const PrimalDualState init =
      options.init ? *options.init : default_init(problem);
  result.trace = run(problem, steps, init, run_options,
                     view ? &*view : nullptr, view ? &reference : nullptr);

  try {
    result.fit = fit_rate(result.trace);
  } catch (const std::invalid_argument&) {
    // short traces simply carry no fitted rate
  }
  if (result.certificate) {
    const double c_emp =
        empirical_prefactor(result.trace, result.certificate->tau);
    if (std::isfinite(c_emp)) result.empirical_c = c_emp;
  }
  return result;
}

GammaSweepResult gamma_sweep(const ConstrainedProblem& problem,
                             const std::vector<double>& gammas,
                             std::optional<double> alpha,
                             std::optional<double> beta,
                             const RunOptions& options,
                             std::optional<PrimalDualState> init) {
  ensure_valid(problem);
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument("gamma_sweep requires an inequality problem");
  }
  if (gammas.empty()) {
    throw std::invalid_argument("gamma list must not be empty");
  }
  for (double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("gammas must be positive");
  }

  const double gamma_min = *std::min_element(gammas.begin(), gammas.end());
  const double gamma_max = *std::max_element(gammas.begin(), gammas.end());
  const double run_beta = beta.value_or(gamma_min / 2.0);
  const double run_alpha =
      alpha.value_or(0.9 / (problem.objective.rho_hi +
                            gamma_max * problem.constraint.sigma_hi));
  const PrimalDualState common_init =
      init ? *init : default_init(problem);
  const std::optional<OracleSolution> oracle = try_oracle(problem);

  GammaSweepResult result;
  result.rows.resize(gammas.size());
  result.traces.resize(gammas.size());

  parallel_for(static_cast<std::int64_t>(gammas.size()), [&](std::int64_t i) {
    GammaSweepRow& row = result.rows[i];
    row.gamma = gammas[i];
    try {
      row.design = design_steps_ineq(problem, row.gamma);
      if (row.design.feasible) {
        row.tau = rate(problem, row.design.steps, row.design.c);
      }
      row.run_steps = StepConfig(run_alpha, run_beta, row.gamma);
      if (row.gamma < 2.0 * run_beta) {
        throw DesignInfeasibleError("gamma >= 2*beta",
                                    "gamma >= 2*beta violated for gamma = " +
                                        std::to_string(row.gamma));
      }

      // Distances are measured in this gamma's designed metric when one
      // exists and an oracle reference is computable.
      std::optional<MetricSpaceView> view;
      Vector reference;
      if (row.design.feasible && oracle) {
        view.emplace(build_metric(problem, row.design.steps, row.design.c));
        reference = PrimalDualState(oracle->x_star, oracle->lambda_star)
                        .stacked();
      }
      result.traces[i] =
          run(problem, row.run_steps, common_init, options,
              view ? &*view : nullptr, view ? &reference : nullptr);
      row.termination = result.traces[i].termination;
      row.iterations = result.traces[i].iterations();
      try {
        row.tau_hat = fit_rate(result.traces[i]).tau_hat;
      } catch (const std::invalid_argument&) {
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return result;
}

}  // namespace pdgo
