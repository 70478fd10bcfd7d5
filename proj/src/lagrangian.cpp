#include "pdgo/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

namespace pdgo {

namespace {

void check_state_shape(const ConstrainedProblem& problem,
                       const PrimalDualState& state) {
  if (state.x.size() != problem.n() || state.lambda.size() != problem.p()) {
    throw std::invalid_argument("shape: state does not match problem");
  }
}

}  // namespace

double KktResidual::total() const {
  return std::sqrt(stationarity_norm * stationarity_norm +
                   feasibility_norm * feasibility_norm);
}

double lagrangian_eq_value(const ConstrainedProblem& problem,
                           const PrimalDualState& state) {
  check_state_shape(problem, state);
  const ConstraintBlock& con = problem.constraint;
  return problem.objective.value(state.x) +
         state.lambda.dot(con.A * state.x - con.b);
}

GradientPair grad_lagrangian_eq(const ConstrainedProblem& problem,
                                const PrimalDualState& state) {
  if (problem.kind() != ConstraintKind::Equality) {
    throw std::invalid_argument("grad_lagrangian_eq requires an equality problem");
  }
  check_state_shape(problem, state);
  const ConstraintBlock& con = problem.constraint;
  GradientPair g;
  g.x = problem.objective.gradient(state.x) +
        con.A.transpose() * state.lambda;
  g.lambda = con.A * state.x - con.b;
  return g;
}

double penalty_phi(double gamma, double slack, double lambda_i) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }
  if (gamma * slack + lambda_i >= 0.0) {
    return slack * lambda_i + 0.5 * gamma * slack * slack;
  }
  return -lambda_i * lambda_i / (2.0 * gamma);
}

double aug_lagrangian_value(const ConstrainedProblem& problem,
                            const PrimalDualState& state, double gamma) {
  check_state_shape(problem, state);
  const ConstraintBlock& con = problem.constraint;
  const Vector slack = con.A * state.x - con.b;
  double phi = 0.0;
  for (int i = 0; i < slack.size(); ++i) {
    phi += penalty_phi(gamma, slack(i), state.lambda(i));
  }
  return problem.objective.value(state.x) + phi;
}

GradientPair grad_aug_lagrangian(const ConstrainedProblem& problem,
                                 const PrimalDualState& state, double gamma) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument(
        "grad_aug_lagrangian requires an inequality problem");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }
  check_state_shape(problem, state);
  const ConstraintBlock& con = problem.constraint;

  const Vector bracket =
      gamma * (con.A * state.x - con.b) + state.lambda;  // z_i
  const Vector bracket_plus = bracket.cwiseMax(0.0);

  GradientPair g;
  g.x = problem.objective.gradient(state.x) +
        con.A.transpose() * bracket_plus;
  g.lambda = (bracket_plus - state.lambda) / gamma;
  return g;
}

KktResidual kkt_residual(const ConstrainedProblem& problem,
                         const PrimalDualState& state, double gamma) {
  const GradientPair g = problem.kind() == ConstraintKind::Equality
                             ? grad_lagrangian_eq(problem, state)
                             : grad_aug_lagrangian(problem, state, gamma);
  KktResidual r;
  r.stationarity_norm = g.x.norm();
  r.feasibility_norm = g.lambda.norm();
  return r;
}

}  // namespace pdgo
