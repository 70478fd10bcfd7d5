#include "pdgo/dynamics.hpp"

#include <stdexcept>

#include "pdgo/lagrangian.hpp"

namespace pdgo {

PrimalDualState step_eq(const ConstrainedProblem& problem,
                        const PrimalDualState& state,
                        const StepConfig& steps) {
  if (problem.kind() != ConstraintKind::Equality) {
    throw std::invalid_argument("step_eq requires an equality problem");
  }
  const GradientPair g = grad_lagrangian_eq(problem, state);
  return PrimalDualState(state.x - steps.alpha * g.x,
                         state.lambda + steps.beta * g.lambda, state.k + 1);
}

PrimalDualState step_ineq(const ConstrainedProblem& problem,
                          const PrimalDualState& state,
                          const StepConfig& steps) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument("step_ineq requires an inequality problem");
  }
  const GradientPair g = grad_aug_lagrangian(problem, state, steps.gamma);
  return PrimalDualState(state.x - steps.alpha * g.x,
                         state.lambda + steps.beta * g.lambda, state.k + 1);
}

PrimalDualState step(const ConstrainedProblem& problem,
                     const PrimalDualState& state, const StepConfig& steps) {
  return problem.kind() == ConstraintKind::Equality
             ? step_eq(problem, state, steps)
             : step_ineq(problem, state, steps);
}

Vector compute_psi(const ConstrainedProblem& problem,
                   const PrimalDualState& state,
                   const PrimalDualState& reference, double gamma) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument("compute_psi requires an inequality problem");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }
  const ConstraintBlock& con = problem.constraint;
  const Vector z = gamma * (con.A * state.x - con.b) + state.lambda;
  const Vector z_ref =
      gamma * (con.A * reference.x - con.b) + reference.lambda;

  Vector psi(z.size());
  for (int i = 0; i < z.size(); ++i) {
    if (z(i) == z_ref(i)) {
      psi(i) = z(i) >= 0.0 ? 1.0 : 0.0;
    } else {
      const double num = std::max(z(i), 0.0) - std::max(z_ref(i), 0.0);
      psi(i) = num / (z(i) - z_ref(i));
    }
  }
  return psi;
}

JacobianTheta assemble_theta(const ConstrainedProblem& problem,
                             const StepConfig& steps,
                             const std::optional<Vector>& psi_diag) {
  if (!problem.objective.is_quadratic()) {
    throw std::invalid_argument(
        "assemble_theta requires a quadratic objective");
  }
  const int n = problem.n();
  const int p = problem.p();
  const Matrix& Q = problem.objective.Q;
  const Matrix& A = problem.constraint.A;
  const double alpha = steps.alpha;
  const double beta = steps.beta;

  JacobianTheta out;
  out.theta = Matrix::Zero(n + p, n + p);

  if (problem.kind() == ConstraintKind::Equality) {
    out.theta.topLeftCorner(n, n) = Matrix::Identity(n, n) - alpha * Q;
    out.theta.topRightCorner(n, p) = -alpha * A.transpose();
    out.theta.bottomLeftCorner(p, n) = beta * A;
    out.theta.bottomRightCorner(p, p) = Matrix::Identity(p, p);
    out.psi_diag = Vector::Ones(p);
    return out;
  }

  if (!psi_diag || psi_diag->size() != p) {
    throw std::invalid_argument(
        "shape: inequality theta needs a psi vector of length p");
  }
  const Vector& psi = *psi_diag;
  if ((psi.array() < 0.0).any() || (psi.array() > 1.0).any()) {
    throw std::invalid_argument("psi range: entries must lie in [0,1]");
  }
  const double gamma = steps.gamma;
  const Matrix psi_a = psi.asDiagonal() * A;  // Psi*A

  out.theta.topLeftCorner(n, n) =
      Matrix::Identity(n, n) - alpha * Q -
      alpha * gamma * A.transpose() * psi_a;
  out.theta.topRightCorner(n, p) =
      -alpha * A.transpose() * Matrix(psi.asDiagonal());
  out.theta.bottomLeftCorner(p, n) = beta * psi_a;
  out.theta.bottomRightCorner(p, p) =
      Matrix::Identity(p, p) -
      (beta / gamma) * (Matrix::Identity(p, p) - Matrix(psi.asDiagonal()));
  out.psi_diag = psi;
  return out;
}

}  // namespace pdgo
