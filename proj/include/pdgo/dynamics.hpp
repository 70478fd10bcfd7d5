#pragma once

#include <optional>

#include "pdgo/types.hpp"

namespace pdgo {

/// Linearization of one primal-dual update step around a reference point.
/// For a quadratic objective the equality-constrained map is exactly linear
/// and theta is constant; for inequality constraints theta depends on the
/// diagonal secant matrix Psi of the plus operator, with entries in [0,1]
/// (all ones for the equality case).
struct JacobianTheta {
  Matrix theta;     // (n+p) x (n+p)
  Vector psi_diag;  // p entries in [0,1]
};

/// One primal-dual gradient step for an equality-constrained problem:
///   x+ = x - alpha*(grad f(x) + A'lambda),  lambda+ = lambda + beta*(Ax - b).
/// Does not test the result for finiteness; trajectory drivers decide the
/// divergence policy.
PrimalDualState step_eq(const ConstrainedProblem& problem,
                        const PrimalDualState& state, const StepConfig& steps);

/// One primal-dual gradient step for an inequality-constrained problem using
/// the augmented-Lagrangian gradients with penalty parameter steps.gamma.
PrimalDualState step_ineq(const ConstrainedProblem& problem,
                          const PrimalDualState& state,
                          const StepConfig& steps);

/// Dispatches on problem.kind().
PrimalDualState step(const ConstrainedProblem& problem,
                     const PrimalDualState& state, const StepConfig& steps);

/// Secant slopes of the plus operator between a state and a reference:
///   psi_i = ([z_i]_+ - [z*_i]_+) / (z_i - z*_i),  z_i = gamma*(a_i'x-b_i)+l_i.
/// When z_i == z*_i the slope is taken as 1 for z_i >= 0 and 0 otherwise
/// (the one-sided limit), which keeps step(s) - step(s*) = Theta(Psi)(s - s*)
/// exact. Entries always lie in [0,1].
Vector compute_psi(const ConstrainedProblem& problem,
                   const PrimalDualState& state,
                   const PrimalDualState& reference, double gamma);

/// Assembles the step-map linearization. Equality (psi_diag ignored):
///   [[I - alpha*Q, -alpha*A'], [beta*A, I]].
/// Inequality (psi_diag required, entries in [0,1], else "psi range"):
///   [[I - alpha*Q - alpha*gamma*A'*Psi*A, -alpha*A'*Psi],
///    [beta*Psi*A,                         I - (beta/gamma)(I - Psi)]].
/// Requires a quadratic objective (constant curvature matrix).
JacobianTheta assemble_theta(const ConstrainedProblem& problem,
                             const StepConfig& steps,
                             const std::optional<Vector>& psi_diag = {});

}  // namespace pdgo
