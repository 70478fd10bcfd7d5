#pragma once

#include <utility>

#include "pdgo/types.hpp"

namespace pdgo {

/// Norms of the two KKT stationarity conditions at a state: the x-gradient
/// of the (augmented) Lagrangian and its lambda-gradient.
struct KktResidual {
  double stationarity_norm = 0.0;
  double feasibility_norm = 0.0;

  double total() const;
};

struct GradientPair {
  Vector x;       // gradient in the primal variable
  Vector lambda;  // gradient in the multiplier
};

/// L(x, lambda) = f(x) + lambda'(Ax - b) for an equality-constrained problem.
double lagrangian_eq_value(const ConstrainedProblem& problem,
                           const PrimalDualState& state);

/// Gradient pair of L: (grad f(x) + A'lambda, Ax - b).
GradientPair grad_lagrangian_eq(const ConstrainedProblem& problem,
                                const PrimalDualState& state);

/// Scalar penalty term for one inequality row with slack a_i'x - b_i:
/// slack*lambda_i + (gamma/2)*slack^2 when gamma*slack + lambda_i >= 0,
/// and -lambda_i^2/(2*gamma) otherwise. Continuous across the switch.
double penalty_phi(double gamma, double slack, double lambda_i);

/// Augmented Lagrangian f(x) + sum_i penalty_phi(gamma, a_i'x - b_i, lambda_i).
double aug_lagrangian_value(const ConstrainedProblem& problem,
                            const PrimalDualState& state, double gamma);

/// Gradient pair of the augmented Lagrangian:
///   d/dx     = grad f(x) + sum_i [gamma*(a_i'x - b_i) + lambda_i]_+ a_i
///   d/dl_i   = ([gamma*(a_i'x - b_i) + lambda_i]_+ - lambda_i) / gamma
GradientPair grad_aug_lagrangian(const ConstrainedProblem& problem,
                                 const PrimalDualState& state, double gamma);

/// Residual norms of the gradient pair appropriate for the problem kind
/// (gamma is used only for inequality problems).
KktResidual kkt_residual(const ConstrainedProblem& problem,
                         const PrimalDualState& state, double gamma = 1.0);

}  // namespace pdgo
