#pragma once

#include <cstdint>
#include <string>

#include "pdgo/dynamics.hpp"
#include "pdgo/geometry.hpp"
#include "pdgo/types.hpp"

namespace pdgo {

/// Outcome of the step-size design rules. For equality problems the rule is
///   max{ beta*sigma_hi/rho_lo, alpha*rho_hi } <= 1/2,   c = 2*max{...};
/// for inequality problems it is
///   gamma >= 2*beta  and  max{c1, c2, c3, c4} <= 1/4,   c = 4*max{...},
/// with
///   c1 = max{alpha*rho_hi, alpha*gamma*sigma_hi} * max{2, sigma_hi/sigma_lo}
///   c2 = 2*beta*(sigma_hi/sigma_lo) * max{2, sigma_hi/sigma_lo}
///   c3 = (beta*sigma_hi/rho_lo)
///        * max{2, 2/(alpha*gamma*sigma_lo), sigma_hi/(alpha*gamma*sigma_lo^2)}
///   c4 = 2*(beta*sigma_hi^2/(gamma*sigma_lo^2))
///        * max{sigma_hi/sigma_lo, alpha*gamma*sigma_hi}.
/// margin is the distance of the max expression from its bound (1/2 or 1/4);
/// feasible requires a strictly positive margin (and gamma >= 2*beta).
struct StepDesignReport {
  StepConfig steps;
  double c = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;  // NaN for equality designs
  bool feasible = false;
  double margin = 0.0;
  std::string binding;  // name of the binding constraint when infeasible
};

/// Certificate that one update step contracts the metric M by factor tau:
/// mu_max is the largest generalized eigenvalue of (Theta' M Theta, M) over
/// all checked linearizations Theta, and verified means
/// mu_max <= tau^2 + 1e-12. For inequality problems with p <= 12 the checked
/// set is the full {0,1}^p vertex family of Psi matrices (sufficient, since
/// every Psi is a convex combination of the vertices); for larger p it is a
/// fixed-seed uniform sample of [0,1]^p plus the all-zeros/all-ones vertices,
/// and the certificate is sampling evidence rather than proof.
struct ContractionCertificate {
  Matrix M;
  double c = 0.0;
  double tau = 0.0;
  double mu_max = 0.0;
  bool verified = false;
  std::int64_t samples_checked = 0;
  double rate_sigma_lo = 0.0;  // the sigma_lo that entered the rate formula
};

/// Result of the dual-block bound check: with u = beta/gamma the hypothesis
///   gamma >= 2*beta  and  2*alpha*beta*(1-u)^2*sigma_hi / (1-(1-u)^2) <= c <= 1
/// implies  Pi3(Psi) + (1/2)*alpha^2*beta*c*A A' <= 0  for every diagonal
/// Psi in [0,1]^p, where Pi3 is the dual-dual block of Theta'M Theta - M.
struct DualBlockBoundCheck {
  bool hypothesis_met = false;
  std::string hypothesis_note;
  bool pass = false;
  double worst_eigenvalue = 0.0;
  std::int64_t samples_checked = 0;
};

/// Closed-form equality design: alpha = t/(2*rho_hi), beta =
/// t*rho_lo/(2*sigma_hi) puts both bracket terms at t/2, so c = t.
/// target_fraction must lie strictly inside (0,1); the boundary value 1
/// gives rate 1 (no contraction) and is rejected.
StepDesignReport design_steps_eq(const ConstrainedProblem& problem,
                                 double target_fraction = 0.9);

/// Inequality design for a given gamma: searches (alpha, beta) on a 64x64
/// logarithmic grid over [1e-8, 1]^2 (refined once around the best cell),
/// maximizing alpha*beta subject to max{c1..c4} <= target_fraction/4 and
/// gamma >= 2*beta. Infeasible grids report feasible=false and name the
/// binding constraint.
StepDesignReport design_steps_ineq(const ConstrainedProblem& problem,
                                   double gamma,
                                   double target_fraction = 0.9);

/// Recomputes the design report for externally chosen steps (both kinds).
StepDesignReport evaluate_design(const ConstrainedProblem& problem,
                                 const StepConfig& steps);

/// Riemannian metric M = [[beta*c*I, alpha*beta*A'], [alpha*beta*A,
/// alpha*c*I]]. Throws "metric indefinite" (with the offending minimum
/// eigenvalue) when the assembly is not positive definite, which happens
/// exactly when c^2 <= alpha*beta*lambda_max(AA').
Matrix build_metric(const ConstrainedProblem& problem, const StepConfig& steps,
                    double c);

/// Convergence rate tau = sqrt(1 - ((1-c)/c)*alpha*beta*sigma_lo) with the
/// problem's own constraint-block sigma_lo. Throws "rate undefined" when c
/// is outside (0,1) or the radicand leaves (0,1].
double rate(const ConstrainedProblem& problem, const StepConfig& steps,
            double c);

/// Largest generalized eigenvalue mu of (Theta' M Theta, M), computed by
/// symmetric reduction with M's Cholesky factor. mu <= tau^2 certifies
/// ||Theta v||_M <= tau*||v||_M for all v.
double contraction_factor(const Matrix& theta, const MetricSpaceView& view);

/// Full certification pipeline: builds M, computes tau = rate(...), and
/// maximizes the contraction factor over the Psi family described on
/// ContractionCertificate. psi_samples is the sample count used when the
/// vertex family is intractable (p > 12).
ContractionCertificate certify(const ConstrainedProblem& problem,
                               const StepConfig& steps, double c,
                               std::int64_t psi_samples = 1000);

/// Dual-dual block Pi3 of Theta'M Theta - M for a given Psi, assembled in
/// closed form (inequality problems only).
Matrix assemble_dual_block(const ConstrainedProblem& problem,
                           const StepConfig& steps, double c,
                           const Vector& psi_diag);

/// Checks max eig(Pi3 + (1/2)*alpha^2*beta*c*AA') <= 1e-12 over the Psi
/// vertex family (p <= 12) or psi_samples uniform draws otherwise.
DualBlockBoundCheck check_dual_block_bound(const ConstrainedProblem& problem,
                                           const StepConfig& steps, double c,
                                           std::int64_t psi_samples = 1000);

}  // namespace pdgo
