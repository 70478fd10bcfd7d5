#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pdgo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative tolerance for the numerical row-rank test (singular values
/// below tol * sigma_max count as zero).
inline constexpr double kRankTolerance = 1e-10;

enum class ConstraintKind { Equality, Inequality };

const char* to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(const std::string& s);

/// Strongly convex objective. The concrete class is f(x) = 0.5 x'Qx with
/// curvature bounds rho_lo <= eig(Q) <= rho_hi; a general twice-differentiable
/// objective can be supplied through the value/gradient callbacks, in which
/// case Q is interpreted as a representative curvature matrix for the
/// linearization-based routines.
struct Objective {
  Matrix Q;
  double rho_lo = 0.0;  // strong-convexity modulus
  double rho_hi = 0.0;  // gradient Lipschitz constant

  std::function<double(const Vector&)> value_fn;
  std::function<Vector(const Vector&)> gradient_fn;

  Objective() = default;
  Objective(Matrix Q_in, double rho_lo_in, double rho_hi_in);

  int dim() const { return static_cast<int>(Q.rows()); }
  bool is_quadratic() const { return !value_fn; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

/// One linear constraint block, either A x = b or A x <= b, with two-sided
/// bounds sigma_lo <= eig(A A') <= sigma_hi on the nonzero constraint
/// spectrum. A is expected to have full row rank.
struct ConstraintBlock {
  ConstraintKind kind = ConstraintKind::Equality;
  Matrix A;
  Vector b;
  double sigma_lo = 0.0;
  double sigma_hi = 0.0;

  ConstraintBlock() = default;
  ConstraintBlock(ConstraintKind kind_in, Matrix A_in, Vector b_in,
                  double sigma_lo_in, double sigma_hi_in);

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
};

struct ConstrainedProblem {
  Objective objective;
  ConstraintBlock constraint;

  ConstrainedProblem() = default;
  ConstrainedProblem(Objective obj, ConstraintBlock con);

  int n() const { return objective.dim(); }
  int p() const { return constraint.rows(); }
  ConstraintKind kind() const { return constraint.kind; }
};

/// Stacked primal-dual iterate (x, lambda) at iteration k.
struct PrimalDualState {
  Vector x;
  Vector lambda;
  std::int64_t k = 0;

  PrimalDualState() = default;
  PrimalDualState(Vector x_in, Vector lambda_in, std::int64_t k_in = 0)
      : x(std::move(x_in)), lambda(std::move(lambda_in)), k(k_in) {}

  /// xi = [x; lambda]
  Vector stacked() const;
  static PrimalDualState from_stacked(const Vector& xi, int n,
                                      std::int64_t k = 0);

  bool all_finite() const;
};

/// Step sizes for the primal/dual updates and the penalty parameter gamma
/// (gamma is ignored for equality-constrained problems). Zero step sizes are
/// representable so that diagnostic paths (identity update map) can be
/// expressed; validate_steps() enforces strict positivity for actual runs.
struct StepConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;

  StepConfig() = default;
  StepConfig(double alpha_in, double beta_in, double gamma_in = 1.0);
};

/// Throws std::invalid_argument unless alpha > 0, beta > 0, gamma > 0 and,
/// for inequality problems, gamma >= 2*beta.
void validate_steps(const StepConfig& steps, ConstraintKind kind);

/// Checks every problem invariant and returns one message per violation
/// (empty means valid): finite data, dimension consistency, full row rank
/// of A, rho_lo <= eig(Q) <= rho_hi, sigma_lo <= eig(AA') <= sigma_hi and
/// ordering/positivity of the bounds. Deterministic and side-effect free.
std::vector<std::string> validate_problem(const ConstrainedProblem& problem);

/// Throws std::invalid_argument listing all violations if the problem is
/// invalid. Entry points that hand problems to solvers call this so that no
/// invalid instance travels downstream.
void ensure_valid(const ConstrainedProblem& problem);

}  // namespace pdgo
