#include "pdgo/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <stdexcept>

#include "pdgo/lagrangian.hpp"
#include "pdgo/rng.hpp"

namespace pdgo {

namespace {

constexpr int kEnumerationLimit = 20;
constexpr double kOracleTol = 1e-10;

Matrix sample_matrix(NormalSampler& sampler, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = sampler.next();
  }
  return m;
}

bool full_row_rank(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  const Vector sv = svd.singularValues();
  if (sv.size() < A.rows()) return false;
  return sv(sv.size() - 1) > kRankTolerance * sv(0);
}

/// Advances subset (ascending indices) to the next combination of the same
/// size out of {0..p-1}; returns false after the last one.
bool next_combination(std::vector<int>& subset, int p) {
  const int r = static_cast<int>(subset.size());
  for (int i = r - 1; i >= 0; --i) {
    if (subset[i] < p - (r - i)) {
      ++subset[i];
      for (int j = i + 1; j < r; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ConstrainedProblem generate(const GeneratorSpec& spec) {
  if (spec.n < 2 || spec.p < 1 || spec.p >= spec.n) {
    throw std::invalid_argument(
        "generator spec requires 1 <= p < n with n >= 2");
  }
  NormalSampler sampler(spec.seed);

  const Matrix Q0 = sample_matrix(sampler, spec.n, spec.n);
  Matrix Q = Q0.transpose() * Q0 + spec.shift * Matrix::Identity(spec.n, spec.n);
  Q = 0.5 * (Q + Q.transpose());  // symmetrize rounding residue

  Matrix A = sample_matrix(sampler, spec.p, spec.n);
  while (!full_row_rank(A)) {
    A = sample_matrix(sampler, spec.p, spec.n);
  }
  Vector b(spec.p);
  for (int i = 0; i < spec.p; ++i) b(i) = sampler.next();

  Eigen::SelfAdjointEigenSolver<Matrix> eq(Q, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> ea(A * A.transpose(),
                                           Eigen::EigenvaluesOnly);

  Objective objective(std::move(Q), eq.eigenvalues().minCoeff(),
                      eq.eigenvalues().maxCoeff());
  ConstraintBlock constraint(spec.kind, std::move(A), std::move(b),
                             ea.eigenvalues().minCoeff(),
                             ea.eigenvalues().maxCoeff());
  ConstrainedProblem problem(std::move(objective), std::move(constraint));
  ensure_valid(problem);
  return problem;
}

OracleSolution solve_oracle_eq(const ConstrainedProblem& problem) {
  if (problem.kind() != ConstraintKind::Equality) {
    throw std::invalid_argument("solve_oracle_eq requires an equality problem");
  }
  if (!problem.objective.is_quadratic()) {
    throw std::invalid_argument("oracle requires a quadratic objective");
  }
  const int n = problem.n();
  const int p = problem.p();
  const Matrix& A = problem.constraint.A;

  Matrix K = Matrix::Zero(n + p, n + p);
  K.topLeftCorner(n, n) = problem.objective.Q;
  K.topRightCorner(n, p) = A.transpose();
  K.bottomLeftCorner(p, n) = A;
  Vector rhs = Vector::Zero(n + p);
  rhs.tail(p) = problem.constraint.b;

  Eigen::FullPivLU<Matrix> lu(K);
  if (!lu.isInvertible()) {
    throw std::runtime_error("degenerate saddle system");
  }
  const Vector sol = lu.solve(rhs);

  OracleSolution out;
  out.x_star = sol.head(n);
  out.lambda_star = sol.tail(p);
  out.kkt_norm =
      kkt_residual(problem, PrimalDualState(out.x_star, out.lambda_star))
          .total();
  return out;
}

OracleSolution solve_oracle_ineq(const ConstrainedProblem& problem) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument(
        "solve_oracle_ineq requires an inequality problem");
  }
  if (!problem.objective.is_quadratic()) {
    throw std::invalid_argument("oracle requires a quadratic objective");
  }
  const int p = problem.p();
  if (p > kEnumerationLimit) {
    throw std::invalid_argument("enumeration too large: p > 20");
  }
  const int n = problem.n();
  const Matrix& A = problem.constraint.A;
  const Vector& b = problem.constraint.b;

  // Subsets in cardinality-then-lexicographic order; the first acceptable
  // subset wins, which makes the tie-breaking deterministic.
  for (int r = 0; r <= p; ++r) {
    std::vector<int> subset(r);
    for (int i = 0; i < r; ++i) subset[i] = i;
    bool more = true;
    while (more) {
      Matrix K = Matrix::Zero(n + r, n + r);
      K.topLeftCorner(n, n) = problem.objective.Q;
      for (int i = 0; i < r; ++i) {
        K.block(0, n + i, n, 1) = A.row(subset[i]).transpose();
        K.block(n + i, 0, 1, n) = A.row(subset[i]);
      }
      Vector rhs = Vector::Zero(n + r);
      for (int i = 0; i < r; ++i) rhs(n + i) = b(subset[i]);

      Eigen::FullPivLU<Matrix> lu(K);
      if (lu.isInvertible()) {
        const Vector sol = lu.solve(rhs);
        const Vector x = sol.head(n);
        const Vector lam_subset = sol.tail(r);
        const bool dual_ok = (lam_subset.array() >= -kOracleTol).all();
        const bool primal_ok =
            ((A * x - b).array() <= kOracleTol).all();
        if (dual_ok && primal_ok) {
          OracleSolution out;
          out.x_star = x;
          out.lambda_star = Vector::Zero(p);
          for (int i = 0; i < r; ++i) {
            out.lambda_star(subset[i]) = std::max(lam_subset(i), 0.0);
          }
          out.active_set = subset;
          out.kkt_norm =
              kkt_residual(problem,
                           PrimalDualState(out.x_star, out.lambda_star), 1.0)
                  .total();
          return out;
        }
      }
      more = next_combination(subset, p);
    }
  }
  throw std::runtime_error("infeasible or degenerate inequality problem");
}

OracleSolution solve_oracle(const ConstrainedProblem& problem) {
  return problem.kind() == ConstraintKind::Equality
             ? solve_oracle_eq(problem)
             : solve_oracle_ineq(problem);
}

}  // namespace pdgo
