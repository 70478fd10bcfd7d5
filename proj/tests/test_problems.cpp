#include <doctest.h>

#include <algorithm>

#include "pdgo/dynamics.hpp"
#include "pdgo/lagrangian.hpp"
#include "pdgo/problems.hpp"
#include "test_helpers.hpp"

using namespace pdgo;
using pdgo::testing::make_problem;

TEST_CASE("generated objectives carry the diagonal shift") {
  GeneratorSpec spec;
  spec.n = 6;
  spec.p = 3;
  spec.kind = ConstraintKind::Equality;
  spec.seed = 1;
  const ConstrainedProblem problem = generate(spec);
  CHECK(problem.objective.rho_lo >= 5.0);
  CHECK(problem.n() == 6);
  CHECK(problem.p() == 3);
  CHECK(validate_problem(problem).empty());
}

TEST_CASE("generation is deterministic in the seed") {
  GeneratorSpec spec;
  spec.n = 8;
  spec.p = 4;
  spec.kind = ConstraintKind::Inequality;
  spec.seed = 123;
  const ConstrainedProblem a = generate(spec);
  const ConstrainedProblem b = generate(spec);
  CHECK(a.objective.Q == b.objective.Q);
  CHECK(a.constraint.A == b.constraint.A);
  CHECK(a.constraint.b == b.constraint.b);
  spec.seed = 124;
  const ConstrainedProblem c = generate(spec);
  CHECK(a.objective.Q != c.objective.Q);
}

TEST_CASE("benchmark-scale instances are well posed") {
  GeneratorSpec spec;
  spec.n = 60;
  spec.p = 30;
  spec.kind = ConstraintKind::Inequality;
  spec.seed = 7;
  const ConstrainedProblem problem = generate(spec);
  CHECK(problem.constraint.A.rows() == 30);
  CHECK(problem.constraint.A.cols() == 60);
  CHECK(validate_problem(problem).empty());
}

TEST_CASE("equality oracle on a hand-solvable instance") {
  Matrix A(1, 2);
  A << 1, 1;
  const auto problem =
      make_problem(ConstraintKind::Equality, Matrix::Identity(2, 2), A,
                   (Vector(1) << 2).finished());
  const OracleSolution oracle = solve_oracle_eq(problem);
  CHECK(oracle.x_star.isApprox((Vector(2) << 1, 1).finished(), 1e-12));
  CHECK(oracle.lambda_star(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(oracle.kkt_norm <= 1e-10);
}

TEST_CASE("equality oracle returns zero for b = 0") {
  Matrix A(1, 2);
  A << 1, 0;
  const auto problem = make_problem(ConstraintKind::Equality,
                                    Matrix::Identity(2, 2), A,
                                    Vector::Zero(1));
  const OracleSolution oracle = solve_oracle_eq(problem);
  CHECK(oracle.x_star.isZero(1e-14));
  CHECK(oracle.lambda_star.isZero(1e-14));
}

TEST_CASE("equality oracle back-substitutes into the saddle system") {
  GeneratorSpec spec;
  spec.n = 6;
  spec.p = 3;
  spec.kind = ConstraintKind::Equality;
  spec.seed = 17;
  const ConstrainedProblem problem = generate(spec);
  const OracleSolution oracle = solve_oracle_eq(problem);
  const Matrix& A = problem.constraint.A;
  const Vector stat = problem.objective.Q * oracle.x_star +
                      A.transpose() * oracle.lambda_star;
  const Vector feas = A * oracle.x_star - problem.constraint.b;
  CHECK(stat.norm() <= 1e-10);
  CHECK(feas.norm() <= 1e-10);
}

TEST_CASE("inequality oracle picks the empty set at an interior optimum") {
  GeneratorSpec spec;
  spec.n = 4;
  spec.p = 2;
  spec.kind = ConstraintKind::Inequality;
  spec.seed = 2;
  ConstrainedProblem problem = generate(spec);
  // the unconstrained minimizer of 0.5 x'Qx is the origin; keep it feasible
  problem = make_problem(ConstraintKind::Inequality, problem.objective.Q,
                         problem.constraint.A, Vector::Ones(2));
  const OracleSolution oracle = solve_oracle_ineq(problem);
  CHECK(oracle.active_set.empty());
  CHECK(oracle.x_star.isZero(1e-14));
  CHECK(oracle.lambda_star.isZero(1e-14));
}

TEST_CASE("inequality oracle on a single active constraint") {
  Matrix A(1, 2);
  A << 1, 0;
  const auto problem =
      make_problem(ConstraintKind::Inequality, Matrix::Identity(2, 2), A,
                   (Vector(1) << -1).finished());
  const OracleSolution oracle = solve_oracle_ineq(problem);
  CHECK(oracle.x_star.isApprox((Vector(2) << -1, 0).finished(), 1e-12));
  CHECK(oracle.lambda_star(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(oracle.active_set == std::vector<int>{0});
}

TEST_CASE("inequality oracle satisfies dual feasibility and slackness") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GeneratorSpec spec;
    spec.n = 8;
    spec.p = 4;
    spec.kind = ConstraintKind::Inequality;
    spec.seed = seed;
    const ConstrainedProblem problem = generate(spec);
    const OracleSolution oracle = solve_oracle_ineq(problem);
    CHECK(oracle.kkt_norm <= 1e-8);
    CHECK((oracle.lambda_star.array() >= 0.0).all());
    const Vector slack =
        problem.constraint.A * oracle.x_star - problem.constraint.b;
    CHECK((oracle.lambda_star.array() * slack.array()).cwiseAbs().maxCoeff() <=
          1e-8);
  }
}

TEST_CASE("enumeration is invariant to constraint row order") {
  GeneratorSpec spec;
  spec.n = 6;
  spec.p = 3;
  spec.kind = ConstraintKind::Inequality;
  spec.seed = 31;
  const ConstrainedProblem problem = generate(spec);
  const OracleSolution base = solve_oracle_ineq(problem);

  // reverse the rows
  Matrix A = problem.constraint.A.colwise().reverse();
  Vector b = problem.constraint.b.reverse();
  const auto permuted =
      make_problem(ConstraintKind::Inequality, problem.objective.Q, A, b);
  const OracleSolution reordered = solve_oracle_ineq(permuted);

  CHECK((base.x_star - reordered.x_star).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((base.lambda_star.reverse() - reordered.lambda_star)
            .cwiseAbs()
            .maxCoeff() <= 1e-9);
}

TEST_CASE("oracle solutions are fixed points of the step maps") {
  for (auto kind : {ConstraintKind::Equality, ConstraintKind::Inequality}) {
    GeneratorSpec spec;
    spec.n = 6;
    spec.p = 3;
    spec.kind = kind;
    spec.seed = 12;
    const ConstrainedProblem problem = generate(spec);
    const OracleSolution oracle = solve_oracle(problem);
    const PrimalDualState at(oracle.x_star, oracle.lambda_star);
    const PrimalDualState moved = step(problem, at, StepConfig(0.05, 0.05, 1.0));
    CHECK((moved.stacked() - at.stacked()).norm() <= 1e-9);
  }
}

TEST_CASE("enumeration bails out beyond its subset budget") {
  GeneratorSpec spec;
  spec.n = 60;
  spec.p = 30;
  spec.kind = ConstraintKind::Inequality;
  spec.seed = 7;
  const ConstrainedProblem problem = generate(spec);
  CHECK_THROWS_WITH_AS(solve_oracle_ineq(problem),
                       doctest::Contains("enumeration too large"),
                       std::invalid_argument);
}

TEST_CASE("the iterative limit agrees with the enumeration oracle") {
  GeneratorSpec spec;
  spec.n = 8;
  spec.p = 4;
  spec.kind = ConstraintKind::Inequality;
  spec.seed = 22;
  const ConstrainedProblem problem = generate(spec);
  const OracleSolution oracle = solve_oracle_ineq(problem);

  const double gamma = 1.0;
  const StepConfig steps(0.9 / (problem.objective.rho_hi +
                                gamma * problem.constraint.sigma_hi),
                         gamma / 2.0, gamma);
  PrimalDualState state(Vector::Zero(8), Vector::Zero(4));
  for (int k = 0; k < 30000; ++k) state = step_ineq(problem, state, steps);
  CHECK((state.x - oracle.x_star).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((state.lambda - oracle.lambda_star).cwiseAbs().maxCoeff() <= 1e-6);
}
