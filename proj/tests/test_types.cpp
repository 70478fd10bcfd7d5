#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "pdgo/problem_io.hpp"
#include "pdgo/types.hpp"
#include "test_helpers.hpp"

using namespace pdgo;
using pdgo::testing::contains;
using pdgo::testing::make_problem;

TEST_CASE("validate_problem accepts an identity-like instance") {
  Matrix Q = 2.0 * Matrix::Identity(3, 3);
  Matrix A(1, 3);
  A << 1, 0, 0;
  Vector b(1);
  b << 1;
  ConstrainedProblem problem(Objective(Q, 2.0, 2.0),
                             ConstraintBlock(ConstraintKind::Equality, A, b,
                                             1.0, 1.0));
  CHECK(validate_problem(problem).empty());
  CHECK_NOTHROW(ensure_valid(problem));
}

TEST_CASE("validate_problem flags a rho_lo above the spectrum") {
  Matrix Q = Vector::LinSpaced(2, 1.0, 5.0).asDiagonal();
  Matrix A(1, 2);
  A << 1, 0;
  Vector b = Vector::Zero(1);
  ConstrainedProblem problem(Objective(Q, 2.0, 5.0),
                             ConstraintBlock(ConstraintKind::Equality, A, b,
                                             1.0, 1.0));
  const auto report = validate_problem(problem);
  CHECK(contains(report, "rho_lo exceeds min eigenvalue"));
  CHECK(contains(report, "1 < 2"));
  CHECK_THROWS_AS(ensure_valid(problem), std::invalid_argument);
}

TEST_CASE("validate_problem flags rank-deficient constraints") {
  Matrix A(2, 2);
  A << 1, 0, 2, 0;  // duplicate direction rows
  Vector b = Vector::Zero(2);
  ConstrainedProblem problem(
      Objective(Matrix::Identity(2, 2), 1.0, 1.0),
      ConstraintBlock(ConstraintKind::Equality, A, b, 1.0, 5.0));
  CHECK(contains(validate_problem(problem), "A not full row rank"));
}

TEST_CASE("validate_problem flags non-finite data first") {
  Matrix Q = Matrix::Identity(2, 2);
  Q(0, 1) = std::numeric_limits<double>::quiet_NaN();
  Matrix A(1, 2);
  A << 1, 0;
  ConstrainedProblem problem(
      Objective(Q, 1.0, 1.0),
      ConstraintBlock(ConstraintKind::Equality, A, Vector::Zero(1), 1.0, 1.0));
  const auto report = validate_problem(problem);
  REQUIRE(report.size() == 1);
  CHECK(report[0] == "non-finite data");
}

TEST_CASE("validate_problem is deterministic") {
  auto problem = make_problem(ConstraintKind::Inequality,
                              Matrix::Identity(4, 4),
                              Matrix::Random(2, 4), Vector::Random(2));
  CHECK(validate_problem(problem) == validate_problem(problem));
}

TEST_CASE("shape violations are rejected at construction") {
  CHECK_THROWS_AS(Objective(Matrix::Zero(2, 3), 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConstraintBlock(ConstraintKind::Equality, Matrix::Zero(2, 3),
                                  Vector::Zero(3), 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ConstrainedProblem(
          Objective(Matrix::Identity(2, 2), 1.0, 1.0),
          ConstraintBlock(ConstraintKind::Equality, Matrix::Zero(1, 3),
                          Vector::Zero(1), 1.0, 1.0)),
      std::invalid_argument);
}

TEST_CASE("step validation enforces positivity and the gamma floor") {
  CHECK_NOTHROW(validate_steps(StepConfig(0.1, 0.1, 1.0),
                               ConstraintKind::Equality));
  CHECK_THROWS_AS(validate_steps(StepConfig(0.0, 0.1, 1.0),
                                 ConstraintKind::Equality),
                  std::invalid_argument);
  // gamma >= 2*beta only binds for inequality problems
  CHECK_NOTHROW(validate_steps(StepConfig(0.1, 0.9, 1.0),
                               ConstraintKind::Equality));
  CHECK_THROWS_WITH_AS(validate_steps(StepConfig(0.1, 0.9, 1.0),
                                      ConstraintKind::Inequality),
                       "gamma >= 2*beta required", std::invalid_argument);
  CHECK_THROWS_AS(StepConfig(-0.1, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StepConfig(0.1, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("callback objectives replace the quadratic form") {
  Objective obj(Matrix::Identity(2, 2), 1.0, 3.0);
  CHECK(obj.is_quadratic());
  obj.value_fn = [](const Vector& x) { return x.squaredNorm(); };
  obj.gradient_fn = [](const Vector& x) { return Vector(2.0 * x); };
  CHECK_FALSE(obj.is_quadratic());
  const Vector x = (Vector(2) << 1, 2).finished();
  CHECK(obj.value(x) == doctest::Approx(5.0));
  CHECK(obj.gradient(x) == 2.0 * x);
}

TEST_CASE("stacking round-trips a state") {
  PrimalDualState s((Vector(2) << 1, 2).finished(),
                    (Vector(1) << 3).finished(), 7);
  const Vector xi = s.stacked();
  CHECK(xi.size() == 3);
  const PrimalDualState back = PrimalDualState::from_stacked(xi, 2, s.k);
  CHECK(back.x == s.x);
  CHECK(back.lambda == s.lambda);
  CHECK(back.k == 7);
}

TEST_CASE("problem JSON round-trips and computes omitted bounds") {
  NormalSampler sampler(42);
  auto problem = make_problem(ConstraintKind::Inequality,
                              testing::random_spd(sampler, 5, 2.0),
                              Matrix::Random(2, 5), Vector::Random(2));
  const Json j = problem_to_json(problem);
  const ConstrainedProblem back = problem_from_json(j);
  CHECK(back.objective.Q == problem.objective.Q);
  CHECK(back.constraint.A == problem.constraint.A);
  CHECK(back.constraint.b == problem.constraint.b);
  CHECK(back.objective.rho_lo == problem.objective.rho_lo);
  CHECK(back.constraint.sigma_hi == problem.constraint.sigma_hi);
  CHECK(back.kind() == ConstraintKind::Inequality);

  // omitted bounds are recomputed from the spectra
  Json stripped = j;
  stripped.erase("rho_lo");
  stripped.erase("rho_hi");
  stripped.erase("sigma_lo");
  stripped.erase("sigma_hi");
  const ConstrainedProblem computed = problem_from_json(stripped);
  CHECK(computed.objective.rho_lo ==
        doctest::Approx(problem.objective.rho_lo).epsilon(1e-12));
  CHECK(computed.constraint.sigma_lo ==
        doctest::Approx(problem.constraint.sigma_lo).epsilon(1e-12));
}

TEST_CASE("problem JSON loading rejects invalid instances") {
  Json j;
  j["kind"] = "equality";
  j["Q"] = {{1.0, 0.0}, {0.0, 5.0}};
  j["A"] = {{1.0, 0.0}};
  j["b"] = {0.0};
  j["rho_lo"] = 2.0;  // above the smallest eigenvalue
  j["rho_hi"] = 5.0;
  j["sigma_lo"] = 1.0;
  j["sigma_hi"] = 1.0;
  CHECK_THROWS_WITH_AS(problem_from_json(j),
                       doctest::Contains("rho_lo exceeds min eigenvalue"),
                       std::invalid_argument);
  j.erase("Q");
  CHECK_THROWS_AS(problem_from_json(j), std::invalid_argument);
}

TEST_CASE("problem files are written deterministically") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "pdgo_types_a.json").string();
  const std::string p2 = (dir / "pdgo_types_b.json").string();
  auto problem = make_problem(ConstraintKind::Equality,
                              Matrix::Identity(3, 3), Matrix::Random(1, 3),
                              Vector::Random(1));
  save_problem(problem, p1);
  save_problem(problem, p2);
  std::ifstream f1(p1), f2(p2);
  const std::string s1((std::istreambuf_iterator<char>(f1)), {});
  const std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}
