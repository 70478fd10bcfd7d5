#pragma once

#include <cstdint>
#include <vector>

#include "pdgo/types.hpp"

namespace pdgo {

/// Recipe for a random strongly convex QP instance: f(x) = 0.5 x'Qx with
/// Q = Q0'Q0 + shift*I for an n x n standard-normal Q0, a full-row-rank
/// standard-normal p x n constraint matrix A and standard-normal b. The
/// draw order (Q0 row-major, then A row-major with rejection, then b) and
/// the SplitMix64/Box-Muller sampling scheme are fixed, so instances are
/// deterministic in the seed.
struct GeneratorSpec {
  int n = 0;
  int p = 0;
  ConstraintKind kind = ConstraintKind::Equality;
  std::uint64_t seed = 0;
  double shift = 5.0;
};

/// Reference solution produced by a direct solver, independent of the
/// iterative dynamics: for equality problems one saddle linear solve, for
/// inequality problems an active-set enumeration.
struct OracleSolution {
  Vector x_star;
  Vector lambda_star;
  std::vector<int> active_set;  // empty for equality problems
  double kkt_norm = 0.0;
};

/// Generates the instance described by spec; the curvature and constraint
/// spectrum bounds are set from the computed spectra, so the result always
/// passes validate_problem.
ConstrainedProblem generate(const GeneratorSpec& spec);

/// Solves [[Q, A'], [A, 0]] [x; lambda] = [0; b] directly. Throws
/// "degenerate" if the saddle matrix is singular (excluded by the problem
/// invariants).
OracleSolution solve_oracle_eq(const ConstrainedProblem& problem);

/// Brute-force active-set enumeration for p <= 20 ("enumeration too large"
/// beyond that): accepts the first subset, in cardinality-then-lexicographic
/// order, whose equality-restricted KKT solution has lambda_S >= -1e-10 and
/// Ax <= b + 1e-10. Throws "infeasible or degenerate" when no subset passes.
OracleSolution solve_oracle_ineq(const ConstrainedProblem& problem);

/// Dispatches on problem.kind().
OracleSolution solve_oracle(const ConstrainedProblem& problem);

}  // namespace pdgo
