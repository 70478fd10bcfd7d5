#pragma once

#include <string>
#include <vector>

#include "pdgo/problems.hpp"
#include "pdgo/rng.hpp"
#include "pdgo/types.hpp"

namespace pdgo::testing {

inline ConstrainedProblem make_problem(ConstraintKind kind, Matrix Q,
                                       Matrix A, Vector b) {
  Eigen::SelfAdjointEigenSolver<Matrix> eq(Q, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> ea(A * A.transpose(),
                                           Eigen::EigenvaluesOnly);
  return ConstrainedProblem(
      Objective(std::move(Q), eq.eigenvalues().minCoeff(),
                eq.eigenvalues().maxCoeff()),
      ConstraintBlock(kind, std::move(A), std::move(b),
                      ea.eigenvalues().minCoeff(),
                      ea.eigenvalues().maxCoeff()));
}

inline Vector random_vector(NormalSampler& sampler, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = sampler.next();
  return v;
}

inline Matrix random_matrix(NormalSampler& sampler, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = sampler.next();
  }
  return m;
}

inline Matrix random_spd(NormalSampler& sampler, int n, double shift = 0.5) {
  const Matrix g = random_matrix(sampler, n, n);
  return g.transpose() * g + shift * Matrix::Identity(n, n);
}

inline bool contains(const std::vector<std::string>& report,
                     const std::string& needle) {
  for (const auto& line : report) {
    if (line.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace pdgo::testing
