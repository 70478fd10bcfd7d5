#pragma once

#include "pdgo/types.hpp"

namespace pdgo {

/// Constant-metric Riemannian geometry: distance and energy induced by a
/// symmetric positive definite matrix M. With a constant metric the geodesic
/// between two points is the straight segment, so the distance reduces to the
/// M-weighted norm of the difference; the Cholesky factor of M is cached so
/// that ||v||_M = ||L'v||_2.
class MetricSpaceView {
 public:
  /// Throws std::invalid_argument("metric indefinite ...") if M is not
  /// symmetric positive definite.
  explicit MetricSpaceView(Matrix M);

  const Matrix& metric() const { return M_; }
  const Matrix& cholesky_lower() const { return L_; }
  int dim() const { return static_cast<int>(M_.rows()); }

  double norm(const Vector& v) const;
  double distance(const Vector& s1, const Vector& s2) const;
  double energy(const Vector& s1, const Vector& s2) const;

 private:
  Matrix M_;
  Matrix L_;  // lower-triangular, L L' = M
};

}  // namespace pdgo
