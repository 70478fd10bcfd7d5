#include "pdgo/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <sstream>
#include <stdexcept>

namespace pdgo {

MetricSpaceView::MetricSpaceView(Matrix M) : M_(std::move(M)) {
  if (M_.rows() != M_.cols()) {
    throw std::invalid_argument("shape: metric must be square");
  }
  if (!M_.allFinite()) {
    throw std::invalid_argument("non-finite data in metric");
  }
  const double asym = (M_ - M_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, M_.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("metric not symmetric");
  }

  Eigen::LLT<Matrix> llt(M_);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(M_, Eigen::EigenvaluesOnly);
    std::ostringstream os;
    os << "metric indefinite (min eigenvalue " << es.eigenvalues().minCoeff()
       << ")";
    throw std::invalid_argument(os.str());
  }
  L_ = llt.matrixL();
}

double MetricSpaceView::norm(const Vector& v) const {
  if (v.size() != M_.rows()) {
    throw std::invalid_argument("shape: vector does not match metric");
  }
  return (L_.transpose() * v).norm();
}

double MetricSpaceView::distance(const Vector& s1, const Vector& s2) const {
  if (s1.size() != s2.size()) {
    throw std::invalid_argument("shape: points must have equal dimension");
  }
  return norm(s1 - s2);
}

double MetricSpaceView::energy(const Vector& s1, const Vector& s2) const {
  const double d = distance(s1, s2);
  return d * d;
}

}  // namespace pdgo
