#include "pdgo/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pdgo {

const char* to_string(ConstraintKind kind) {
  return kind == ConstraintKind::Equality ? "equality" : "inequality";
}

ConstraintKind constraint_kind_from_string(const std::string& s) {
  if (s == "equality") return ConstraintKind::Equality;
  if (s == "inequality") return ConstraintKind::Inequality;
  throw std::invalid_argument("unknown constraint kind: \"" + s + "\"");
}

Objective::Objective(Matrix Q_in, double rho_lo_in, double rho_hi_in)
    : Q(std::move(Q_in)), rho_lo(rho_lo_in), rho_hi(rho_hi_in) {
  if (Q.rows() != Q.cols()) {
    throw std::invalid_argument("shape: Q must be square");
  }
}

double Objective::value(const Vector& x) const {
  if (value_fn) return value_fn(x);
  if (x.size() != Q.rows()) {
    throw std::invalid_argument("shape: x does not match objective dimension");
  }
  return 0.5 * x.dot(Q * x);
}

Vector Objective::gradient(const Vector& x) const {
  if (gradient_fn) return gradient_fn(x);
  if (x.size() != Q.rows()) {
    throw std::invalid_argument("shape: x does not match objective dimension");
  }
  return Q * x;
}

ConstraintBlock::ConstraintBlock(ConstraintKind kind_in, Matrix A_in,
                                 Vector b_in, double sigma_lo_in,
                                 double sigma_hi_in)
    : kind(kind_in),
      A(std::move(A_in)),
      b(std::move(b_in)),
      sigma_lo(sigma_lo_in),
      sigma_hi(sigma_hi_in) {
  if (A.rows() != b.size()) {
    throw std::invalid_argument("shape: A row count does not match b");
  }
}

ConstrainedProblem::ConstrainedProblem(Objective obj, ConstraintBlock con)
    : objective(std::move(obj)), constraint(std::move(con)) {
  if (constraint.cols() != objective.dim()) {
    throw std::invalid_argument(
        "shape: constraint column count does not match objective dimension");
  }
}

Vector PrimalDualState::stacked() const {
  Vector xi(x.size() + lambda.size());
  xi << x, lambda;
  return xi;
}

PrimalDualState PrimalDualState::from_stacked(const Vector& xi, int n,
                                              std::int64_t k) {
  if (xi.size() < n) {
    throw std::invalid_argument("shape: stacked vector shorter than n");
  }
  return PrimalDualState(xi.head(n), xi.tail(xi.size() - n), k);
}

bool PrimalDualState::all_finite() const {
  return x.allFinite() && lambda.allFinite();
}

StepConfig::StepConfig(double alpha_in, double beta_in, double gamma_in)
    : alpha(alpha_in), beta(beta_in), gamma(gamma_in) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw std::invalid_argument("step sizes must be finite and nonnegative");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and positive");
  }
}

void validate_steps(const StepConfig& steps, ConstraintKind kind) {
  if (!(steps.alpha > 0.0)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (!(steps.beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
  if (!(steps.gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }
  if (kind == ConstraintKind::Inequality && steps.gamma < 2.0 * steps.beta) {
    throw std::invalid_argument("gamma >= 2*beta required");
  }
}

namespace {

bool matrix_finite(const Matrix& m) { return m.allFinite(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> validate_problem(const ConstrainedProblem& problem) {
  std::vector<std::string> report;
  const Objective& obj = problem.objective;
  const ConstraintBlock& con = problem.constraint;

  if (!matrix_finite(obj.Q) || !matrix_finite(con.A) || !con.b.allFinite() ||
      !std::isfinite(obj.rho_lo) || !std::isfinite(obj.rho_hi) ||
      !std::isfinite(con.sigma_lo) || !std::isfinite(con.sigma_hi)) {
    report.push_back("non-finite data");
    return report;
  }

  if (obj.Q.rows() != obj.Q.cols()) {
    report.push_back("shape: Q must be square");
    return report;
  }
  if (con.A.cols() != obj.Q.rows()) {
    report.push_back("shape: A column count does not match objective dimension");
    return report;
  }
  if (con.A.rows() != con.b.size()) {
    report.push_back("shape: A row count does not match b");
    return report;
  }
  if (con.A.rows() < 1) {
    report.push_back("constraint block must have at least one row");
  }

  if (!(obj.rho_lo > 0.0)) {
    report.push_back("rho_lo must be positive (got " + fmt(obj.rho_lo) + ")");
  }
  if (obj.rho_lo > obj.rho_hi) {
    report.push_back("rho_lo exceeds rho_hi (" + fmt(obj.rho_lo) + " > " +
                     fmt(obj.rho_hi) + ")");
  }
  if (!(con.sigma_lo > 0.0)) {
    report.push_back("sigma_lo must be positive (got " + fmt(con.sigma_lo) +
                     ")");
  }
  if (con.sigma_lo > con.sigma_hi) {
    report.push_back("sigma_lo exceeds sigma_hi (" + fmt(con.sigma_lo) +
                     " > " + fmt(con.sigma_hi) + ")");
  }

  // Curvature bounds against the actual spectrum (quadratic objective only;
  // callback objectives carry their declared bounds).
  if (obj.is_quadratic() && obj.Q.rows() > 0) {
    const Matrix Qs = 0.5 * (obj.Q + obj.Q.transpose());
    if ((obj.Q - Qs).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, obj.Q.cwiseAbs().maxCoeff())) {
      report.push_back("Q is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(Qs, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double tol = 1e-9 * std::max(1.0, std::abs(hi));
    if (lo < obj.rho_lo - tol) {
      report.push_back("rho_lo exceeds min eigenvalue (" + fmt(lo) + " < " +
                       fmt(obj.rho_lo) + ")");
    }
    if (hi > obj.rho_hi + tol) {
      report.push_back("rho_hi below max eigenvalue (" + fmt(hi) + " > " +
                       fmt(obj.rho_hi) + ")");
    }
  }

  if (con.A.rows() > 0 && con.A.cols() > 0) {
    Eigen::JacobiSVD<Matrix> svd(con.A);
    const Vector sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (sv.size() < con.A.rows() ||
        sv(sv.size() - 1) <= kRankTolerance * std::max(smax, 1e-300)) {
      report.push_back("A not full row rank");
    } else {
      // Bounds on the nonzero constraint spectrum, i.e. on eig(AA').
      const double lo = sv(sv.size() - 1) * sv(sv.size() - 1);
      const double hi = smax * smax;
      const double tol = 1e-9 * std::max(1.0, hi);
      if (lo < con.sigma_lo - tol) {
        report.push_back("sigma_lo exceeds min eigenvalue of AA' (" +
                         fmt(lo) + " < " + fmt(con.sigma_lo) + ")");
      }
      if (hi > con.sigma_hi + tol) {
        report.push_back("sigma_hi below max eigenvalue of AA' (" + fmt(hi) +
                         " > " + fmt(con.sigma_hi) + ")");
      }
    }
  }

  return report;
}

void ensure_valid(const ConstrainedProblem& problem) {
  const auto report = validate_problem(problem);
  if (report.empty()) return;
  std::string msg = "invalid problem:";
  for (const auto& r : report) msg += "\n  - " + r;
  throw std::invalid_argument(msg);
}

}  // namespace pdgo
