#include "pdgo/contraction.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "pdgo/parallel.hpp"
#include "pdgo/rng.hpp"

namespace pdgo {

namespace {

constexpr double kGridLo = 1e-8;
constexpr double kGridHi = 1.0;
constexpr int kGridPoints = 64;
constexpr int kVertexLimit = 12;  // 2^p vertex enumeration cap
constexpr std::uint64_t kPsiSampleSeed = 0x9D60;

struct IneqConstants {
  double c1, c2, c3, c4;
  double max() const { return std::max({c1, c2, c3, c4}); }
  int argmax() const {
    const double m = max();
    if (c1 == m) return 1;
    if (c2 == m) return 2;
    if (c3 == m) return 3;
    return 4;
  }
};

IneqConstants ineq_constants(const ConstrainedProblem& problem, double alpha,
                             double beta, double gamma) {
  const double rho_lo = problem.objective.rho_lo;
  const double rho_hi = problem.objective.rho_hi;
  const double sig_lo = problem.constraint.sigma_lo;
  const double sig_hi = problem.constraint.sigma_hi;
  const double ratio = sig_hi / sig_lo;

  IneqConstants c;
  c.c1 = std::max(alpha * rho_hi, alpha * gamma * sig_hi) *
         std::max(2.0, ratio);
  c.c2 = 2.0 * beta * ratio * std::max(2.0, ratio);
  c.c3 = (beta * sig_hi / rho_lo) *
         std::max({2.0, 2.0 / (alpha * gamma * sig_lo),
                   sig_hi / (alpha * gamma * sig_lo * sig_lo)});
  c.c4 = 2.0 * (beta * sig_hi * sig_hi / (gamma * sig_lo * sig_lo)) *
         std::max(ratio, alpha * gamma * sig_hi);
  return c;
}

double grid_point(double lo, double hi, int i, int k) {
  const double t = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1);
  return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
}

/// Appends every 0/1 vertex of [0,1]^p to out.
void append_psi_vertices(int p, std::vector<Vector>& out) {
  const std::int64_t total = std::int64_t{1} << p;
  for (std::int64_t mask = 0; mask < total; ++mask) {
    Vector psi(p);
    for (int i = 0; i < p; ++i) psi(i) = (mask >> i) & 1 ? 1.0 : 0.0;
    out.push_back(std::move(psi));
  }
}

std::vector<Vector> psi_family(int p, std::int64_t psi_samples) {
  std::vector<Vector> family;
  if (p <= kVertexLimit) {
    family.reserve(std::size_t{1} << p);
    append_psi_vertices(p, family);
    return family;
  }
  family.reserve(static_cast<std::size_t>(psi_samples) + 2);
  family.push_back(Vector::Zero(p));
  family.push_back(Vector::Ones(p));
  SplitMix64 rng(kPsiSampleSeed);
  for (std::int64_t s = 0; s < psi_samples; ++s) {
    Vector psi(p);
    for (int i = 0; i < p; ++i) psi(i) = rng.uniform();
    family.push_back(std::move(psi));
  }
  return family;
}

double max_over_psi(const std::vector<Vector>& family,
                    const std::function<double(const Vector&)>& eval) {
  std::vector<double> values(family.size());
  parallel_for(static_cast<std::int64_t>(family.size()),
               [&](std::int64_t i) { values[i] = eval(family[i]); });
  return *std::max_element(values.begin(), values.end());
}

}  // namespace

StepDesignReport design_steps_eq(const ConstrainedProblem& problem,
                                 double target_fraction) {
  if (problem.kind() != ConstraintKind::Equality) {
    throw std::invalid_argument("design_steps_eq requires an equality problem");
  }
  if (!(target_fraction > 0.0) || !(target_fraction < 1.0)) {
    throw std::invalid_argument(
        "target_fraction must lie strictly in (0,1); the boundary gives a "
        "unit rate");
  }
  const double rho_lo = problem.objective.rho_lo;
  const double rho_hi = problem.objective.rho_hi;
  const double sig_hi = problem.constraint.sigma_hi;

  StepDesignReport report;
  report.steps = StepConfig(target_fraction / (2.0 * rho_hi),
                            target_fraction * rho_lo / (2.0 * sig_hi), 1.0);
  const double bracket =
      std::max(report.steps.beta * sig_hi / rho_lo,
               report.steps.alpha * rho_hi);
  report.c = 2.0 * bracket;
  report.c1 = report.c2 = report.c3 = report.c4 =
      std::numeric_limits<double>::quiet_NaN();
  report.margin = 0.5 - bracket;
  report.feasible = report.margin > 0.0;
  return report;
}

StepDesignReport design_steps_ineq(const ConstrainedProblem& problem,
                                   double gamma, double target_fraction) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument(
        "design_steps_ineq requires an inequality problem");
  }
  if (!(target_fraction > 0.0) || !(target_fraction < 1.0)) {
    throw std::invalid_argument("target_fraction must lie strictly in (0,1)");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("gamma must be positive");
  }

  const double cap = target_fraction / 4.0;

  // Track the least-violating point so an infeasible search can name the
  // constraint that binds.
  double best_product = -1.0;
  double best_alpha = 0.0, best_beta = 0.0;
  double least_violation = std::numeric_limits<double>::infinity();
  std::string binding = "gamma >= 2*beta";

  auto scan = [&](double alo, double ahi, double blo, double bhi) {
    for (int i = 0; i < kGridPoints; ++i) {
      const double a = grid_point(alo, ahi, i, kGridPoints);
      for (int j = 0; j < kGridPoints; ++j) {
        const double b = grid_point(blo, bhi, j, kGridPoints);
        if (gamma < 2.0 * b) continue;
        const IneqConstants cs = ineq_constants(problem, a, b, gamma);
        const double m = cs.max();
        if (m <= cap) {
          if (a * b > best_product) {
            best_product = a * b;
            best_alpha = a;
            best_beta = b;
          }
        } else if (m < least_violation) {
          least_violation = m;
          binding = "c" + std::to_string(cs.argmax());
        }
      }
    }
  };

  scan(kGridLo, kGridHi, kGridLo, kGridHi);
  if (best_product > 0.0) {
    // One refinement pass around the best cell.
    const double cell = std::pow(kGridHi / kGridLo,
                                 1.0 / (kGridPoints - 1));
    scan(std::max(kGridLo, best_alpha / cell),
         std::min(kGridHi, best_alpha * cell),
         std::max(kGridLo, best_beta / cell),
         std::min(kGridHi, best_beta * cell));
  }

  StepDesignReport report;
  if (best_product <= 0.0) {
    report.steps = StepConfig(0.0, 0.0, gamma);
    report.c1 = report.c2 = report.c3 = report.c4 =
        std::numeric_limits<double>::quiet_NaN();
    report.feasible = false;
    report.margin = 0.25 - least_violation;
    report.binding = binding;
    return report;
  }

  report.steps = StepConfig(best_alpha, best_beta, gamma);
  const IneqConstants cs =
      ineq_constants(problem, best_alpha, best_beta, gamma);
  report.c1 = cs.c1;
  report.c2 = cs.c2;
  report.c3 = cs.c3;
  report.c4 = cs.c4;
  report.c = 4.0 * cs.max();
  report.margin = 0.25 - cs.max();
  report.feasible = report.margin > 0.0;
  return report;
}

StepDesignReport evaluate_design(const ConstrainedProblem& problem,
                                 const StepConfig& steps) {
  StepDesignReport report;
  report.steps = steps;
  if (problem.kind() == ConstraintKind::Equality) {
    const double bracket =
        std::max(steps.beta * problem.constraint.sigma_hi /
                     problem.objective.rho_lo,
                 steps.alpha * problem.objective.rho_hi);
    report.c = 2.0 * bracket;
    report.c1 = report.c2 = report.c3 = report.c4 =
        std::numeric_limits<double>::quiet_NaN();
    report.margin = 0.5 - bracket;
    report.feasible = report.margin > 0.0;
    if (!report.feasible) report.binding = "max{beta*sigma_hi/rho_lo, alpha*rho_hi} <= 1/2";
    return report;
  }

  if (steps.gamma < 2.0 * steps.beta) {
    report.c1 = report.c2 = report.c3 = report.c4 =
        std::numeric_limits<double>::quiet_NaN();
    report.feasible = false;
    report.margin = -std::numeric_limits<double>::infinity();
    report.binding = "gamma >= 2*beta";
    return report;
  }
  const IneqConstants cs =
      ineq_constants(problem, steps.alpha, steps.beta, steps.gamma);
  report.c1 = cs.c1;
  report.c2 = cs.c2;
  report.c3 = cs.c3;
  report.c4 = cs.c4;
  report.c = 4.0 * cs.max();
  report.margin = 0.25 - cs.max();
  report.feasible = report.margin > 0.0;
  if (!report.feasible) report.binding = "c" + std::to_string(cs.argmax());
  return report;
}

Matrix build_metric(const ConstrainedProblem& problem, const StepConfig& steps,
                    double c) {
  if (!(c > 0.0) || !(c < 1.0)) {
    throw std::invalid_argument("c must lie in (0,1)");
  }
  const int n = problem.n();
  const int p = problem.p();
  const Matrix& A = problem.constraint.A;

  Matrix M(n + p, n + p);
  M.topLeftCorner(n, n) = steps.beta * c * Matrix::Identity(n, n);
  M.topRightCorner(n, p) = steps.alpha * steps.beta * A.transpose();
  M.bottomLeftCorner(p, n) = steps.alpha * steps.beta * A;
  M.bottomRightCorner(p, p) = steps.alpha * c * Matrix::Identity(p, p);

  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    std::ostringstream os;
    os << "metric indefinite (min eigenvalue " << es.eigenvalues().minCoeff()
       << ")";
    throw std::invalid_argument(os.str());
  }
  return M;
}

double rate(const ConstrainedProblem& problem, const StepConfig& steps,
            double c) {
  if (!(c > 0.0) || !(c < 1.0)) {
    throw std::invalid_argument("rate undefined: c must lie in (0,1)");
  }
  const double radicand = 1.0 - (1.0 - c) / c * steps.alpha * steps.beta *
                                    problem.constraint.sigma_lo;
  if (!(radicand > 0.0) || radicand > 1.0) {
    std::ostringstream os;
    os << "rate undefined: radicand " << radicand << " outside (0,1]";
    throw std::invalid_argument(os.str());
  }
  return std::sqrt(radicand);
}

double contraction_factor(const Matrix& theta, const MetricSpaceView& view) {
  if (theta.rows() != theta.cols() || theta.rows() != view.dim()) {
    throw std::invalid_argument("shape: theta does not match metric");
  }
  const Matrix& M = view.metric();
  const Matrix S = theta.transpose() * M * theta;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(S, M,
                                                      Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("numerical failure in generalized eigensolve");
  }
  return es.eigenvalues().maxCoeff();
}

ContractionCertificate certify(const ConstrainedProblem& problem,
                               const StepConfig& steps, double c,
                               std::int64_t psi_samples) {
  if (!(steps.alpha > 0.0) || !(steps.beta > 0.0) || !(steps.gamma > 0.0)) {
    throw std::invalid_argument("certify requires positive step sizes");
  }
  ContractionCertificate cert;
  cert.M = build_metric(problem, steps, c);
  cert.c = c;
  cert.tau = rate(problem, steps, c);
  cert.rate_sigma_lo = problem.constraint.sigma_lo;
  const MetricSpaceView view(cert.M);

  if (problem.kind() == ConstraintKind::Equality) {
    const JacobianTheta jt = assemble_theta(problem, steps);
    cert.mu_max = contraction_factor(jt.theta, view);
    cert.samples_checked = 1;
  } else {
    const auto family = psi_family(problem.p(), psi_samples);
    cert.mu_max = max_over_psi(family, [&](const Vector& psi) {
      const JacobianTheta jt = assemble_theta(problem, steps, psi);
      return contraction_factor(jt.theta, view);
    });
    cert.samples_checked = static_cast<std::int64_t>(family.size());
  }
  cert.verified = cert.mu_max <= cert.tau * cert.tau + 1e-12;
  return cert;
}

Matrix assemble_dual_block(const ConstrainedProblem& problem,
                           const StepConfig& steps, double c,
                           const Vector& psi_diag) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument(
        "assemble_dual_block requires an inequality problem");
  }
  const int p = problem.p();
  if (psi_diag.size() != p) {
    throw std::invalid_argument("shape: psi vector must have length p");
  }
  if ((psi_diag.array() < 0.0).any() || (psi_diag.array() > 1.0).any()) {
    throw std::invalid_argument("psi range: entries must lie in [0,1]");
  }
  const double alpha = steps.alpha;
  const double beta = steps.beta;
  const double u = steps.beta / steps.gamma;
  const Matrix K = problem.constraint.A * problem.constraint.A.transpose();
  const Matrix P = Matrix(psi_diag.asDiagonal());
  const Matrix I = Matrix::Identity(p, p);

  return alpha * alpha * beta *
             ((c - 2.0 * u) * P * K * P - (1.0 - u) * (K * P + P * K)) +
         alpha * c * (u * u * (I - P) - 2.0 * u * I) * (I - P);
}

DualBlockBoundCheck check_dual_block_bound(const ConstrainedProblem& problem,
                                           const StepConfig& steps, double c,
                                           std::int64_t psi_samples) {
  if (problem.kind() != ConstraintKind::Inequality) {
    throw std::invalid_argument(
        "check_dual_block_bound requires an inequality problem");
  }
  validate_steps(steps, ConstraintKind::Inequality);

  DualBlockBoundCheck result;
  const double u = steps.beta / steps.gamma;
  const double shrink = (1.0 - u) * (1.0 - u);
  const double c_floor = 2.0 * steps.alpha * steps.beta * shrink *
                         problem.constraint.sigma_hi / (1.0 - shrink);
  if (steps.gamma < 2.0 * steps.beta) {
    result.hypothesis_note = "hypothesis unmet: gamma >= 2*beta";
    return result;
  }
  if (!(c_floor <= c && c <= 1.0)) {
    std::ostringstream os;
    os << "hypothesis unmet: c must lie in [" << c_floor << ", 1]";
    result.hypothesis_note = os.str();
    return result;
  }
  result.hypothesis_met = true;

  const Matrix K = problem.constraint.A * problem.constraint.A.transpose();
  const Matrix offset =
      0.5 * steps.alpha * steps.alpha * steps.beta * c * K;
  const auto family = psi_family(problem.p(), psi_samples);
  result.worst_eigenvalue = max_over_psi(family, [&](const Vector& psi) {
    const Matrix block = assemble_dual_block(problem, steps, c, psi) + offset;
    Eigen::SelfAdjointEigenSolver<Matrix> es(block, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("numerical failure in eigensolve");
    }
    return es.eigenvalues().maxCoeff();
  });
  result.samples_checked = static_cast<std::int64_t>(family.size());
  result.pass = result.worst_eigenvalue <= 1e-12;
  return result;
}

}  // namespace pdgo
