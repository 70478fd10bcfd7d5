#include "pdgo/problem_io.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pdgo {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::invalid_argument("matrix field must be an array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw std::invalid_argument("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("vector field must be an array");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

ConstrainedProblem problem_from_json(const Json& j) {
  for (const char* field : {"kind", "Q", "A", "b"}) {
    if (!j.contains(field)) {
      throw std::invalid_argument(std::string("problem JSON missing \"") +
                                  field + "\"");
    }
  }
  const ConstraintKind kind =
      constraint_kind_from_string(j.at("kind").get<std::string>());
  Matrix Q = matrix_from_json(j.at("Q"));
  Matrix A = matrix_from_json(j.at("A"));
  Vector b = vector_from_json(j.at("b"));

  double rho_lo, rho_hi;
  if (j.contains("rho_lo") && j.contains("rho_hi")) {
    rho_lo = j.at("rho_lo").get<double>();
    rho_hi = j.at("rho_hi").get<double>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
    rho_lo = j.value("rho_lo", es.eigenvalues().minCoeff());
    rho_hi = j.value("rho_hi", es.eigenvalues().maxCoeff());
  }
  double sigma_lo, sigma_hi;
  if (j.contains("sigma_lo") && j.contains("sigma_hi")) {
    sigma_lo = j.at("sigma_lo").get<double>();
    sigma_hi = j.at("sigma_hi").get<double>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A * A.transpose(),
                                             Eigen::EigenvaluesOnly);
    sigma_lo = j.value("sigma_lo", es.eigenvalues().minCoeff());
    sigma_hi = j.value("sigma_hi", es.eigenvalues().maxCoeff());
  }

  ConstrainedProblem problem(
      Objective(std::move(Q), rho_lo, rho_hi),
      ConstraintBlock(kind, std::move(A), std::move(b), sigma_lo, sigma_hi));
  ensure_valid(problem);
  return problem;
}

Json problem_to_json(const ConstrainedProblem& problem) {
  Json j;
  j["kind"] = to_string(problem.kind());
  j["Q"] = matrix_to_json(problem.objective.Q);
  j["A"] = matrix_to_json(problem.constraint.A);
  j["b"] = vector_to_json(problem.constraint.b);
  j["rho_lo"] = problem.objective.rho_lo;
  j["rho_hi"] = problem.objective.rho_hi;
  j["sigma_lo"] = problem.constraint.sigma_lo;
  j["sigma_hi"] = problem.constraint.sigma_hi;
  return j;
}

ConstrainedProblem load_problem(const std::string& path) {
  return problem_from_json(read_json(path));
}

void save_problem(const ConstrainedProblem& problem, const std::string& path) {
  write_json(problem_to_json(problem), path);
}

Json design_report_to_json(const StepDesignReport& report) {
  Json j;
  j["steps"] = {{"alpha", report.steps.alpha},
                {"beta", report.steps.beta},
                {"gamma", report.steps.gamma}};
  j["c"] = report.c;
  if (std::isfinite(report.c1)) {
    j["c1"] = report.c1;
    j["c2"] = report.c2;
    j["c3"] = report.c3;
    j["c4"] = report.c4;
  }
  j["feasible"] = report.feasible;
  j["margin"] = report.margin;
  if (!report.binding.empty()) j["binding"] = report.binding;
  return j;
}

Json certificate_to_json(const ContractionCertificate& cert) {
  Json j;
  j["M"] = matrix_to_json(cert.M);
  j["c"] = cert.c;
  j["tau"] = cert.tau;
  j["mu_max"] = cert.mu_max;
  j["verified"] = cert.verified;
  j["samples_checked"] = cert.samples_checked;
  j["rate_sigma_lo"] = cert.rate_sigma_lo;
  return j;
}

Json oracle_to_json(const OracleSolution& oracle) {
  Json j;
  j["x_star"] = vector_to_json(oracle.x_star);
  j["lambda_star"] = vector_to_json(oracle.lambda_star);
  j["active_set"] = oracle.active_set;
  j["kkt_norm"] = oracle.kkt_norm;
  return j;
}

void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open file for writing: " + path);
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("failed while writing: " + path);
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file for reading: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("cannot parse JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace pdgo
