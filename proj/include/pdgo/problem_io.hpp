#pragma once

#include <json.hpp>

#include <string>

#include "pdgo/contraction.hpp"
#include "pdgo/problems.hpp"
#include "pdgo/types.hpp"

namespace pdgo {

using Json = nlohmann::json;

/// Problem schema:
///   {"kind": "equality"|"inequality", "Q": [[...]], "A": [[...]], "b": [...],
///    "rho_lo": x?, "rho_hi": x?, "sigma_lo": x?, "sigma_hi": x?}
/// The four bounds are optional; omitted ones are computed from the spectra
/// of Q and AA'. Loading validates the problem and throws on violations.
ConstrainedProblem problem_from_json(const Json& j);
Json problem_to_json(const ConstrainedProblem& problem);

ConstrainedProblem load_problem(const std::string& path);
void save_problem(const ConstrainedProblem& problem, const std::string& path);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json design_report_to_json(const StepDesignReport& report);
Json certificate_to_json(const ContractionCertificate& cert);
Json oracle_to_json(const OracleSolution& oracle);

void write_json(const Json& j, const std::string& path);
Json read_json(const std::string& path);

}  // namespace pdgo
