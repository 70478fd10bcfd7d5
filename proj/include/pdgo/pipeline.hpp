#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdgo/contraction.hpp"
#include "pdgo/problems.hpp"
#include "pdgo/trace.hpp"
#include "pdgo/types.hpp"

namespace pdgo {

/// Thrown when the requested step design cannot satisfy its hypotheses;
/// binding names the constraint that blocks it.
class DesignInfeasibleError : public std::runtime_error {
 public:
  DesignInfeasibleError(const std::string& binding_in, const std::string& what)
      : std::runtime_error(what), binding(binding_in) {}
  std::string binding;
};

struct PipelineOptions {
  std::optional<double> alpha;  // both omitted -> step designer
  std::optional<double> beta;
  double gamma = 1.0;
  double target_fraction = 0.9;
  std::int64_t max_iter = 100000;
  double tol = 1e-8;
  std::int64_t psi_samples = 1000;
  bool with_certificate = true;
  std::optional<PrimalDualState> init;  // default: zero state
};

struct PipelineResult {
  StepDesignReport design;
  std::optional<ContractionCertificate> certificate;
  std::optional<OracleSolution> oracle;
  TrajectoryTrace trace;
  std::optional<RateFit> fit;
  std::optional<double> empirical_c;  // prefactor at the certificate rate
};

/// End-to-end solve: resolve step sizes (designer unless alpha/beta given),
/// certify the contraction when possible, attach the oracle reference and
/// metric, run the trajectory and fit the observed rate. Throws
/// DesignInfeasibleError when the designer cannot find steps or explicitly
/// given steps violate gamma >= 2*beta.
PipelineResult run_pipeline(const ConstrainedProblem& problem,
                            const PipelineOptions& options);

/// Uncertified step sizes scaled from the problem spectra, for runs where
/// observable progress matters more than a certified rate:
/// alpha = 0.9/(rho_hi + gamma*sigma_hi), beta = gamma/2.
StepConfig heuristic_steps(const ConstrainedProblem& problem, double gamma);

struct GammaSweepRow {
  double gamma = 0.0;
  StepDesignReport design;           // designer output at this gamma
  std::optional<double> tau;         // designed rate when feasible
  StepConfig run_steps;
  Termination termination = Termination::MaxIter;
  std::int64_t iterations = 0;
  std::optional<double> tau_hat;
  std::optional<std::string> error;  // per-gamma failure, partial results kept
};

struct GammaSweepResult {
  std::vector<GammaSweepRow> rows;
  std::vector<TrajectoryTrace> traces;  // aligned with rows; may be empty on error
};

/// Runs one trajectory per gamma from a common initial state with shared
/// run steps (alpha/beta resolved once: beta = min(gamma)/2 and
/// alpha = 0.9/(rho_hi + max(gamma)*sigma_hi) unless given), and reports the
/// per-gamma designed rate next to the fitted one. Gammas must be nonempty.
GammaSweepResult gamma_sweep(const ConstrainedProblem& problem,
                             const std::vector<double>& gammas,
                             std::optional<double> alpha,
                             std::optional<double> beta,
                             const RunOptions& options,
                             std::optional<PrimalDualState> init = {});

}  // namespace pdgo
