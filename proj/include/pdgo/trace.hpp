#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdgo/geometry.hpp"
#include "pdgo/types.hpp"

namespace pdgo {

enum class Termination { Converged, MaxIter, Diverged };

const char* to_string(Termination t);

/// One diagnostic record per iteration. dist_m is the metric distance to the
/// reference point and energy_ratio the ratio E(k+1)/E(k) of successive
/// energies; both are NaN when no reference metric was supplied, and the
/// ratio is NaN on the final row.
struct TraceRow {
  std::int64_t k = 0;
  double f = 0.0;
  double stat_norm = 0.0;
  double feas_norm = 0.0;
  double dist_m = 0.0;
  double energy_ratio = 0.0;
};

struct TrajectoryTrace {
  std::vector<TraceRow> rows;
  Termination termination = Termination::MaxIter;
  PrimalDualState final_state;
  StepConfig steps;
  double tol = 0.0;

  std::int64_t iterations() const {
    return rows.empty() ? 0 : rows.back().k - rows.front().k;
  }
};

struct RunOptions {
  std::int64_t max_iter = 100000;
  double tol = 1e-8;
};

/// Iterates the primal-dual step map from init, recording one row per
/// iteration, until the KKT residual total drops to options.tol (Converged),
/// the step budget is exhausted (MaxIter), or an iterate turns non-finite
/// (Diverged; the offending row is recorded rather than thrown). When a
/// metric and reference point are given, dist_m/energy_ratio are measured
/// against them.
TrajectoryTrace run(const ConstrainedProblem& problem, const StepConfig& steps,
                    const PrimalDualState& init, const RunOptions& options,
                    const MetricSpaceView* metric = nullptr,
                    const Vector* reference = nullptr);

struct RateFit {
  double tau_hat = 0.0;
  double c_hat = 0.0;
};

/// Least-squares fit of log dist_m against k on the rows after burn_in with
/// dist_m > 1e-14 (at least 10 such rows, else "trace too short"); tau_hat
/// is the fitted per-step factor and c_hat = max_k dist(k)/tau_hat^k the
/// prefactor of the geometric envelope.
RateFit fit_rate(const TrajectoryTrace& trace, std::int64_t burn_in = 10);

/// max_k dist(k) / (tau^k * dist(0)) for an externally supplied rate.
double empirical_prefactor(const TrajectoryTrace& trace, double tau);

/// CSV with header k,f,stat_norm,feas_norm,dist_M,energy_ratio; values are
/// written with 17 significant digits so parsing reproduces them exactly.
void write_trace_csv(const TrajectoryTrace& trace, const std::string& path);

/// Reads rows back from write_trace_csv output (termination metadata lives
/// in the sidecar JSON, not the CSV).
std::vector<TraceRow> read_trace_csv(const std::string& path);

}  // namespace pdgo
