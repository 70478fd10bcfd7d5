#include "pdgo/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pdgo/dynamics.hpp"
#include "pdgo/lagrangian.hpp"

namespace pdgo {

namespace {

constexpr double kRateFitFloor = 1e-14;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIter: return "max_iter";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

TrajectoryTrace run(const ConstrainedProblem& problem, const StepConfig& steps,
                    const PrimalDualState& init, const RunOptions& options,
                    const MetricSpaceView* metric, const Vector* reference) {
  validate_steps(steps, problem.kind());
  if (options.max_iter < 1) {
    throw std::invalid_argument("max_iter must be at least 1");
  }
  if (!(options.tol > 0.0)) {
    throw std::invalid_argument("tol must be positive");
  }
  if ((metric == nullptr) != (reference == nullptr)) {
    throw std::invalid_argument(
        "metric and reference must be supplied together");
  }

  TrajectoryTrace trace;
  trace.steps = steps;
  trace.tol = options.tol;
  trace.rows.reserve(256);

  PrimalDualState state = init;
  const std::int64_t k0 = init.k;

  auto record = [&](const PrimalDualState& s, double stat, double feas) {
    TraceRow row;
    row.k = s.k;
    row.f = problem.objective.value(s.x);
    row.stat_norm = stat;
    row.feas_norm = feas;
    row.dist_m =
        metric ? metric->distance(s.stacked(), *reference) : nan_value();
    row.energy_ratio = nan_value();
    if (!trace.rows.empty()) {
      TraceRow& prev = trace.rows.back();
      const double e_prev = prev.dist_m * prev.dist_m;
      if (std::isfinite(e_prev) && e_prev > 0.0) {
        prev.energy_ratio = (row.dist_m * row.dist_m) / e_prev;
      }
    }
    trace.rows.push_back(row);
  };

  while (true) {
    if (!state.all_finite()) {
      record(state, nan_value(), nan_value());
      trace.termination = Termination::Diverged;
      break;
    }
    const KktResidual res = kkt_residual(problem, state, steps.gamma);
    record(state, res.stationarity_norm, res.feasibility_norm);
    if (res.total() <= options.tol) {
      trace.termination = Termination::Converged;
      break;
    }
    if (state.k - k0 >= options.max_iter) {
      trace.termination = Termination::MaxIter;
      break;
    }
    state = step(problem, state, steps);
  }

  trace.final_state = std::move(state);
  return trace;
}

RateFit fit_rate(const TrajectoryTrace& trace, std::int64_t burn_in) {
  if (trace.rows.empty()) {
    throw std::invalid_argument("trace too short: no rows");
  }
  const std::int64_t k0 = trace.rows.front().k;

  // Least squares of log dist on iteration index, post burn-in.
  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  std::int64_t count = 0;
  for (const TraceRow& row : trace.rows) {
    if (row.k - k0 < burn_in) continue;
    if (!(row.dist_m > kRateFitFloor) || !std::isfinite(row.dist_m)) continue;
    const double kk = static_cast<double>(row.k - k0);
    const double y = std::log(row.dist_m);
    sk += kk;
    sy += y;
    skk += kk * kk;
    sky += kk * y;
    ++count;
  }
  if (count < 10) {
    throw std::invalid_argument("trace too short: need at least 10 usable "
                                "post-burn-in rows");
  }
  const double denom = count * skk - sk * sk;
  if (denom == 0.0) {
    throw std::invalid_argument("trace too short: degenerate fit");
  }
  const double slope = (count * sky - sk * sy) / denom;

  RateFit fit;
  fit.tau_hat = std::exp(slope);
  // Absolute prefactor of the geometric envelope d(k) <= c_hat * tau_hat^k.
  fit.c_hat = 0.0;
  for (const TraceRow& row : trace.rows) {
    if (!std::isfinite(row.dist_m)) continue;
    const double k = static_cast<double>(row.k - k0);
    fit.c_hat = std::max(fit.c_hat, row.dist_m / std::pow(fit.tau_hat, k));
  }
  return fit;
}

double empirical_prefactor(const TrajectoryTrace& trace, double tau) {
  if (trace.rows.empty() || !(tau > 0.0)) return nan_value();
  const TraceRow& first = trace.rows.front();
  if (!(first.dist_m > 0.0) || !std::isfinite(first.dist_m)) {
    return nan_value();
  }
  double worst = 0.0;
  for (const TraceRow& row : trace.rows) {
    if (!std::isfinite(row.dist_m)) continue;
    const double k = static_cast<double>(row.k - first.k);
    const double bound = std::pow(tau, k) * first.dist_m;
    if (bound > 0.0) worst = std::max(worst, row.dist_m / bound);
  }
  return worst;
}

void write_trace_csv(const TrajectoryTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open trace file for writing: " + path);
  }
  out << "k,f,stat_norm,feas_norm,dist_M,energy_ratio\n";
  char buf[512];
  for (const TraceRow& row : trace.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%lld,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(row.k), row.f, row.stat_norm,
                  row.feas_norm, row.dist_m, row.energy_ratio);
    out << buf;
  }
  if (!out) {
    throw std::runtime_error("failed while writing trace file: " + path);
  }
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file for reading: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace file is empty: " + path);
  }
  if (line.rfind("k,f,stat_norm,feas_norm,dist_M,energy_ratio", 0) != 0) {
    throw std::runtime_error("trace file missing header row: " + path);
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    TraceRow row;
    double* doubles[] = {&row.f, &row.stat_norm, &row.feas_norm, &row.dist_m,
                         &row.energy_ratio};
    if (!std::getline(ls, field, ',')) {
      throw std::runtime_error("malformed trace row: " + line);
    }
    row.k = std::stoll(field);
    for (double* target : doubles) {
      if (!std::getline(ls, field, ',')) {
        throw std::runtime_error("malformed trace row: " + line);
      }
      *target = std::strtod(field.c_str(), nullptr);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pdgo
