// Acceptance suite: one line per criterion, nonzero exit when any fails.
//
// The benchmark scales follow the library's reference experiments: equality
// instances at n=6/p=3 and inequality instances at n=8/p=4 (oracle scale)
// and n=60/p=30 (large scale), seeds 1..10.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "pdgo/contraction.hpp"
#include "pdgo/dynamics.hpp"
#include "pdgo/lagrangian.hpp"
#include "pdgo/pipeline.hpp"
#include "pdgo/problems.hpp"
#include "pdgo/rng.hpp"
#include "pdgo/trace.hpp"

using namespace pdgo;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ConstrainedProblem instance(int n, int p, ConstraintKind kind,
                            std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.p = p;
  spec.kind = kind;
  spec.seed = seed;
  return generate(spec);
}

Vector random_vec(NormalSampler& sampler, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = sampler.next();
  return v;
}

// --- 1: equality pipeline at the n=6/p=3 scale, seeds 1..10 ---
void criterion_1() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10 && pass; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConstrainedProblem problem =
        instance(6, 3, ConstraintKind::Equality, seed);

    PipelineOptions options;  // designer + certificate + run, tol 1e-8, 1e5
    const PipelineResult result = run_pipeline(problem, options);

    const bool verified =
        result.certificate.has_value() && result.certificate->verified;
    const bool converged =
        result.trace.termination == Termination::Converged;
    const KktResidual final_res = kkt_residual(
        problem, result.trace.final_state, result.design.steps.gamma);
    bool ratios_ok = true;
    if (verified) {
      const double budget =
          result.certificate->tau * result.certificate->tau * (1.0 + 1e-10);
      for (const TraceRow& row : result.trace.rows) {
        if (std::isfinite(row.energy_ratio) && row.energy_ratio > budget) {
          ratios_ok = false;
        }
      }
    }
    const bool rate_ok = result.fit.has_value() && verified &&
                         result.fit->tau_hat <= result.certificate->tau;
    const double elapsed = seconds_since(t0);

    if (!(verified && converged && final_res.total() <= 1e-8 && ratios_ok &&
          rate_ok && elapsed < 2.0)) {
      pass = false;
      detail = "seed " + std::to_string(seed) + ": verified=" +
               (verified ? "1" : "0") + " converged=" + (converged ? "1" : "0") +
               " kkt=" + std::to_string(final_res.total()) +
               " ratios=" + (ratios_ok ? "1" : "0") +
               " rate=" + (rate_ok ? "1" : "0") +
               " time=" + std::to_string(elapsed) + "s";
    }
  }
  report(1, "equality pipeline: designed steps certify and converge", pass,
         detail);
}

// --- 2: inequality pipeline, oracle match at n=8/p=4 and convergence at
//        n=60/p=30 ---
void criterion_2() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10 && pass; ++seed) {
    const ConstrainedProblem problem =
        instance(8, 4, ConstraintKind::Inequality, seed);
    const OracleSolution oracle = solve_oracle_ineq(problem);

    PipelineOptions options;
    const StepConfig steps = heuristic_steps(problem, 1.0);
    options.alpha = steps.alpha;
    options.beta = steps.beta;
    options.gamma = steps.gamma;
    options.with_certificate = false;
    options.max_iter = 1000000;
    const PipelineResult result = run_pipeline(problem, options);

    const double x_err =
        (result.trace.final_state.x - oracle.x_star).cwiseAbs().maxCoeff();
    const double l_err = (result.trace.final_state.lambda - oracle.lambda_star)
                             .cwiseAbs()
                             .maxCoeff();
    if (!(result.trace.termination == Termination::Converged &&
          x_err <= 1e-6 && l_err <= 1e-6)) {
      pass = false;
      detail = "seed " + std::to_string(seed) +
               ": x_err=" + std::to_string(x_err) +
               " l_err=" + std::to_string(l_err);
    }
  }
  for (std::uint64_t seed = 1; seed <= 3 && pass; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConstrainedProblem problem =
        instance(60, 30, ConstraintKind::Inequality, seed);
    PipelineOptions options;
    const StepConfig steps = heuristic_steps(problem, 1.0);
    options.alpha = steps.alpha;
    options.beta = steps.beta;
    options.gamma = steps.gamma;
    options.with_certificate = false;
    options.max_iter = 1000000;
    const PipelineResult result = run_pipeline(problem, options);
    const KktResidual final_res =
        kkt_residual(problem, result.trace.final_state, steps.gamma);
    const double elapsed = seconds_since(t0);
    if (!(result.trace.termination == Termination::Converged &&
          final_res.total() <= 1e-8 && elapsed < 30.0)) {
      pass = false;
      detail = "n=60 seed " + std::to_string(seed) +
               ": kkt=" + std::to_string(final_res.total()) +
               " time=" + std::to_string(elapsed) + "s";
    }
  }
  report(2, "inequality pipeline: oracle match and large-scale convergence",
         pass, detail);
}

// --- 3: gradients against central finite differences ---
void criterion_3() {
  constexpr double kH = 1e-6;
  constexpr double kKinkBand = 1e-4;
  bool pass = true;
  std::string detail;

  auto fd_check = [&](const ConstrainedProblem& problem, double gamma,
                      NormalSampler& sampler) {
    const int n = problem.n();
    const int p = problem.p();
    int points = 0;
    while (points < 100) {
      const Vector x = random_vec(sampler, n);
      const Vector lam = random_vec(sampler, p);
      if (problem.kind() == ConstraintKind::Inequality) {
        const Vector bracket =
            gamma * (problem.constraint.A * x - problem.constraint.b) + lam;
        if (bracket.cwiseAbs().minCoeff() <= kKinkBand) continue;
      }
      ++points;
      const PrimalDualState state(x, lam);
      const GradientPair g =
          problem.kind() == ConstraintKind::Equality
              ? grad_lagrangian_eq(problem, state)
              : grad_aug_lagrangian(problem, state, gamma);
      auto value = [&](const Vector& xx, const Vector& ll) {
        const PrimalDualState s(xx, ll);
        return problem.kind() == ConstraintKind::Equality
                   ? lagrangian_eq_value(problem, s)
                   : aug_lagrangian_value(problem, s, gamma);
      };
      Vector gx(n), gl(p);
      for (int i = 0; i < n; ++i) {
        Vector hi = x, lo = x;
        hi(i) += kH;
        lo(i) -= kH;
        gx(i) = (value(hi, lam) - value(lo, lam)) / (2.0 * kH);
      }
      for (int i = 0; i < p; ++i) {
        Vector hi = lam, lo = lam;
        hi(i) += kH;
        lo(i) -= kH;
        gl(i) = (value(x, hi) - value(x, lo)) / (2.0 * kH);
      }
      const double ex = (g.x - gx).norm() / std::max(1.0, g.x.norm());
      const double el = (g.lambda - gl).norm() / std::max(1.0, g.lambda.norm());
      if (ex > 1e-6 || el > 1e-6) {
        pass = false;
        detail = "rel errors " + std::to_string(ex) + ", " + std::to_string(el);
        return;
      }
    }
  };

  for (std::uint64_t seed = 1; seed <= 5 && pass; ++seed) {
    NormalSampler sampler(1000 + seed);
    fd_check(instance(6, 3, ConstraintKind::Equality, seed), 1.0, sampler);
  }
  for (std::uint64_t seed = 1; seed <= 5 && pass; ++seed) {
    NormalSampler sampler(2000 + seed);
    fd_check(instance(8, 4, ConstraintKind::Inequality, seed), 1.7, sampler);
  }
  report(3, "gradients match central finite differences", pass, detail);
}

// --- 4: secant linearization identity on inequality instances ---
void criterion_4() {
  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5 && pass; ++seed) {
    const ConstrainedProblem problem =
        instance(8, 4, ConstraintKind::Inequality, seed);
    const StepDesignReport design = design_steps_ineq(problem, 1.0);
    const StepConfig steps =
        design.feasible ? design.steps : StepConfig(0.01, 0.02, 1.0);

    NormalSampler sampler(3000 + seed);
    for (int pair = 0; pair < 100; ++pair) {
      const PrimalDualState s(random_vec(sampler, 8), random_vec(sampler, 4));
      const PrimalDualState ref(random_vec(sampler, 8),
                                random_vec(sampler, 4));
      const Vector psi = compute_psi(problem, s, ref, steps.gamma);
      if ((psi.array() < 0.0).any() || (psi.array() > 1.0).any()) {
        pass = false;
        detail = "psi out of range";
        break;
      }
      const JacobianTheta jt = assemble_theta(problem, steps, psi);
      const Vector lhs = step_ineq(problem, s, steps).stacked() -
                         step_ineq(problem, ref, steps).stacked();
      const Vector rhs = jt.theta * (s.stacked() - ref.stacked());
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  if (pass && worst > 1e-10) {
    pass = false;
    detail = "max abs error " + std::to_string(worst);
  }
  report(4, "secant identity holds for the inequality step map", pass, detail);
}

// --- 5: equality certificates via the generalized eigenvalue bound ---
void criterion_5() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10 && pass; ++seed) {
    const ConstrainedProblem problem =
        instance(6, 3, ConstraintKind::Equality, seed);
    const StepDesignReport design = design_steps_eq(problem);
    const ContractionCertificate cert =
        certify(problem, design.steps, design.c);
    if (!(cert.mu_max <= cert.tau * cert.tau + 1e-12 && cert.verified)) {
      pass = false;
      detail = "seed " + std::to_string(seed) + ": mu_max=" +
               std::to_string(cert.mu_max) +
               " tau^2=" + std::to_string(cert.tau * cert.tau);
    }
  }
  if (pass) {
    const ConstrainedProblem problem =
        instance(6, 3, ConstraintKind::Equality, 1);
    const StepConfig oversized(5.0 / problem.objective.rho_hi, 0.1);
    const ContractionCertificate cert = certify(problem, oversized, 0.9);
    if (cert.verified) {
      pass = false;
      detail = "oversized steps unexpectedly certified";
    }
  }
  report(5, "equality certificates: designed pass, oversized fail", pass,
         detail);
}

// --- 6: dual-block bound over the psi family ---
void criterion_6() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10 && pass; ++seed) {
    const ConstrainedProblem problem =
        instance(8, 4, ConstraintKind::Inequality, seed);
    const StepDesignReport design = design_steps_ineq(problem, 1.0);
    if (!design.feasible) {
      pass = false;
      detail = "design infeasible at seed " + std::to_string(seed);
      break;
    }
    const DualBlockBoundCheck check =
        check_dual_block_bound(problem, design.steps, design.c);
    if (!(check.hypothesis_met && check.pass &&
          check.samples_checked == 16)) {
      pass = false;
      detail = "seed " + std::to_string(seed) +
               ": worst=" + std::to_string(check.worst_eigenvalue);
    }
  }
  if (pass) {
    // large scale: vertex enumeration is out of reach, 1000 random draws
    const ConstrainedProblem problem =
        instance(60, 30, ConstraintKind::Inequality, 1);
    const StepDesignReport design = design_steps_ineq(problem, 1.0);
    const DualBlockBoundCheck check =
        design.feasible
            ? check_dual_block_bound(problem, design.steps, design.c, 1000)
            : DualBlockBoundCheck{};
    if (!(design.feasible && check.hypothesis_met && check.pass &&
          check.samples_checked == 1002)) {
      pass = false;
      detail = "n=60: worst=" + std::to_string(check.worst_eigenvalue);
    }
  }
  report(6, "dual-block bound holds over the psi family", pass, detail);
}

// --- 7: metric distance against the path-integral quadrature ---
void criterion_7() {
  bool pass = true;
  std::string detail;
  NormalSampler sampler(777);
  for (int trial = 0; trial < 20 && pass; ++trial) {
    const int n = 2 + static_cast<int>(sampler.engine().next_u64() % 9);
    Matrix G(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) G(i, j) = sampler.next();
    }
    const Matrix M = G.transpose() * G + 0.3 * Matrix::Identity(n, n);
    const Vector s1 = random_vec(sampler, n);
    const Vector s2 = random_vec(sampler, n);
    const MetricSpaceView view(M);

    // quadrature of the constant-speed segment with 1e4 nodes
    const Vector d = s2 - s1;
    const double speed = std::sqrt(d.dot(M * d));
    double integral = 0.0;
    for (int i = 0; i < 10000; ++i) integral += speed / 10000.0;

    const double dist = view.distance(s1, s2);
    if (std::abs(dist - integral) > 1e-8 * std::max(1.0, integral)) {
      pass = false;
      detail = "distance " + std::to_string(dist) + " vs quadrature " +
               std::to_string(integral);
    }
  }
  report(7, "metric distance matches the segment quadrature", pass, detail);
}

// --- 8: gamma sweep at the n=60/p=30 scale ---
void criterion_8() {
  bool pass = true;
  std::string detail;
  const ConstrainedProblem problem =
      instance(60, 30, ConstraintKind::Inequality, 1);

  // gammas at {2, 4, 8} times the shared dual step (beta resolves to
  // min(gamma)/2 = 0.5)
  RunOptions options;
  options.max_iter = 1000000;
  const GammaSweepResult sweep = gamma_sweep(problem, {1.0, 2.0, 4.0},
                                             std::nullopt, std::nullopt,
                                             options);
  if (sweep.rows.size() != 3) {
    pass = false;
    detail = "expected three rows";
  }
  for (const auto& row : sweep.rows) {
    if (row.error || row.termination != Termination::Converged ||
        !row.tau.has_value() || !(*row.tau > 0.0 && *row.tau < 1.0)) {
      pass = false;
      detail = "gamma=" + std::to_string(row.gamma) + " " +
               (row.error ? *row.error : std::string("tau/termination"));
    }
  }
  if (pass) {
    const double beta = sweep.rows[0].run_steps.beta;
    for (std::size_t i = 0; i < 3; ++i) {
      const double expected = beta * static_cast<double>(2 << i);
      if (std::abs(sweep.rows[i].gamma - expected) > 1e-12) {
        pass = false;
        detail = "gamma grid is not {2,4,8} x beta";
      }
    }
  }
  report(8, "gamma sweep converges with a valid designed rate per gamma",
         pass, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
