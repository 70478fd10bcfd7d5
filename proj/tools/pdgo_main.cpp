// Command-line driver: generate benchmark instances, design/certify step
// sizes, run primal-dual trajectories and sweep the penalty parameter.
//
// Exit codes: 0 success, 1 usage or data error (including runs that stop at
// the iteration budget or fail certification), 2 infeasible step design,
// 3 divergence.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pdgo/pipeline.hpp"
#include "pdgo/problem_io.hpp"

namespace {

constexpr const char* kVersion = "pdgo 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDiverged = 3;

using pdgo::Json;

void write_manifest(const std::string& subcommand, const Json& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    const Json& seed, const std::string& path) {
  Json manifest;
  manifest["subcommand"] = subcommand;
  manifest["config"] = config;
  manifest["inputs"] = inputs;
  manifest["outputs"] = outputs;
  manifest["seed"] = seed;
  manifest["version"] = kVersion;
  pdgo::write_json(manifest, path);
}

struct GenerateArgs {
  int n = 6;
  int p = 3;
  std::string kind = "equality";
  std::uint64_t seed = 1;
  double shift = 5.0;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  pdgo::GeneratorSpec spec;
  spec.n = args.n;
  spec.p = args.p;
  spec.kind = pdgo::constraint_kind_from_string(args.kind);
  spec.seed = args.seed;
  spec.shift = args.shift;

  const pdgo::ConstrainedProblem problem = pdgo::generate(spec);
  pdgo::save_problem(problem, args.out);

  Json config{{"n", args.n},       {"p", args.p},
              {"kind", args.kind}, {"seed", args.seed},
              {"shift", args.shift}, {"out", args.out}};
  write_manifest("generate", config, {}, {args.out}, args.seed,
                 args.out + ".manifest.json");
  std::cout << "wrote " << args.out << " (n=" << args.n << ", p=" << args.p
            << ", " << args.kind << ", seed=" << args.seed << ")\n";
  return kExitOk;
}

struct RunArgs {
  std::string problem_path;
  std::optional<double> alpha, beta;
  double gamma = 1.0;
  double target_fraction = 0.9;
  std::int64_t max_iter = 100000;
  double tol = 1e-8;
  std::int64_t psi_samples = 1000;
  bool no_certify = false;
  std::string trace_out;
  std::string cert_out;
};

int cmd_run(const RunArgs& args) {
  const pdgo::ConstrainedProblem problem =
      pdgo::load_problem(args.problem_path);

  pdgo::PipelineOptions options;
  options.alpha = args.alpha;
  options.beta = args.beta;
  options.gamma = args.gamma;
  options.target_fraction = args.target_fraction;
  options.max_iter = args.max_iter;
  options.tol = args.tol;
  options.psi_samples = args.psi_samples;
  options.with_certificate = !args.no_certify;

  const pdgo::PipelineResult result = pdgo::run_pipeline(problem, options);
  const pdgo::StepConfig& steps = result.design.steps;

  std::cout << "steps: alpha=" << steps.alpha << " beta=" << steps.beta
            << " gamma=" << steps.gamma << " c=" << result.design.c << "\n";
  if (result.certificate) {
    std::cout << "certificate: tau=" << result.certificate->tau
              << " mu_max=" << result.certificate->mu_max << " verified="
              << (result.certificate->verified ? "true" : "false")
              << " samples=" << result.certificate->samples_checked << "\n";
  }
  std::cout << "termination: " << pdgo::to_string(result.trace.termination)
            << " after " << result.trace.iterations() << " iterations";
  if (!result.trace.rows.empty()) {
    const pdgo::TraceRow& last = result.trace.rows.back();
    std::cout << " (kkt " << std::hypot(last.stat_norm, last.feas_norm) << ")";
  }
  std::cout << "\n";
  if (result.fit) {
    std::cout << "fitted rate: tau_hat=" << result.fit->tau_hat
              << " C_hat=" << result.fit->c_hat << "\n";
  }

  std::vector<std::string> outputs;
  if (!args.trace_out.empty()) {
    pdgo::write_trace_csv(result.trace, args.trace_out);
    outputs.push_back(args.trace_out);

    Json meta;
    meta["termination"] = pdgo::to_string(result.trace.termination);
    meta["iterations"] = result.trace.iterations();
    meta["tol"] = args.tol;
    meta["design_report"] = pdgo::design_report_to_json(result.design);
    if (result.certificate) {
      Json cs;
      cs["tau"] = result.certificate->tau;
      cs["mu_max"] = result.certificate->mu_max;
      cs["verified"] = result.certificate->verified;
      cs["samples_checked"] = result.certificate->samples_checked;
      meta["certificate"] = cs;
    }
    if (result.fit) {
      meta["tau_hat"] = result.fit->tau_hat;
      meta["c_hat"] = result.fit->c_hat;
    }
    if (result.empirical_c) meta["empirical_c"] = *result.empirical_c;
    const std::string meta_path = args.trace_out + ".meta.json";
    pdgo::write_json(meta, meta_path);
    outputs.push_back(meta_path);
  }
  if (!args.cert_out.empty()) {
    if (!result.certificate) {
      std::cerr << "no certificate was produced (steps outside the "
                   "certifiable range or --no-certify given)\n";
      return kExitError;
    }
    Json cert = pdgo::certificate_to_json(*result.certificate);
    cert["design_report"] = pdgo::design_report_to_json(result.design);
    pdgo::write_json(cert, args.cert_out);
    outputs.push_back(args.cert_out);
  }

  if (!outputs.empty()) {
    Json config{{"problem", args.problem_path},
                {"gamma", args.gamma},
                {"target_fraction", args.target_fraction},
                {"max_iter", args.max_iter},
                {"tol", args.tol},
                {"psi_samples", args.psi_samples},
                {"certify", !args.no_certify},
                {"alpha", args.alpha ? Json(*args.alpha) : Json(nullptr)},
                {"beta", args.beta ? Json(*args.beta) : Json(nullptr)},
                {"trace_out", args.trace_out},
                {"cert_out", args.cert_out}};
    write_manifest("run", config, {args.problem_path}, outputs, Json(nullptr),
                   outputs.front() + ".manifest.json");
  }

  if (result.trace.termination == pdgo::Termination::Diverged) {
    std::cerr << "trajectory diverged\n";
    return kExitDiverged;
  }
  if (result.trace.termination != pdgo::Termination::Converged) {
    std::cerr << "iteration budget exhausted before convergence\n";
    return kExitError;
  }
  if (!args.no_certify &&
      (!result.certificate || !result.certificate->verified)) {
    std::cerr << "contraction certificate not verified\n";
    return kExitError;
  }
  return kExitOk;
}

struct SweepArgs {
  std::string problem_path;
  std::vector<double> gammas;
  std::optional<double> alpha, beta;
  std::int64_t max_iter = 1000000;
  double tol = 1e-8;
  std::string out_dir = ".";
};

int cmd_gamma_sweep(const SweepArgs& args) {
  const pdgo::ConstrainedProblem problem =
      pdgo::load_problem(args.problem_path);
  if (problem.kind() != pdgo::ConstraintKind::Inequality) {
    std::cerr << "gamma-sweep requires an inequality problem\n";
    return kExitError;
  }

  pdgo::RunOptions options;
  options.max_iter = args.max_iter;
  options.tol = args.tol;
  const pdgo::GammaSweepResult sweep =
      pdgo::gamma_sweep(problem, args.gammas, args.alpha, args.beta, options);

  std::filesystem::create_directories(args.out_dir);
  std::vector<std::string> outputs;

  std::string summary_path = args.out_dir + "/summary.csv";
  {
    std::FILE* f = std::fopen(summary_path.c_str(), "w");
    if (!f) {
      std::cerr << "cannot open " << summary_path << "\n";
      return kExitError;
    }
    std::fprintf(f,
                 "gamma,design_alpha,design_beta,design_c,tau,run_alpha,"
                 "run_beta,termination,iterations,tau_hat\n");
    for (const auto& row : sweep.rows) {
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%lld,%.17g\n",
                   row.gamma, row.design.steps.alpha, row.design.steps.beta,
                   row.design.c, row.tau.value_or(std::nan("")),
                   row.run_steps.alpha, row.run_steps.beta,
                   row.error ? "error" : pdgo::to_string(row.termination),
                   static_cast<long long>(row.iterations),
                   row.tau_hat.value_or(std::nan("")));
    }
    std::fclose(f);
  }
  outputs.push_back(summary_path);

  bool all_ok = true;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& row = sweep.rows[i];
    char name[64];
    std::snprintf(name, sizeof(name), "gamma_%g.csv", row.gamma);
    if (row.error) {
      all_ok = false;
      std::cerr << "gamma=" << row.gamma << ": " << *row.error << "\n";
      continue;
    }
    const std::string trace_path = args.out_dir + "/" + name;
    pdgo::write_trace_csv(sweep.traces[i], trace_path);
    outputs.push_back(trace_path);

    char tau_text[64];
    std::snprintf(tau_text, sizeof(tau_text), "%.12g",
                  row.tau.value_or(std::nan("")));

    Json meta;
    meta["gamma"] = row.gamma;
    meta["termination"] = pdgo::to_string(row.termination);
    meta["iterations"] = row.iterations;
    meta["tol"] = args.tol;
    meta["run_steps"] = {{"alpha", row.run_steps.alpha},
                         {"beta", row.run_steps.beta},
                         {"gamma", row.run_steps.gamma}};
    meta["design_report"] = pdgo::design_report_to_json(row.design);
    if (row.tau) meta["tau"] = *row.tau;
    if (row.tau_hat) meta["tau_hat"] = *row.tau_hat;
    pdgo::write_json(meta, trace_path + ".meta.json");
    outputs.push_back(trace_path + ".meta.json");
    std::cout << "gamma=" << row.gamma << ": "
              << pdgo::to_string(row.termination) << " after "
              << row.iterations << " iterations, tau="
              << (row.tau ? std::string(tau_text) : std::string("n/a"))
              << "\n";
    if (row.termination != pdgo::Termination::Converged) all_ok = false;
  }

  Json config{{"problem", args.problem_path},
              {"gammas", args.gammas},
              {"alpha", args.alpha ? Json(*args.alpha) : Json(nullptr)},
              {"beta", args.beta ? Json(*args.beta) : Json(nullptr)},
              {"max_iter", args.max_iter},
              {"tol", args.tol},
              {"out_dir", args.out_dir}};
  write_manifest("gamma-sweep", config, {args.problem_path}, outputs,
                 Json(nullptr), args.out_dir + "/manifest.json");
  return all_ok ? kExitOk : kExitError;
}

struct CertifyArgs {
  std::string problem_path;
  std::optional<double> alpha, beta;
  double gamma = 1.0;
  double target_fraction = 0.9;
  std::int64_t psi_samples = 1000;
  std::string out;
};

int cmd_certify(const CertifyArgs& args) {
  const pdgo::ConstrainedProblem problem =
      pdgo::load_problem(args.problem_path);

  pdgo::StepDesignReport design;
  if (args.alpha.has_value() != args.beta.has_value()) {
    std::cerr << "alpha and beta must be given together\n";
    return kExitError;
  }
  if (args.alpha) {
    design = pdgo::evaluate_design(
        problem, pdgo::StepConfig(*args.alpha, *args.beta, args.gamma));
  } else {
    design = problem.kind() == pdgo::ConstraintKind::Equality
                 ? pdgo::design_steps_eq(problem, args.target_fraction)
                 : pdgo::design_steps_ineq(problem, args.gamma,
                                           args.target_fraction);
    if (!design.feasible) {
      std::cerr << "step design infeasible; binding constraint: "
                << design.binding << "\n";
      return kExitInfeasible;
    }
  }

  const pdgo::ContractionCertificate cert =
      pdgo::certify(problem, design.steps, design.c, args.psi_samples);
  Json j = pdgo::certificate_to_json(cert);
  j["design_report"] = pdgo::design_report_to_json(design);
  pdgo::write_json(j, args.out);

  Json config{{"problem", args.problem_path},
              {"gamma", args.gamma},
              {"target_fraction", args.target_fraction},
              {"psi_samples", args.psi_samples},
              {"alpha", args.alpha ? Json(*args.alpha) : Json(nullptr)},
              {"beta", args.beta ? Json(*args.beta) : Json(nullptr)},
              {"out", args.out}};
  write_manifest("certify", config, {args.problem_path}, {args.out},
                 Json(nullptr), args.out + ".manifest.json");

  std::cout << "tau=" << cert.tau << " mu_max=" << cert.mu_max
            << " verified=" << (cert.verified ? "true" : "false") << "\n";
  return cert.verified ? kExitOk : kExitError;
}

struct OracleArgs {
  std::string problem_path;
  std::string out;
};

int cmd_oracle(const OracleArgs& args) {
  const pdgo::ConstrainedProblem problem =
      pdgo::load_problem(args.problem_path);
  const pdgo::OracleSolution oracle = pdgo::solve_oracle(problem);
  const Json j = pdgo::oracle_to_json(oracle);
  if (args.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    pdgo::write_json(j, args.out);
    Json config{{"problem", args.problem_path}, {"out", args.out}};
    write_manifest("oracle", config, {args.problem_path}, {args.out},
                   Json(nullptr), args.out + ".manifest.json");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.precision(12);

  CLI::App app{"Primal-dual gradient optimization with contraction-based "
               "step design and convergence certificates"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a random constrained QP instance");
  generate->add_option("--n", gen.n, "Primal dimension")->required();
  generate->add_option("--p", gen.p, "Constraint count")->required();
  generate->add_option("--kind", gen.kind, "equality|inequality")
      ->check(CLI::IsMember({"equality", "inequality"}));
  generate->add_option("--seed", gen.seed, "Generator seed")->required();
  generate->add_option("--shift", gen.shift, "Diagonal shift added to Q0'Q0");
  generate->add_option("--out", gen.out, "Output problem JSON")->required();

  RunArgs runa;
  CLI::App* runc = app.add_subcommand(
      "run", "Design/certify step sizes and run one trajectory");
  runc->add_option("--problem", runa.problem_path, "Problem JSON")->required();
  double alpha_flag = 0.0, beta_flag = 0.0;
  CLI::Option* alpha_opt =
      runc->add_option("--alpha", alpha_flag, "Primal step size");
  CLI::Option* beta_opt =
      runc->add_option("--beta", beta_flag, "Dual step size");
  runc->add_option("--gamma", runa.gamma, "Penalty parameter");
  runc->add_option("--target-fraction", runa.target_fraction,
                   "Designer margin fraction in (0,1)");
  runc->add_option("--max-iter", runa.max_iter, "Iteration budget");
  runc->add_option("--tol", runa.tol, "KKT residual tolerance");
  runc->add_option("--psi-samples", runa.psi_samples,
                   "Psi samples for certification when p > 12");
  runc->add_flag("--no-certify", runa.no_certify,
                 "Skip the contraction certificate");
  runc->add_option("--trace-out", runa.trace_out, "Trace CSV path");
  runc->add_option("--cert-out", runa.cert_out, "Certificate JSON path");

  SweepArgs sweep;
  CLI::App* sweepc = app.add_subcommand(
      "gamma-sweep", "Run one trajectory per penalty parameter");
  sweepc->add_option("--problem", sweep.problem_path, "Problem JSON")
      ->required();
  sweepc->add_option("--gammas", sweep.gammas, "Penalty parameters")
      ->required()
      ->delimiter(',');
  double s_alpha = 0.0, s_beta = 0.0;
  CLI::Option* s_alpha_opt =
      sweepc->add_option("--alpha", s_alpha, "Shared primal step");
  CLI::Option* s_beta_opt =
      sweepc->add_option("--beta", s_beta, "Shared dual step");
  sweepc->add_option("--max-iter", sweep.max_iter, "Iteration budget");
  sweepc->add_option("--tol", sweep.tol, "KKT residual tolerance");
  sweepc->add_option("--out-dir", sweep.out_dir, "Output directory");

  CertifyArgs cert;
  CLI::App* certc = app.add_subcommand(
      "certify", "Produce a contraction certificate without running");
  certc->add_option("--problem", cert.problem_path, "Problem JSON")
      ->required();
  double c_alpha = 0.0, c_beta = 0.0;
  CLI::Option* c_alpha_opt =
      certc->add_option("--alpha", c_alpha, "Primal step size");
  CLI::Option* c_beta_opt =
      certc->add_option("--beta", c_beta, "Dual step size");
  certc->add_option("--gamma", cert.gamma, "Penalty parameter");
  certc->add_option("--target-fraction", cert.target_fraction,
                    "Designer margin fraction in (0,1)");
  certc->add_option("--psi-samples", cert.psi_samples,
                    "Psi samples when p > 12");
  certc->add_option("--out", cert.out, "Certificate JSON path")->required();

  OracleArgs oracle;
  CLI::App* oraclec = app.add_subcommand(
      "oracle", "Print the direct-solver reference solution");
  oraclec->add_option("--problem", oracle.problem_path, "Problem JSON")
      ->required();
  oraclec->add_option("--out", oracle.out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;  // fold parse errors into 1
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (runc->parsed()) {
      if (*alpha_opt) runa.alpha = alpha_flag;
      if (*beta_opt) runa.beta = beta_flag;
      return cmd_run(runa);
    }
    if (sweepc->parsed()) {
      if (*s_alpha_opt) sweep.alpha = s_alpha;
      if (*s_beta_opt) sweep.beta = s_beta;
      return cmd_gamma_sweep(sweep);
    }
    if (certc->parsed()) {
      if (*c_alpha_opt) cert.alpha = c_alpha;
      if (*c_beta_opt) cert.beta = c_beta;
      return cmd_certify(cert);
    }
    if (oraclec->parsed()) return cmd_oracle(oracle);
  } catch (const pdgo::DesignInfeasibleError& e) {
    std::cerr << "infeasible design: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
