// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
//
// dsppa: command-line front end for the Dantzig selector solvers.

#include "dsppa/bench.hpp"
#include "dsppa/datagen.hpp"
#include "dsppa/errors.hpp"
#include "dsppa/io.hpp"
#include "dsppa/lla.hpp"
#include "dsppa/metrics.hpp"
#include "dsppa/repro.hpp"
#include "dsppa/solvers.hpp"
#include "dsppa/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace dsppa;

constexpr int kVerificationFailed = 12;

struct SolveArgs {
  std::string algo = "ppa";
  std::string penalty = "l1";
  std::optional<double> lambda;
  double mu = 0.0;
  double a = 0.0;
  int k = 1;
  double tol = 1e-4;
  int max_iter = 500;
  int outer = 2;
  std::uint64_t seed = 1;
  int workers = 0;
  bool diag = false;
  std::optional<double> feas_tol;
};

struct ScenarioArgs {
  Index n = 500;
  Index p = 1000;
  double rho = 0.5;
  std::string pattern = "sparse8";
  int s = 1;
  std::string noise = "gaussian";
  double df = 2.5;
  double noise_scale = 1.0;
};

void add_solver_options(CLI::App* app, SolveArgs& a) {
  app->add_option("--algo", a.algo, "ppa, pppa, ippa, ladmm or tadmm")
      ->check(CLI::IsMember({"ppa", "pppa", "ippa", "ladmm", "tadmm"}));
  app->add_option("--penalty", a.penalty, "l1, scad or mcp")
      ->check(CLI::IsMember({"l1", "scad", "mcp"}));
  app->add_option("--lambda", a.lambda, "constraint level (default: sqrt(2 log p / n))");
  app->add_option("--mu", a.mu, "augmentation parameter (default: 1 / n^2)");
  app->add_option("--a", a.a, "SCAD / MCP shape (default 3.7 / 3.0)");
  app->add_option("--k", a.k, "number of column blocks");
  app->add_option("--tol", a.tol, "relative beta-change tolerance");
  app->add_option("--max-iter", a.max_iter, "iteration cap");
  app->add_option("--feas-tol", a.feas_tol, "also require ||r||_inf / n below this");
  app->add_option("--outer", a.outer, "outer passes for SCAD / MCP");
  app->add_option("--seed", a.seed, "random seed");
  app->add_option("--workers", a.workers, "worker threads (default: all cores)");
  app->add_flag("--diag", a.diag, "record the full iterate trace");
}

void add_scenario_options(CLI::App* app, ScenarioArgs& s) {
  app->add_option("--n", s.n, "samples");
  app->add_option("--p", s.p, "features");
  app->add_option("--rho", s.rho, "AR(1) correlation");
  app->add_option("--pattern", s.pattern, "sparse8 or dense")
      ->check(CLI::IsMember({"sparse8", "dense"}));
  app->add_option("--s", s.s, "dense scale (p = 2560 s)");
  app->add_option("--noise", s.noise, "gaussian, mixed, t or cauchy")
      ->check(CLI::IsMember({"gaussian", "mixed", "t", "cauchy"}));
  app->add_option("--df", s.df, "degrees of freedom for t noise");
  app->add_option("--noise-scale", s.noise_scale, "noise multiplier");
}

int env_workers(int requested) {
  if (const char* v = std::getenv("DSPPA_WORKERS")) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw ArgumentError(std::string("DSPPA_WORKERS is not an integer: ") + v);
    }
  }
  return requested;
}

SolverConfig solver_config(const SolveArgs& a) {
  SolverConfig c;
  c.algorithm = parse_algorithm(a.algo);
  c.mu = a.mu;
  if (a.lambda) {
    if (!(*a.lambda >= 0.0)) throw ArgumentError("--lambda must be non-negative");
    c.lambda = *a.lambda;
  } else {
    c.lambda = -1.0;
  }
  c.tol = a.tol;
  c.max_iter = a.max_iter;
  c.K = a.k;
  c.diagnostics = a.diag;
  c.feas_tol = a.feas_tol;
  c.workers = env_workers(a.workers);
  return c;
}

ScenarioSpec scenario_spec(const ScenarioArgs& s, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.n = s.n;
  spec.p = s.p;
  spec.rho = s.rho;
  spec.pattern = parse_pattern(s.pattern);
  spec.s = s.s;
  if (spec.pattern == BetaPattern::Dense) {
    spec.p = 2560 * static_cast<Index>(s.s);
    if (s.n == 500) spec.n = 720 * static_cast<Index>(s.s);
  }
  spec.noise = {parse_noise(s.noise), s.df, s.noise_scale};
  spec.seed = seed;
  spec.validate();
  return spec;
}

double default_lambda(const ProblemData& d) {
  return std::sqrt(2.0 * std::log(static_cast<double>(d.p())) / static_cast<double>(d.n()));
}

PenaltySpec penalty_spec(const SolveArgs& a, double lambda) {
  PenaltyKind kind = parse_penalty(a.penalty);
  PenaltySpec p{kind, lambda, a.a > 0.0 ? a.a : default_shape(kind)};
  p.validate();
  return p;
}

/// Expands "--config file" into the key=value options it contains, placed
/// right after the subcommand so later command-line flags override them.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> from_file;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[++i];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
    else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("config '" + path + "' line " + std::to_string(line_no) +
                         ": expected key=value");
      auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      const std::string key = strip(line.substr(0, eq));
      const std::string value = strip(line.substr(eq + 1));
      if (value == "true") {
        from_file.push_back("--" + key);
      } else if (value != "false") {
        from_file.push_back("--" + key);
        from_file.push_back(value);
      }
    }
  }
  if (rest.empty()) return from_file;
  std::vector<std::string> out{rest[0]};
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

Dataset load_dataset(const std::string& x, const std::string& y) {
  Dataset ds;
  ds.data = ProblemData::make(read_matrix(x), read_vector(y));
  return ds;
}

int cmd_solve(const SolveArgs& a, const std::string& x, const std::string& y,
              const std::string& out, const std::string& beta_out, const std::string& truth,
              double truth_rho) {
  const Dataset ds = load_dataset(x, y);
  SolverConfig c = solver_config(a);
  if (c.lambda < 0.0) c.lambda = default_lambda(ds.data);
  SolveReport rep;
  if (parse_penalty(a.penalty) == PenaltyKind::L1) {
    rep = solve(ds.data, c);
  } else {
    LLAConfig lc;
    lc.penalty = penalty_spec(a, c.lambda);
    lc.outer_iters = a.outer;
    lc.inner = c;
    rep = lla_solve(ds.data, lc).combined;
  }
  std::optional<MetricReport> m;
  if (!truth.empty())
    m = make_metric_report(rep, read_vector(truth), Ar1Covariance{truth_rho});
  const auto j = report_json(rep, m ? &*m : nullptr, a.diag);
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json(out, j);
  if (!beta_out.empty()) write_vector(beta_out, rep.beta_hat);
  return 0;
}

int cmd_tune(const SolveArgs& a, const std::string& x, const std::string& y,
             const std::string& out, int grid_size, double grid_ratio, bool cold) {
  const Dataset ds = load_dataset(x, y);
  SolverConfig c = solver_config(a);
  c.lambda = 0.0;  // set per grid point
  GridSearchOptions go;
  go.warm_start = !cold;
  go.outer_iters = a.outer;
  if (parse_penalty(a.penalty) != PenaltyKind::L1) go.penalty = penalty_spec(a, 1.0);
  const auto res =
      lambda_grid_search(ds.data, c, default_lambda_grid(ds.data, grid_size, grid_ratio), go);
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : res.points)
    pts.push_back({{"lambda", p.lambda},
                   {"hbic", p.failed ? nlohmann::json(nullptr) : nlohmann::json(p.hbic)},
                   {"iterations", p.report.iterations},
                   {"failed", p.failed}});
  nlohmann::json j = {{"best_lambda", res.best_lambda},
                      {"total_iterations", res.total_iterations},
                      {"grid", pts},
                      {"best", report_json(res.points[res.best_index].report)}};
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json(out, j);
  return 0;
}

int cmd_verify(const SolveArgs& a, const std::string& x, const std::string& y,
               const std::string& out, const std::vector<int>& ks) {
  const Dataset ds = load_dataset(x, y);
  const ProblemData& d = ds.data;
  SolverConfig c = solver_config(a);
  if (c.lambda < 0.0) c.lambda = default_lambda(d);
  bool ok = true;
  nlohmann::json j;
  j["lambda"] = c.lambda;

  const SolveReport rep = solve(d, c);
  const Feasibility f = kkt_feasibility(d, rep.beta_hat, c.lambda);
  j["solution"] = to_json(f);
  j["solution"]["algorithm"] = to_string(c.algorithm);
  j["solution"]["converged"] = rep.converged;

  if (2 * d.p() <= 200) {
    const Vector lp = lp_oracle_solve(d, c.lambda);
    const Feasibility g = kkt_feasibility(d, lp, c.lambda);
    j["lp_oracle"] = to_json(g);
    j["lp_oracle"]["objective_gap"] = f.l1_objective - g.l1_objective;
  }

  std::vector<Partition> parts;
  for (int k : ks)
    if (k >= 1 && k <= d.p()) parts.push_back(Partition::even(d.p(), k));
  SolverConfig pc = c;
  pc.max_iter = std::min(c.max_iter, 200);
  const PartitionReport pr = partition_insensitivity_check(d, pc, parts);
  j["partition_insensitivity"] = to_json(pr);
  ok = ok && pr.ok;

  if (d.p() <= 100) {
    nlohmann::json checks = nlohmann::json::array();
    for (Algorithm alg : {Algorithm::PPA, Algorithm::PPPA, Algorithm::IPPPA}) {
      SolverConfig cc = c;
      cc.algorithm = alg;
      cc.K = alg == Algorithm::PPA ? 1 : std::min<int>(3, static_cast<int>(d.p()));
      cc.tol = 1e-12;
      cc.max_iter = 200000;
      const SolveReport star = solve(d, cc);
      cc.diagnostics = true;
      cc.max_iter = 200;
      cc.tol = 1e-300;
      const PreparedProblem P = prepare(d, cc);
      const SolveReport tr = solve(P, cc);
      const EtaSpec eta = alg == Algorithm::IPPPA ? EtaSpec::make_per_block(P.etas)
                                                  : EtaSpec::make_global(P.eta);
      const auto metric = build_contraction_metric(P.gram, P.mu, eta);
      const Snapshot gs{star.final_state.beta, star.final_state.z, star.final_state.u};
      const auto cr = check_contraction(tr.snapshots, metric, gs);
      auto cj = to_json(cr);
      cj["algorithm"] = to_string(alg);
      cj["K"] = cc.K;
      checks.push_back(cj);
      ok = ok && cr.ok();
    }
    j["contraction"] = checks;
  }
  j["ok"] = ok;
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json(out, j);
  return ok ? 0 : kVerificationFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Dantzig selector solvers: proximal point methods and ADMM baselines"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  SolveArgs sa;
  ScenarioArgs sc;
  std::string x, y, out, beta_out, truth, csv, results = "results", scenario;
  double truth_rho = 0.0;
  int grid_size = 50;
  double grid_ratio = 0.01;
  bool cold = false, all = false, list = false;
  int replicates = 1;
  std::vector<std::string> algos{"pppa"};
  std::vector<int> ks{1};
  std::optional<int> repro_replicates;

  auto* gen = app.add_subcommand("datagen", "generate a synthetic dataset");
  add_scenario_options(gen, sc);
  gen->add_option("--seed", sa.seed, "random seed");
  gen->add_option("--x", x, "design output (DSM1, or CSV for .csv)")->required();
  gen->add_option("--y", y, "response output")->required();
  gen->add_option("--beta", beta_out, "true coefficient output");

  auto* sol = app.add_subcommand("solve", "fit one lambda");
  add_solver_options(sol, sa);
  sol->add_option("--x", x, "design matrix file")->required();
  sol->add_option("--y", y, "response file")->required();
  sol->add_option("--out", out, "report JSON (default: stdout)");
  sol->add_option("--beta-out", beta_out, "write the fitted coefficients");
  sol->add_option("--truth", truth, "true coefficients, enables error metrics");
  sol->add_option("--truth-rho", truth_rho, "AR(1) correlation for the model error");

  auto* tune = app.add_subcommand("tune", "choose lambda by HBIC over a grid");
  add_solver_options(tune, sa);
  tune->add_option("--x", x, "design matrix file")->required();
  tune->add_option("--y", y, "response file")->required();
  tune->add_option("--out", out, "result JSON (default: stdout)");
  tune->add_option("--grid-size", grid_size, "number of grid points");
  tune->add_option("--grid-ratio", grid_ratio, "smallest / largest lambda");
  tune->add_flag("--cold", cold, "disable warm starts along the path");

  auto* bench = app.add_subcommand("bench", "timing and accuracy sweep over algorithms and K");
  add_solver_options(bench, sa);
  add_scenario_options(bench, sc);
  bench->add_option("--algos", algos, "algorithms to run")->delimiter(',');
  bench->add_option("--ks", ks, "block counts")->delimiter(',');
  bench->add_option("--replicates", replicates, "datasets per cell");
  bench->add_option("--out", out, "aggregate JSON (default: stdout)");
  bench->add_option("--csv", csv, "plot-ready CSV of (K, mean_time, mean_AE)");

  auto* ver = app.add_subcommand("verify", "check a dataset against the convergence guarantees");
  add_solver_options(ver, sa);
  ver->add_option("--x", x, "design matrix file")->required();
  ver->add_option("--y", y, "response file")->required();
  ver->add_option("--out", out, "verification JSON (default: stdout)");
  ver->add_option("--ks", ks, "partitions to compare")->delimiter(',');

  auto* rep = app.add_subcommand("repro", "run desk-scale reproduction scenarios");
  rep->add_option("--scenario", scenario, "scenario id");
  rep->add_flag("--all", all, "run every registered scenario");
  rep->add_flag("--list", list, "list scenarios and documented operations");
  rep->add_option("--results", results, "results directory");
  rep->add_option("--replicates", repro_replicates, "override the replicate count");
  rep->add_option("--workers", sa.workers, "worker threads");

  const auto args = expand_config(argc, argv);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : exit_code(ErrorKind::Argument);
  }

  if (gen->parsed()) {
    const Dataset ds = gen_dataset(scenario_spec(sc, sa.seed));
    write_matrix(x, ds.data.X.values());
    write_vector(y, ds.data.y);
    if (!beta_out.empty()) write_vector(beta_out, ds.beta_star);
    return 0;
  }
  if (sol->parsed()) return cmd_solve(sa, x, y, out, beta_out, truth, truth_rho);
  if (tune->parsed()) return cmd_tune(sa, x, y, out, grid_size, grid_ratio, cold);
  if (ver->parsed()) {
    if (ks.size() == 1 && ks[0] == 1) ks = {1, 2, 3};
    return cmd_verify(sa, x, y, out, ks);
  }
  if (bench->parsed()) {
    BenchOptions bo;
    bo.scenario = scenario_spec(sc, sa.seed);
    bo.algorithms.clear();
    for (const auto& s : algos) bo.algorithms.push_back(parse_algorithm(s));
    bo.ks = ks;
    bo.replicates = replicates;
    bo.base = solver_config(sa);
    if (sa.lambda) bo.lambda = solver_config(sa).lambda;
    const BenchResult br = run_bench(bo);
    if (out.empty())
      std::cout << br.cells.dump(2) << '\n';
    else
      write_json(out, br.cells);
    if (!csv.empty()) write_text(csv, br.plot_csv());
    return 0;
  }
  if (rep->parsed()) {
    if (list) {
      for (const auto& s : registered_scenarios()) std::cout << s.id << "  " << s.description << '\n';
      std::cout << '\n';
      for (const auto& op : operation_index())
        std::cout << op.module << '\t' << op.name << '\t' << op.computes << '\n';
      return 0;
    }
    std::vector<ReproScenario> todo;
    if (all)
      todo = registered_scenarios();
    else if (!scenario.empty())
      todo.push_back(find_scenario(scenario));
    else
      throw ArgumentError("repro needs --scenario, --all or --list");
    bool pass = true;
    for (auto s : todo) {
      if (repro_replicates) s.replicates = *repro_replicates;
      s.workers = env_workers(sa.workers);
      const ReproResult r = run_repro(s, results);
      std::cout << (r.pass ? "PASS " : "FAIL ") << s.id;
      for (const auto& f : r.failures) std::cout << " | " << f;
      std::cout << '\n';
      pass = pass && r.pass;
    }
    return pass ? 0 : kVerificationFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dsppa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dsppa::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
