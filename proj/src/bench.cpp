// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/bench.hpp"

#include "dsppa/errors.hpp"
#include "dsppa/io.hpp"
#include "dsppa/metrics.hpp"

#include <cmath>
#include <sstream>

namespace dsppa {

namespace {

const char* const kFields[] = {"AE", "FP", "FN", "iterations", "wall_time_s", "time_per_iter_s"};

double field(const nlohmann::json& run, const std::string& name) {
  if (name == "AE" || name == "FP" || name == "FN") return run.at("metrics").at(name).get<double>();
  if (name == "time_per_iter_s") {
    const double it = run.at("iterations").get<double>();
    return it > 0 ? run.at("wall_time_s").get<double>() / it : 0.0;
  }
  return run.at(name).get<double>();
}

}  // namespace

nlohmann::json aggregate_runs(const nlohmann::json& runs) {
  nlohmann::json mean = nlohmann::json::object();
  nlohmann::json sd = nlohmann::json::object();
  const double count = static_cast<double>(runs.size());
  for (const char* f : kFields) {
    double s = 0.0;
    for (const auto& r : runs) s += field(r, f);
    const double m = count > 0 ? s / count : 0.0;
    double ss = 0.0;
    for (const auto& r : runs) ss += (field(r, f) - m) * (field(r, f) - m);
    mean[f] = m;
    sd[f] = count > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  }
  return {{"mean", mean}, {"sd", sd}, {"replicates", runs.size()}};
}

BenchResult run_bench(const BenchOptions& opt) {
  opt.scenario.validate();
  if (opt.replicates < 1) throw ArgumentError("bench needs at least one replicate");
  if (opt.algorithms.empty() || opt.ks.empty())
    throw ArgumentError("bench needs at least one algorithm and one K");

  const std::size_t ncell = opt.algorithms.size() * opt.ks.size();
  std::vector<nlohmann::json> runs(ncell, nlohmann::json::array());
  std::vector<nlohmann::json> errors(ncell, nlohmann::json::array());
  for (int rep = 0; rep < opt.replicates; ++rep) {
    ScenarioSpec spec = opt.scenario;
    spec.seed = opt.scenario.seed + static_cast<std::uint64_t>(rep);
    const Dataset ds = gen_dataset(spec);
    const double lambda =
        opt.lambda ? *opt.lambda
                   : std::sqrt(2.0 * std::log(static_cast<double>(spec.p)) /
                               static_cast<double>(spec.n));
    std::size_t cell = 0;
    for (Algorithm a : opt.algorithms)
      for (int K : opt.ks) {
        SolverConfig c = opt.base;
        c.algorithm = a;
        c.K = K;
        c.lambda = lambda;
        try {
          const SolveReport r = solve(ds.data, c);
          const MetricReport m = make_metric_report(r, ds.beta_star, ds.sigma, opt.zero_tol);
          nlohmann::json j = report_json(r, &m);
          j["replicate"] = rep;
          j["seed"] = spec.seed;
          runs[cell].push_back(std::move(j));
        } catch (const Error& e) {
          errors[cell].push_back({{"replicate", rep}, {"seed", spec.seed}, {"error", e.what()}});
        }
        ++cell;
      }
  }

  BenchResult out;
  std::size_t cell = 0;
  for (Algorithm a : opt.algorithms)
    for (int K : opt.ks) {
      nlohmann::json agg = aggregate_runs(runs[cell]);
      agg["algorithm"] = to_string(a);
      agg["K"] = K;
      agg["runs"] = runs[cell];
      agg["errors"] = errors[cell];
      out.cells.push_back(std::move(agg));
      ++cell;
    }
  return out;
}

std::string BenchResult::plot_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "algorithm,K,mean_time,mean_AE,mean_time_per_iter\n";
  for (const auto& c : cells)
    os << c.at("algorithm").get<std::string>() << ',' << c.at("K").get<int>() << ','
       << c.at("mean").at("wall_time_s").get<double>() << ','
       << c.at("mean").at("AE").get<double>() << ','
       << c.at("mean").at("time_per_iter_s").get<double>() << '\n';
  return os.str();
}

}  // namespace dsppa
