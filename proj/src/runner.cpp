#include "vragt/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vragt/csv.hpp"
#include "vragt/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vragt {

namespace {

std::string join_set(const std::set<int>& s, std::size_t limit = 8) {
  std::ostringstream os;
  std::size_t count = 0;
  for (int v : s) {
    if (count++) os << " ";
    if (count > limit) {
      os << "...(" << s.size() << " total)";
      break;
    }
    os << v + 1;  // 1-indexed for display
  }
  return os.str();
}

}  // namespace

BuiltExperiment build_experiment(const ExperimentConfig& cfg) {
  BuiltExperiment b;
  if (cfg.graph.file) {
    b.graph = read_edge_list_file(*cfg.graph.file);
  } else {
    b.graph = ring_plus_random(cfg.graph.n, cfg.graph.p, cfg.graph.seed);
  }
  b.weights = build_weights(b.graph);
  b.eig = perron_vectors(b.weights);

  RidgeInstance inst;
  if (cfg.problem.file) {
    inst = read_ridge_file(*cfg.problem.file);
  } else {
    const int n = cfg.problem.n.value_or(b.graph.size());
    inst = generate_ridge(n, cfg.problem.d1, cfg.problem.d, cfg.problem.r,
                          cfg.problem.box, cfg.problem.seed);
  }
  if (inst.agents() != b.graph.size())
    throw Error(ErrorKind::InvalidConfiguration,
                "problem agent count does not match graph size");
  b.problem = std::make_unique<RidgeObjective>(std::move(inst));
  b.sched = cfg.sched;
  b.pull = cfg.pull;
  b.push = cfg.push;
  return b;
}

FullValidation validate_experiment(const ExperimentConfig& cfg,
                                   const BuiltExperiment& built) {
  FullValidation out;
  ValidationReport& r = out.report;

  const auto a2 = check_assumption2(built.graph, built.graph);
  r.add("Assumption 2: roots(G_R) nonempty", !a2.roots_R.empty(),
        join_set(a2.roots_R));
  r.add("Assumption 2: roots(G_Ct) nonempty", !a2.roots_Ct.empty(),
        join_set(a2.roots_Ct));
  r.add("Assumption 2: common root exists", !a2.intersection.empty(),
        join_set(a2.intersection));

  bool stochastic_ok = true;
  std::string stochastic_detail;
  try {
    validate_weights(built.weights, built.graph);
  } catch (const Error& e) {
    stochastic_ok = false;
    stochastic_detail = e.what();
  }
  r.add("Weights: stochasticity and positive diagonals", stochastic_ok,
        stochastic_detail);

  const bool is_vra = cfg.algorithm == AlgorithmKind::VraGt;
  bool theorem2_ok = true;
  bool noise_ok = true;
  if (is_vra) {
    const auto t2 = validate_theorem2(cfg.sched);
    for (const auto& c : t2.conditions)
      r.add("Theorem 2 (a.s.): " + c.name, c.pass, c.detail);
    theorem2_ok = t2.pass;

    const auto t3 = validate_theorem3(cfg.sched);
    for (const auto& c : t3.report.conditions)
      r.add("Rate theorem: " + c.name, c.pass, c.detail);
    out.predicted_rate = t3.rate_exponent;
    std::ostringstream rate;
    rate << "min{2e_beta-e_alpha, e_beta+e_eta-e_alpha} = " << t3.rate_exponent;
    r.add("Rate theorem: predicted exponent", t3.report.pass, rate.str());

    const auto a3 = validate_assumption3(cfg.pull, cfg.push, cfg.sched);
    for (const auto& c : a3.conditions)
      r.add("Assumption 3: " + c.name, c.pass, c.detail);
    noise_ok = a3.pass;
  }

  out.gate_pass = a2.pass && stochastic_ok && (!is_vra || (theorem2_ok && noise_ok));
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir, int threads,
                                bool force) {
  namespace fs = std::filesystem;
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
  const auto t0 = std::chrono::steady_clock::now();

  BuiltExperiment built = build_experiment(cfg);
  ExperimentResult result;
  result.validation = validate_experiment(cfg, built);
  if (!result.validation.gate_pass && !force) {
    std::ostringstream msg;
    msg << "validation failed:";
    for (const auto& c : result.validation.report.conditions)
      if (!c.pass) msg << " [" << c.name << "]";
    throw Error(ErrorKind::ValidationFailure, msg.str());
  }

  const int num_seeds = static_cast<int>(cfg.seeds.size());
  result.per_seed.resize(num_seeds);
  std::exception_ptr failure;

  RunInputs inputs;
  inputs.problem = built.problem.get();
  inputs.weights = &built.weights;
  inputs.eig = &built.eig;
  inputs.sched = built.sched;
  inputs.pull = built.pull;
  inputs.push = built.push;

  // Seeds go to the worker pool; step kernels stay serial inside so the two
  // levels do not oversubscribe. Output is seed-keyed, hence pool-size
  // independent.
#pragma omp parallel for schedule(dynamic)
  for (int si = 0; si < num_seeds; ++si) {
    try {
      RunOptions opt;
      opt.iterations = cfg.iterations;
      opt.record_every = cfg.record_every;
      opt.seed = cfg.seeds[si];
      opt.diagnostics = cfg.diagnostics;
      opt.backend = num_seeds > 1 ? Backend::Serial : Backend::OpenMP;
      if (cfg.algorithm == AlgorithmKind::VraGt) {
        result.per_seed[si] = run(inputs, opt);
      } else {
        result.per_seed[si] =
            run_r_push_pull(inputs, cfg.rpp_beta, cfg.rpp_alpha, opt);
      }
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  fs::create_directories(out_dir);
  for (int si = 0; si < num_seeds; ++si) {
    write_trajectory_csv(result.per_seed[si],
                         (fs::path(out_dir) /
                          ("seed_" + std::to_string(cfg.seeds[si]) + ".csv"))
                             .string());
  }
  write_aggregate_csv(result.per_seed,
                      (fs::path(out_dir) / "aggregate.csv").string());

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  nlohmann::json meta;
  meta["config"] = config_to_json(cfg);
  meta["version"] = "vragt 1.0.0";
  meta["wall_seconds"] = result.wall_seconds;
  meta["forced"] = force && !result.validation.gate_pass;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.validation.report.conditions)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  meta["validation"] = checks;
  meta["validation_pass"] = result.validation.gate_pass;
  std::ofstream meta_os((fs::path(out_dir) / "metadata.json").string());
  meta_os << meta.dump(2) << "\n";

  return result;
}

}  // namespace vragt
