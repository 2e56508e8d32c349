#include "vragt/config.hpp"

#include <fstream>

#include "vragt/errors.hpp"

namespace vragt {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::InvalidConfiguration, "config: " + what);
}

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) bad(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

PowerLawSchedule parse_schedule(const json& j, const char* name) {
  if (!j.is_object()) bad(std::string("sched.") + name + " must be an object");
  PowerLawSchedule s;
  s.amplitude = get_number(j, "a", 1.0);
  s.exponent = get_number(j, "e", 0.0);
  s.offset = get_number(j, "c", 0.0);
  if (s.amplitude <= 0.0 || s.exponent < 0.0 || s.offset < 0.0)
    bad(std::string("sched.") + name + " parameters out of range");
  return s;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) bad("top level must be an object");
  ExperimentConfig cfg;

  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    if (g.contains("file")) {
      cfg.graph.file = g.at("file").get<std::string>();
    } else {
      cfg.graph.n = static_cast<int>(get_number(g, "n", 100));
      cfg.graph.p = get_number(g, "p", 0.3);
      cfg.graph.seed = static_cast<std::uint64_t>(get_number(g, "seed", 1));
      if (cfg.graph.n < 2) bad("graph.n must be >= 2");
      if (cfg.graph.p < 0.0 || cfg.graph.p > 1.0) bad("graph.p out of [0,1]");
    }
  }

  if (j.contains("problem")) {
    const auto& p = j.at("problem");
    if (p.contains("file")) {
      cfg.problem.file = p.at("file").get<std::string>();
    } else if (p.contains("ridge")) {
      const auto& rj = p.at("ridge");
      if (rj.contains("n")) cfg.problem.n = static_cast<int>(get_number(rj, "n", 0));
      cfg.problem.d1 = static_cast<int>(get_number(rj, "d1", 3));
      cfg.problem.d = static_cast<int>(get_number(rj, "d", 2));
      cfg.problem.r = get_number(rj, "r", 0.05);
      cfg.problem.seed = static_cast<std::uint64_t>(get_number(rj, "seed", 7));
      if (rj.contains("box")) {
        const auto& b = rj.at("box");
        if (!b.is_array() || b.size() != 2) bad("problem.ridge.box must be [lo, hi]");
        cfg.problem.box.lo = b[0].get<double>();
        cfg.problem.box.hi = b[1].get<double>();
      }
      if (cfg.problem.d1 < 1 || cfg.problem.d < 1 || cfg.problem.r < 0.0)
        bad("problem.ridge parameters out of range");
    } else {
      bad("problem must name a ridge instance or a file");
    }
  }

  if (j.contains("sched")) {
    const auto& s = j.at("sched");
    if (s.contains("alpha")) cfg.sched.alpha = parse_schedule(s.at("alpha"), "alpha");
    if (s.contains("beta")) cfg.sched.beta = parse_schedule(s.at("beta"), "beta");
    if (s.contains("eta")) cfg.sched.eta = parse_schedule(s.at("eta"), "eta");
    cfg.sched.gamma = get_number(s, "gamma", cfg.sched.gamma);
    if (cfg.sched.gamma <= 0.0 || cfg.sched.gamma > 1.0)
      bad("sched.gamma out of (0,1]");
  }

  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    cfg.pull.sigma2 = get_number(n, "sigma2_pull", 0.0);
    cfg.push.sigma2 = get_number(n, "sigma2_push", 0.0);
    cfg.pull.growth = get_number(n, "growth_pull", 0.0);
    cfg.push.growth = get_number(n, "growth_push", 0.0);
    if (cfg.pull.sigma2 < 0.0 || cfg.push.sigma2 < 0.0 ||
        cfg.pull.growth < 0.0 || cfg.push.growth < 0.0)
      bad("noise parameters out of range");
  }
  cfg.pull.channel = NoiseChannel::Pull;
  cfg.push.channel = NoiseChannel::Push;

  if (j.contains("algorithm")) {
    const std::string a = j.at("algorithm").get<std::string>();
    if (a == "vra_gt") {
      cfg.algorithm = AlgorithmKind::VraGt;
    } else if (a == "r_push_pull") {
      cfg.algorithm = AlgorithmKind::RPushPull;
    } else {
      bad("unknown algorithm: " + a);
    }
  }
  if (j.contains("r_push_pull")) {
    const auto& r = j.at("r_push_pull");
    cfg.rpp_beta = get_number(r, "beta", cfg.rpp_beta);
    cfg.rpp_alpha = get_number(r, "alpha", cfg.rpp_alpha);
  }

  cfg.iterations = static_cast<long>(get_number(j, "T", 1000));
  if (cfg.iterations < 1) bad("T must be >= 1");
  cfg.record_every = static_cast<int>(get_number(j, "record_every", 10));
  cfg.diagnostics = j.value("diagnostics", false);

  if (j.contains("seed_list")) {
    cfg.seeds.clear();
    for (const auto& s : j.at("seed_list"))
      cfg.seeds.push_back(s.get<std::uint64_t>());
    if (cfg.seeds.empty()) bad("seed_list must be nonempty");
  } else {
    const int num = static_cast<int>(get_number(j, "seeds", 1));
    if (num < 1) bad("seeds must be >= 1");
    cfg.seeds.clear();
    for (int s = 0; s < num; ++s) cfg.seeds.push_back(s);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) bad("cannot open " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("parse error: ") + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  if (cfg.graph.file) {
    j["graph"]["file"] = *cfg.graph.file;
  } else {
    j["graph"] = {{"n", cfg.graph.n}, {"p", cfg.graph.p}, {"seed", cfg.graph.seed}};
  }
  if (cfg.problem.file) {
    j["problem"]["file"] = *cfg.problem.file;
  } else {
    j["problem"]["ridge"] = {{"d1", cfg.problem.d1},
                             {"d", cfg.problem.d},
                             {"r", cfg.problem.r},
                             {"box", {cfg.problem.box.lo, cfg.problem.box.hi}},
                             {"seed", cfg.problem.seed}};
    if (cfg.problem.n) j["problem"]["ridge"]["n"] = *cfg.problem.n;
  }
  auto sched_json = [](const PowerLawSchedule& s) {
    return nlohmann::json{{"a", s.amplitude}, {"e", s.exponent}, {"c", s.offset}};
  };
  j["sched"] = {{"alpha", sched_json(cfg.sched.alpha)},
                {"beta", sched_json(cfg.sched.beta)},
                {"eta", sched_json(cfg.sched.eta)},
                {"gamma", cfg.sched.gamma}};
  j["noise"] = {{"sigma2_pull", cfg.pull.sigma2},
                {"sigma2_push", cfg.push.sigma2},
                {"growth_pull", cfg.pull.growth},
                {"growth_push", cfg.push.growth}};
  j["algorithm"] =
      cfg.algorithm == AlgorithmKind::VraGt ? "vra_gt" : "r_push_pull";
  j["r_push_pull"] = {{"beta", cfg.rpp_beta}, {"alpha", cfg.rpp_alpha}};
  j["T"] = cfg.iterations;
  j["record_every"] = cfg.record_every;
  j["seed_list"] = cfg.seeds;
  j["diagnostics"] = cfg.diagnostics;
  return j;
}

}  // namespace vragt
