#include "prophet/experiment.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "prophet/edge_arrival.hpp"
#include "prophet/instance_io.hpp"
#include "prophet/stats.hpp"
#include "prophet/truthful.hpp"
#include "prophet/vertex_arrival.hpp"

namespace prophet {

void ExperimentConfig::validate() const {
  if (trials < 1) throw InputError("trials must be at least 1");
  instance.validate();
  if (model != ArrivalModel::edge && !instance.graph.is_bipartite()) {
    throw CapabilityError(std::string(to_string(model)) + " model requires a bipartite instance");
  }
  if (strategy.kind == OrderStrategy::Kind::fixed) {
    require_permutation(instance.graph, model, strategy.fixed_order);
  }
  if (strategy.is_adaptive() && strategy.policy == "starve-items" && model == ArrivalModel::edge) {
    throw InputError("adaptive:starve-items applies to the vertex and truthful models only");
  }
  if (!instance.graph.is_bipartite() &&
      static_cast<std::size_t>(instance.graph.edge_count()) > oracle.exhaustive_cap) {
    throw CapabilityError("instance has " + std::to_string(instance.graph.edge_count()) +
                          " edges; exact OPT for general graphs is capped at " +
                          std::to_string(oracle.exhaustive_cap));
  }
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) noexcept {
  return mix_seed(master, static_cast<std::uint64_t>(trial));
}

OrderStrategy strategy_for_trial(const OrderStrategy& base, std::uint64_t seed) {
  OrderStrategy s = base;
  if (s.kind == OrderStrategy::Kind::uniform_random) s.seed = mix_seed(seed ^ base.seed, 0x6f72646572ULL);
  return s;
}

TrialRow run_trial(const ExperimentConfig& config, std::size_t trial) {
  const InstanceSpec& spec = config.instance;
  const Graph& g = spec.graph;
  TrialRow row;
  row.trial = trial;
  row.seed = trial_seed(config.seed, trial);
  const Realization real = draw_realization(spec, row.seed);
  const OrderStrategy strategy = strategy_for_trial(config.strategy, row.seed);
  const auto reals = real.reals();
  const auto samples = real.samples();

  RunRecord rec;
  switch (config.model) {
    case ArrivalModel::edge: rec = run_online_edge(spec, real, strategy); break;
    case ArrivalModel::vertex: {
      rec = run_online_vertex(spec, real, strategy);
      row.w_msafe = build_msafe(g, rec.feasible_set, reals).weight;
      row.has_msafe = true;
      break;
    }
    case ArrivalModel::truthful: rec = run_truthful(spec, real, strategy).record; break;
  }
  row.w_alg = rec.matching.weight;
  row.w_ms = rec.sample_matching.weight;
  row.w_eprime = rec.feasible_weight;
  row.w_opt = max_weight_matching(g, reals, config.oracle).weight;
  row.w_opt_sample = max_weight_matching(g, samples, config.oracle).weight;
  row.valid_matchings = validate_matching(g, rec.matching) && validate_matching(g, rec.sample_matching);
  return row;
}

RatioEstimate summarize(const std::vector<TrialRow>& rows) {
  std::vector<double> alg, opt;
  alg.reserve(rows.size());
  opt.reserve(rows.size());
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (const TrialRow& r : rows) {
    alg.push_back(r.w_alg);
    opt.push_back(r.w_opt);
    if (r.w_alg > 0) {
      ratio_sum += r.w_opt / r.w_alg;
      ++ratio_count;
    }
  }
  const MeanSe a = mean_se(alg);
  const MeanSe o = mean_se(opt);
  RatioEstimate est;
  est.trials = rows.size();
  est.mean_alg = a.mean;
  est.mean_opt = o.mean;
  est.se_alg = a.se;
  est.se_opt = o.se;
  est.mean_of_ratios = ratio_count ? ratio_sum / static_cast<double>(ratio_count) : 0.0;
  if (a.mean > 0) {
    est.ratio = o.mean / a.mean;
  } else if (o.mean > 0) {
    est.ratio_infinite = true;
    est.ratio = std::numeric_limits<double>::infinity();
  } else {
    est.ratio_undefined = true;
    est.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

ExperimentResult estimate_ratio(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.rows.resize(config.trials);
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.trials)));
  if (threads == 1) {
    for (std::size_t t = 0; t < config.trials; ++t) result.rows[t] = run_trial(config, t);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < config.trials; t += threads) result.rows[t] = run_trial(config, t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  result.estimate = summarize(result.rows);
  return result;
}

std::string results_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "trial,seed,w_alg,w_opt,w_ms,w_eprime,w_msafe\n";
  for (const TrialRow& r : result.rows) {
    os << r.trial << ',' << r.seed << ',' << format_double(r.w_alg) << ','
       << format_double(r.w_opt) << ',' << format_double(r.w_ms) << ','
       << format_double(r.w_eprime) << ',';
    if (r.has_msafe) os << format_double(r.w_msafe);
    os << '\n';
  }
  return os.str();
}

nlohmann::json results_json(const ExperimentConfig& config, const ExperimentResult& result) {
  const RatioEstimate& e = result.estimate;
  nlohmann::json j;
  j["instance"] = config.instance_label;
  j["model"] = to_string(config.model);
  j["order"] = config.strategy.describe();
  j["trials"] = e.trials;
  j["seed"] = config.seed;
  j["mean_alg"] = e.mean_alg;
  j["mean_opt"] = e.mean_opt;
  j["se_alg"] = e.se_alg;
  j["se_opt"] = e.se_opt;
  j["mean_of_ratios"] = e.mean_of_ratios;
  if (e.ratio_undefined) {
    j["ratio"] = nullptr;
  } else if (e.ratio_infinite) {
    j["ratio"] = "inf";
  } else {
    j["ratio"] = e.ratio;
  }
  j["ratio_infinite"] = e.ratio_infinite;
  j["ratio_undefined"] = e.ratio_undefined;
  return j;
}

void save_results(const ExperimentConfig& config, const ExperimentResult& result,
                  const std::string& path, const std::string& format) {
  if (format == "csv") {
    write_file(path, results_csv(result));
  } else if (format == "json") {
    write_file(path, results_json(config, result).dump(2) + "\n");
  } else {
    throw InputError("unknown format '" + format + "' (expected csv|json)");
  }
}

}  // namespace prophet
