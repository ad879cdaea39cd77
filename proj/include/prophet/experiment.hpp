#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "prophet/adversary.hpp"
#include "prophet/distributions.hpp"
#include "prophet/oracle.hpp"

namespace prophet {

struct ExperimentConfig {
  InstanceSpec instance;
  std::string instance_label;  // file path or generator description, for reports
  ArrivalModel model = ArrivalModel::edge;
  OrderStrategy strategy;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  OracleOptions oracle;
  unsigned threads = 1;

  /// Throws InputError (trials, strategy) or CapabilityError (model vs graph).
  void validate() const;
};

/// Seeds derived from the master seed by trial index.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) noexcept;
/// Per-trial strategy: uniform_random gets a fresh seed from the trial seed.
OrderStrategy strategy_for_trial(const OrderStrategy& base, std::uint64_t trial_seed);

struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double w_alg = 0.0;      // w(M) or w(M_T)
  double w_opt = 0.0;      // OPT on real values
  double w_ms = 0.0;       // greedy on samples
  double w_eprime = 0.0;   // price-feasible set
  double w_msafe = 0.0;    // vertex model only
  bool has_msafe = false;
  double w_opt_sample = 0.0;  // OPT on samples, for the greedy 2-approx check
  bool valid_matchings = true;
};

struct RatioEstimate {
  double mean_alg = 0.0;
  double mean_opt = 0.0;
  double ratio = 0.0;  // mean_opt / mean_alg
  double se_alg = 0.0;
  double se_opt = 0.0;
  double mean_of_ratios = 0.0;  // diagnostic only; trials with w_alg = 0 skipped
  std::size_t trials = 0;
  bool ratio_infinite = false;   // mean_alg = 0 < mean_opt
  bool ratio_undefined = false;  // both means 0
};

struct ExperimentResult {
  RatioEstimate estimate;
  std::vector<TrialRow> rows;
};

/// One trial: draw, run the configured online process, compute OPT.
TrialRow run_trial(const ExperimentConfig& config, std::size_t trial);

/// Runs every trial (in parallel when threads > 1) and reduces in trial order,
/// so the result does not depend on scheduling.
ExperimentResult estimate_ratio(const ExperimentConfig& config);
RatioEstimate summarize(const std::vector<TrialRow>& rows);

/// "trial,seed,w_alg,w_opt,w_ms,w_eprime,w_msafe" with round-trip doubles.
std::string results_csv(const ExperimentResult& result);
nlohmann::json results_json(const ExperimentConfig& config, const ExperimentResult& result);
/// format is "csv" or "json".
void save_results(const ExperimentConfig& config, const ExperimentResult& result,
                  const std::string& path, const std::string& format);

}  // namespace prophet
