#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "prophet/edge_arrival.hpp"
#include "prophet/experiment.hpp"

namespace prophet {

/// Offline edge-arrival run with independent coins. The arrival order is
/// resolved against the induced realization (coins fix the roles before any
/// order is needed), so adaptive strategies see the same values the online
/// process would.
struct EdgeProofTrial {
  EdgeProofQuantities q;
  double w_opt = 0.0;  // OPT on the induced real values
};

std::vector<EdgeProofTrial> edge_proof_trials(const InstanceSpec& spec, const OrderStrategy& strategy,
                                              std::size_t trials, std::uint64_t seed,
                                              const OracleOptions& oracle = {});

struct VertexProofTrial {
  double w_matching = 0.0;
  double w_msafe = 0.0;
  double w_sample_matching = 0.0;
  double w_eprime = 0.0;
  double w_opt = 0.0;
  bool buyer_unique = true;   // at most one E'-edge per buyer
  bool chain_holds = true;    // w(M) <= w(M_safe) <= w(E')
};

std::vector<VertexProofTrial> vertex_proof_trials(const InstanceSpec& spec,
                                                  const OrderStrategy& strategy, std::size_t trials,
                                                  std::uint64_t seed, const OracleOptions& oracle = {});

struct InvariantResult {
  std::string name;
  bool exact = false;  // per-realization property (zero tolerance) vs statistical gate
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // >= 0 when passing
  std::string detail;
  bool advisory = false;  // reported, not counted by all_passed()
};

struct InvariantReport {
  std::vector<InvariantResult> results;
  bool all_passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Proof-level expectation gates for the edge and vertex models, from
/// offline runs with independent coins. Empty for the truthful model.
std::vector<InvariantResult> proof_invariants(const ExperimentConfig& config);

/// Every registered invariant for the configured model and instance at the
/// configured trial count, plus a coupling sweep over small random instances.
InvariantReport run_invariant_suite(const ExperimentConfig& config,
                                    std::size_t coupling_instances = 1000);

/// Exact coupling over `instances` random mixed instances (n <= 8) for both
/// arrival models, cycling random, fixed, monotone and adaptive orders.
/// Returns the number of mismatches.
std::size_t coupling_sweep(std::size_t instances, std::uint64_t seed);

/// Greedy 2-approximation on sample values: 2 * w(greedy) >= w(OPT), with a
/// relative allowance for floating-point summation.
bool greedy_two_approx_holds(double w_greedy, double w_opt);

}  // namespace prophet
