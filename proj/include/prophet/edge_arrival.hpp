#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prophet/adversary.hpp"
#include "prophet/core.hpp"
#include "prophet/distributions.hpp"

namespace prophet {

/// How the offline twins decide the R/S role of an edge's first eligible copy.
struct CoinSource {
  enum class Kind {
    coupled,  // heads iff the copy is the realization's real draw
    seeded,   // independent fair coins from `seed`
    heads,
    tails,
  };
  Kind kind = Kind::coupled;
  std::uint64_t seed = 0;

  static CoinSource coupled() { return {Kind::coupled, 0}; }
  static CoinSource seeded(std::uint64_t seed) { return {Kind::seeded, seed}; }
  static CoinSource all_heads() { return {Kind::heads, 0}; }
  static CoinSource all_tails() { return {Kind::tails, 0}; }
};

struct CoinFlip {
  EdgeId edge = kNoEdge;
  bool heads = false;
};

/// Online prophet matching under edge arrivals. Prices come from the greedy
/// matching on the samples; an arriving edge enters E' iff its real draw
/// beats both endpoint prices, and enters M iff additionally both endpoints
/// are still free.
class OnlineEdgeMatcher {
 public:
  OnlineEdgeMatcher(const InstanceSpec& spec, const Realization& real);

  void observe(EdgeId e);
  bool finished() const noexcept { return record_.arrivals.size() == arrived_.size(); }
  const PriceTable& prices() const noexcept { return record_.prices; }
  StateView view() const;
  /// Canonicalizes E' and M; call once after the last arrival.
  RunRecord finish() &&;

 private:
  const InstanceSpec& spec_;
  const Realization& real_;
  RunRecord record_;
  std::vector<char> arrived_;
  std::vector<char> matched_;
  std::vector<EdgeId> accepted_;
  std::vector<EdgeId> feasible_;
};

RunRecord run_online_edge(const InstanceSpec& spec, const Realization& real,
                          std::span<const EdgeId> order);
RunRecord run_online_edge(const InstanceSpec& spec, const Realization& real,
                          const OrderStrategy& strategy);

/// What the offline twin knows beyond the online record: the proof-level
/// quantities (considered edges, V', e_v, safe vertices) and the coins.
struct EdgeArrivalTrace {
  enum class Target { eprime, sample_matching };
  struct Consideration {
    EdgeId edge = kNoEdge;
    Target target = Target::eprime;
  };

  RunRecord record;
  /// The realization with the roles the coins assigned. Equal to the input
  /// under CoinSource::coupled.
  Realization induced;
  std::vector<Consideration> considered;  // additions to E' or M_S, scan order
  std::vector<char> in_v_prime;           // per vertex
  std::vector<EdgeId> e_v;                // per vertex; defined iff in V'
  std::vector<Vertex> safe;               // sorted
  std::vector<CoinFlip> coin_flips;

  bool first_considered_in_eprime(Vertex v) const;
  /// r_{e_v} when e_v landed in E', else 0.
  double e_v_value(Vertex v) const;
};

/// Offline coupled twin: scans all 2m draws in decreasing order, routing each
/// edge's first eligible copy by a coin, and extracts M from E' along `order`.
EdgeArrivalTrace run_offline_edge(const InstanceSpec& spec, const Realization& real,
                                  CoinSource coins, std::span<const EdgeId> order);

/// Vertices v in V' whose e_v = (u, v) lies in E', is v's only E'-edge, and
/// has no lower-ranked E'-edge at u.
std::vector<Vertex> safe_set(const EdgeArrivalTrace& trace, const InstanceSpec& spec);

/// Draws a realization, runs both twins (coupled coins) and compares E', M_S
/// and M including weights.
bool coupled_equivalence_check(const InstanceSpec& spec, std::uint64_t seed,
                               const OrderStrategy& strategy);
bool same_sets(const RunRecord& online, const RunRecord& offline);

/// Per-run sums of the quantities in the 16-competitiveness argument.
struct EdgeProofQuantities {
  double sum_val_eprime = 0.0;    // sum_v val_{E'}(v)
  double sum_e_v = 0.0;           // sum_v r_{e_v}
  double sum_safe_e_v = 0.0;      // sum_v r_{e_v} 1{safe}
  double w_sample_matching = 0.0; // w(M_S)
  double w_matching = 0.0;        // w(M)
  std::size_t v_prime = 0;        // |V'|
  std::size_t e_v_in_eprime = 0;  // |{v : e_v in E'}|
  std::size_t safe = 0;           // |safe|
};

EdgeProofQuantities edge_proof_quantities(const EdgeArrivalTrace& trace, const InstanceSpec& spec);

}  // namespace prophet
