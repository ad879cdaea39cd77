#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prophet/adversary.hpp"
#include "prophet/core.hpp"
#include "prophet/distributions.hpp"
#include "prophet/edge_arrival.hpp"

namespace prophet {

/// Online bipartite prophet matching with buyer arrivals. Each arriving
/// buyer picks its highest-ranked edge among those beating both prices; that
/// edge enters E' and enters M iff its item is still free.
class OnlineVertexMatcher {
 public:
  OnlineVertexMatcher(const InstanceSpec& spec, const Realization& real);

  void observe(Vertex buyer);
  const PriceTable& prices() const noexcept { return record_.prices; }
  StateView view() const;
  RunRecord finish() &&;

 private:
  const InstanceSpec& spec_;
  const Realization& real_;
  std::vector<DrawnValue> reals_;
  RunRecord record_;
  std::vector<char> arrived_;
  std::vector<char> matched_;
  std::vector<EdgeId> accepted_;
  std::vector<EdgeId> feasible_;
};

RunRecord run_online_vertex(const InstanceSpec& spec, const Realization& real,
                            std::span<const Vertex> order);
RunRecord run_online_vertex(const InstanceSpec& spec, const Realization& real,
                            const OrderStrategy& strategy);

struct VertexArrivalTrace {
  RunRecord record;
  Realization induced;
  Matching m_safe;
  std::vector<Vertex> buyers_r;   // final I^R
  std::vector<Vertex> buyers_s;   // final I^S
  std::vector<Vertex> items_s;    // final J^S
  std::vector<CoinFlip> coin_flips;
};

/// Offline twin of the buyer-arrival algorithm. `order` is the buyer arrival
/// order used to extract M from the (buyer-unique) E'.
VertexArrivalTrace run_offline_vertex(const InstanceSpec& spec, const Realization& real,
                                      CoinSource coins, std::span<const Vertex> order);

/// Per item, the highest-ranked incident edge of `eprime`.
Matching build_msafe(const Graph& g, std::span<const EdgeId> eprime,
                     std::span<const DrawnValue> reals);
Matching build_msafe(const VertexArrivalTrace& trace, const InstanceSpec& spec);

bool coupled_vertex_equivalence_check(const InstanceSpec& spec, std::uint64_t seed,
                                      const OrderStrategy& strategy);

}  // namespace prophet
