#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "prophet/core.hpp"
#include "prophet/distributions.hpp"

namespace prophet {

/// Which online process is consuming arrivals. Edge arrivals release edge
/// ids; vertex and truthful arrivals release buyer vertex ids.
enum class ArrivalModel { edge, vertex, truthful };

const char* to_string(ArrivalModel m) noexcept;
ArrivalModel parse_model(const std::string& name);

/// What an adaptive adversary may look at: the full realization plus the
/// algorithm's public state. Coin futures and RNG state are not exposed.
struct StateView {
  ArrivalModel model = ArrivalModel::edge;
  const InstanceSpec* spec = nullptr;
  const Realization* realization = nullptr;
  const PriceTable* prices = nullptr;
  std::span<const char> arrived;     // per element (edge id or vertex id)
  std::span<const char> matched;     // per vertex, covered by the output matching
  std::span<const EdgeId> accepted;  // output matching so far, arrival order
  std::span<const EdgeId> feasible;  // E' so far, arrival order
};

using AdaptivePolicy = std::function<std::int32_t(const StateView&)>;

struct OrderStrategy {
  enum class Kind { fixed, uniform_random, weight_decreasing, weight_increasing, adaptive };

  Kind kind = Kind::uniform_random;
  std::vector<std::int32_t> fixed_order;
  std::uint64_t seed = 0;
  std::string policy;     // "block-best", "starve-items" or "custom"
  AdaptivePolicy custom;  // used when policy == "custom"

  static OrderStrategy fixed(std::vector<std::int32_t> order);
  static OrderStrategy uniform_random(std::uint64_t seed);
  static OrderStrategy weight_decreasing();
  static OrderStrategy weight_increasing();
  static OrderStrategy adaptive(std::string policy);
  static OrderStrategy adaptive(AdaptivePolicy policy);

  bool is_adaptive() const noexcept { return kind == Kind::adaptive; }

  /// Accepts "fixed:2,0,1", "random", "random:SEED", "inc", "dec",
  /// "adaptive:<policy>".
  static OrderStrategy parse(const std::string& text);
  std::string describe() const;
};

/// The elements that arrive under `model`: all edge ids, or the buyers.
std::vector<std::int32_t> arriving_elements(const Graph& g, ArrivalModel model);

/// Per-run sequencer. Non-adaptive strategies are resolved to a full order up
/// front; adaptive ones consult the policy at each step. Either way each
/// element is handed out exactly once.
class ArrivalSequencer {
 public:
  ArrivalSequencer(const OrderStrategy& strategy, const InstanceSpec& spec,
                   const Realization& realization, ArrivalModel model);

  /// Next element to arrive. A policy that picks an element that already
  /// arrived (or does not exist) raises InvariantViolation.
  std::int32_t next(const StateView& view);
  bool done() const noexcept { return handed_out_ == elements_.size(); }
  std::size_t remaining() const noexcept { return elements_.size() - handed_out_; }

 private:
  OrderStrategy strategy_;
  const InstanceSpec& spec_;
  const Realization& realization_;
  ArrivalModel model_;
  std::vector<std::int32_t> elements_;
  std::vector<std::int32_t> planned_;
  std::vector<char> issued_;
  std::size_t handed_out_ = 0;
};

/// One step of the adversary: the spec-level entry point.
inline std::int32_t next_arrival(ArrivalSequencer& sequencer, const StateView& view) {
  return sequencer.next(view);
}

/// Resolves a non-adaptive strategy to the concrete order it produces.
std::vector<std::int32_t> materialize_order(const OrderStrategy& strategy, const InstanceSpec& spec,
                                            const Realization& realization, ArrivalModel model);

/// Throws InputError unless `order` permutes the arriving elements.
void require_permutation(const Graph& g, ArrivalModel model, std::span<const std::int32_t> order);

// Shipped adaptive policies.
std::int32_t block_best_policy(const StateView& view);
std::int32_t starve_items_policy(const StateView& view);

}  // namespace prophet
