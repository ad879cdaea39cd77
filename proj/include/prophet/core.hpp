#pragma once

// Domain types shared by every algorithm: graphs, drawn values with their
// tie-break keys, realizations, matchings, prices and run records.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prophet {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;

// Error taxonomy. The CLI maps these onto exit codes 1 (invariant),
// 2 (input) and 3 (capability).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Drawn values and the strict total order

/// One draw from an edge distribution. `key` breaks exact value ties: among
/// equal values the draw with the smaller key is the larger one, which
/// realizes a uniformly random permutation of tied draws.
struct DrawnValue {
  double value = 0.0;
  std::uint64_t key = 0;

  friend bool operator==(const DrawnValue&, const DrawnValue&) = default;
};

enum class Ordering { less, greater };

/// True iff `a` ranks strictly above `b`. Never throws; a draw does not rank
/// above itself.
constexpr bool ranks_above(const DrawnValue& a, const DrawnValue& b) noexcept {
  if (a.value != b.value) return a.value > b.value;
  return a.key < b.key;
}

/// Strict three-way comparison. Two draws sharing a key violate the
/// realization invariant and are reported as fatal.
Ordering compare(const DrawnValue& a, const DrawnValue& b);

/// Comparator for sorting draws in decreasing rank.
struct RankDescending {
  constexpr bool operator()(const DrawnValue& a, const DrawnValue& b) const noexcept {
    return ranks_above(a, b);
  }
};

// ---------------------------------------------------------------------------
// Graph

enum class GraphKind { general, bipartite };

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
  bool touches(Vertex x) const noexcept { return x == u || x == v; }
};

/// Undirected simple graph with dense vertex ids 0..n-1 and edge ids 0..m-1.
/// A bipartite graph additionally carries its buyer/item partition; every
/// edge then lists the buyer as `u` and the item as `v`.
class Graph {
 public:
  Graph() = default;

  /// Validates: endpoints in range, no self-loops, no duplicate pairs.
  static Graph general(Vertex vertex_count, std::vector<Edge> edges);

  /// As `general`, plus every vertex is in exactly one of buyers/items and
  /// every edge joins a buyer to an item. Edges given item-first are
  /// normalized so that `u` is the buyer.
  static Graph bipartite(Vertex vertex_count, std::vector<Vertex> buyers,
                         std::vector<Vertex> items, std::vector<Edge> edges);

  GraphKind kind() const noexcept { return kind_; }
  bool is_bipartite() const noexcept { return kind_ == GraphKind::bipartite; }
  Vertex vertex_count() const noexcept { return vertex_count_; }
  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const EdgeId> incident(Vertex v) const {
    return incidence_.at(static_cast<std::size_t>(v));
  }

  std::span<const Vertex> buyers() const noexcept { return buyers_; }
  std::span<const Vertex> items() const noexcept { return items_; }
  bool is_buyer(Vertex v) const noexcept;

  bool contains_edge(EdgeId e) const noexcept { return e >= 0 && e < edge_count(); }

 private:
  void build_incidence();

  GraphKind kind_ = GraphKind::general;
  Vertex vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::vector<Vertex> buyers_;
  std::vector<Vertex> items_;
  std::vector<char> is_buyer_;
};

// ---------------------------------------------------------------------------
// Realization

/// Two draws per edge, in the roles sample (s_e) and real (r_e).
struct EdgeDraws {
  DrawnValue sample;
  DrawnValue real;

  friend bool operator==(const EdgeDraws&, const EdgeDraws&) = default;
};

class Realization {
 public:
  Realization() = default;
  /// Throws InvariantViolation if any two of the 2m keys coincide.
  explicit Realization(std::vector<EdgeDraws> draws);

  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(draws_.size()); }
  const EdgeDraws& at(EdgeId e) const { return draws_.at(static_cast<std::size_t>(e)); }
  const DrawnValue& sample(EdgeId e) const { return at(e).sample; }
  const DrawnValue& real(EdgeId e) const { return at(e).real; }
  std::span<const EdgeDraws> draws() const noexcept { return draws_; }

  std::vector<DrawnValue> samples() const;
  std::vector<DrawnValue> reals() const;

  friend bool operator==(const Realization&, const Realization&) = default;

 private:
  std::vector<EdgeDraws> draws_;
};

// ---------------------------------------------------------------------------
// Matchings and edge sets

/// Edge ids kept sorted ascending; weight is the sum of the member values in
/// that canonical order so that equal sets always carry bit-identical weights.
struct Matching {
  std::vector<EdgeId> edges;
  double weight = 0.0;

  bool contains(EdgeId e) const;
  std::size_t size() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }

  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Builds a Matching (or any weighted edge set) from ids and per-edge values.
Matching make_selection(std::vector<EdgeId> edges, std::span<const DrawnValue> values);

/// Canonical weight: members summed in ascending id order.
double selection_weight(std::span<const EdgeId> sorted_edges,
                        std::span<const DrawnValue> values);

/// True iff no vertex is covered twice. Unknown edge ids raise InputError.
bool validate_matching(const Graph& g, const Matching& m);
bool validate_matching(const Graph& g, std::span<const EdgeId> edges);

// ---------------------------------------------------------------------------
// Prices

/// Vertex thresholds derived from the greedy sample matching. A priced vertex
/// remembers the sample draw that set its price, so "r_e beats the price"
/// follows the same total order as every other comparison. An unpriced vertex
/// has price 0 and is beaten by every draw.
class PriceTable {
 public:
  PriceTable() = default;
  explicit PriceTable(Vertex vertex_count) : origin_(static_cast<std::size_t>(vertex_count)) {}

  void set(Vertex v, const DrawnValue& origin) { origin_.at(static_cast<std::size_t>(v)) = origin; }

  double price(Vertex v) const {
    const auto& o = origin_.at(static_cast<std::size_t>(v));
    return o ? o->value : 0.0;
  }
  const std::optional<DrawnValue>& origin(Vertex v) const {
    return origin_.at(static_cast<std::size_t>(v));
  }
  bool beats(const DrawnValue& d, Vertex v) const {
    const auto& o = origin(v);
    return !o || ranks_above(d, *o);
  }
  Vertex vertex_count() const noexcept { return static_cast<Vertex>(origin_.size()); }

  friend bool operator==(const PriceTable&, const PriceTable&) = default;

 private:
  std::vector<std::optional<DrawnValue>> origin_;
};

/// Prices from a sample matching: both endpoints of each matched edge get
/// that edge's sample draw; everything else stays at 0.
PriceTable prices_from_matching(const Graph& g, const Matching& sample_matching,
                                std::span<const DrawnValue> sample_values);

// ---------------------------------------------------------------------------
// Run records

enum class StepOutcome {
  accepted,          // entered E' and M
  feasible_blocked,  // entered E' but an endpoint was already matched
  below_price,       // failed a threshold
  no_feasible_item,  // vertex arrival: no incident edge beat both prices
};

const char* to_string(StepOutcome o) noexcept;

struct StepEvent {
  std::size_t step = 0;
  std::int32_t element = 0;  // arriving edge id or buyer id
  EdgeId edge = kNoEdge;     // edge the decision is about (ê / ẽ), if any
  double observed = 0.0;     // r_e of that edge
  double threshold = 0.0;    // max{p_u, p_v} (plain value)
  StepOutcome outcome = StepOutcome::below_price;
};

struct RunRecord {
  Matching matching;                 // M or M_T
  std::vector<EdgeId> feasible_set;  // E', sorted ascending
  double feasible_weight = 0.0;
  Matching sample_matching;          // M_S
  PriceTable prices;
  std::vector<std::int32_t> arrivals;  // realized arrival sequence
  std::vector<StepEvent> events;
};

}  // namespace prophet
