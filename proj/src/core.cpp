#include "prophet/core.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace prophet {

Ordering compare(const DrawnValue& a, const DrawnValue& b) {
  if (a.key == b.key) {
    throw InvariantViolation("compare: two draws share tie-break key " + std::to_string(a.key));
  }
  return ranks_above(a, b) ? Ordering::greater : Ordering::less;
}

namespace {

std::uint64_t pair_code(Vertex u, Vertex v) {
  const auto lo = static_cast<std::uint64_t>(std::min(u, v));
  const auto hi = static_cast<std::uint64_t>(std::max(u, v));
  return (lo << 32) | hi;
}

void check_simple(Vertex n, const std::vector<Edge>& edges) {
  if (n < 0) throw InputError("graph: negative vertex count");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::string where = "edge " + std::to_string(i);
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InputError(where + ": endpoint out of range");
    }
    if (e.u == e.v) throw InputError(where + ": self-loop on vertex " + std::to_string(e.u));
    if (!seen.insert(pair_code(e.u, e.v)).second) {
      throw InputError(where + ": duplicate edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    }
  }
}

}  // namespace

Graph Graph::general(Vertex vertex_count, std::vector<Edge> edges) {
  check_simple(vertex_count, edges);
  Graph g;
  g.kind_ = GraphKind::general;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  g.build_incidence();
  return g;
}

Graph Graph::bipartite(Vertex vertex_count, std::vector<Vertex> buyers,
                       std::vector<Vertex> items, std::vector<Edge> edges) {
  check_simple(vertex_count, edges);
  std::vector<int> side(static_cast<std::size_t>(std::max(vertex_count, 0)), 0);
  auto assign = [&](const std::vector<Vertex>& vs, int tag, const char* name) {
    for (Vertex v : vs) {
      if (v < 0 || v >= vertex_count) {
        throw InputError(std::string(name) + ": vertex " + std::to_string(v) + " out of range");
      }
      if (side[static_cast<std::size_t>(v)] != 0) {
        throw InputError(std::string(name) + ": vertex " + std::to_string(v) +
                         " listed more than once");
      }
      side[static_cast<std::size_t>(v)] = tag;
    }
  };
  assign(buyers, 1, "buyers");
  assign(items, 2, "items");
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (side[static_cast<std::size_t>(v)] == 0) {
      throw InputError("bipartite graph: vertex " + std::to_string(v) +
                       " is neither buyer nor item");
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge& e = edges[i];
    const int su = side[static_cast<std::size_t>(e.u)];
    const int sv = side[static_cast<std::size_t>(e.v)];
    if (su == sv) {
      throw InputError("edge " + std::to_string(i) + ": both endpoints are " +
                       (su == 1 ? "buyers" : "items"));
    }
    if (su == 2) std::swap(e.u, e.v);
  }
  Graph g;
  g.kind_ = GraphKind::bipartite;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  std::sort(buyers.begin(), buyers.end());
  std::sort(items.begin(), items.end());
  g.buyers_ = std::move(buyers);
  g.items_ = std::move(items);
  g.is_buyer_.assign(static_cast<std::size_t>(vertex_count), 0);
  for (Vertex b : g.buyers_) g.is_buyer_[static_cast<std::size_t>(b)] = 1;
  g.build_incidence();
  return g;
}

bool Graph::is_buyer(Vertex v) const noexcept {
  return is_bipartite() && v >= 0 && v < vertex_count_ && is_buyer_[static_cast<std::size_t>(v)];
}

void Graph::build_incidence() {
  incidence_.assign(static_cast<std::size_t>(vertex_count_), {});
  for (EdgeId e = 0; e < edge_count(); ++e) {
    incidence_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].u)].push_back(e);
    incidence_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].v)].push_back(e);
  }
}

Realization::Realization(std::vector<EdgeDraws> draws) : draws_(std::move(draws)) {
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(draws_.size() * 2);
  for (const auto& d : draws_) {
    if (!keys.insert(d.sample.key).second || !keys.insert(d.real.key).second) {
      throw InvariantViolation("realization: duplicate tie-break key");
    }
  }
}

std::vector<DrawnValue> Realization::samples() const {
  std::vector<DrawnValue> out;
  out.reserve(draws_.size());
  for (const auto& d : draws_) out.push_back(d.sample);
  return out;
}

std::vector<DrawnValue> Realization::reals() const {
  std::vector<DrawnValue> out;
  out.reserve(draws_.size());
  for (const auto& d : draws_) out.push_back(d.real);
  return out;
}

bool Matching::contains(EdgeId e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

double selection_weight(std::span<const EdgeId> sorted_edges,
                        std::span<const DrawnValue> values) {
  double w = 0.0;
  for (EdgeId e : sorted_edges) w += values[static_cast<std::size_t>(e)].value;
  return w;
}

Matching make_selection(std::vector<EdgeId> edges, std::span<const DrawnValue> values) {
  std::sort(edges.begin(), edges.end());
  Matching m;
  m.weight = selection_weight(edges, values);
  m.edges = std::move(edges);
  return m;
}

bool validate_matching(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
  bool ok = true;
  for (EdgeId e : edges) {
    if (!g.contains_edge(e)) throw InputError("matching: unknown edge id " + std::to_string(e));
    const Edge& ed = g.edge(e);
    for (Vertex x : {ed.u, ed.v}) {
      char& slot = used[static_cast<std::size_t>(x)];
      if (slot) ok = false;
      slot = 1;
    }
  }
  return ok;
}

bool validate_matching(const Graph& g, const Matching& m) {
  return validate_matching(g, std::span<const EdgeId>(m.edges));
}

PriceTable prices_from_matching(const Graph& g, const Matching& sample_matching,
                                std::span<const DrawnValue> sample_values) {
  PriceTable prices(g.vertex_count());
  for (EdgeId e : sample_matching.edges) {
    const Edge& ed = g.edge(e);
    prices.set(ed.u, sample_values[static_cast<std::size_t>(e)]);
    prices.set(ed.v, sample_values[static_cast<std::size_t>(e)]);
  }
  return prices;
}

const char* to_string(StepOutcome o) noexcept {
  switch (o) {
    case StepOutcome::accepted: return "accepted";
    case StepOutcome::feasible_blocked: return "feasible_blocked";
    case StepOutcome::below_price: return "below_price";
    case StepOutcome::no_feasible_item: return "no_feasible_item";
  }
  return "unknown";
}

}  // namespace prophet
