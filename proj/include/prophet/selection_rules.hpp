#pragma once

// Per-buyer choice rules of the vertex-arrival algorithms, shared by the
// algorithms themselves and by the adaptive adversaries that anticipate them.

#include <span>

#include "prophet/core.hpp"

namespace prophet {

/// True iff the draw beats both endpoint prices of `e`.
inline bool beats_both(const Graph& g, const PriceTable& prices, EdgeId e, const DrawnValue& d) {
  const Edge& ed = g.edge(e);
  return prices.beats(d, ed.u) && prices.beats(d, ed.v);
}

/// Offered price max{p_u, p_v} as a plain value.
inline double offered_price(const Graph& g, const PriceTable& prices, EdgeId e) {
  const Edge& ed = g.edge(e);
  const double pu = prices.price(ed.u);
  const double pv = prices.price(ed.v);
  return pu > pv ? pu : pv;
}

/// Highest-ranked incident edge of `buyer` whose value beats both prices
/// (item availability is not considered), or kNoEdge.
EdgeId best_price_feasible_edge(const Graph& g, const PriceTable& prices, Vertex buyer,
                                std::span<const DrawnValue> values);

/// Among incident edges that beat both prices and whose item is not yet
/// matched, the one maximizing value minus offered price; ties go to the
/// higher-ranked draw. Returns kNoEdge if no such edge exists.
EdgeId utility_maximizing_edge(const Graph& g, const PriceTable& prices, Vertex buyer,
                               std::span<const DrawnValue> values,
                               std::span<const char> item_matched);

}  // namespace prophet
