#include "prophet/selection_rules.hpp"

namespace prophet {

EdgeId best_price_feasible_edge(const Graph& g, const PriceTable& prices, Vertex buyer,
                                std::span<const DrawnValue> values) {
  EdgeId best = kNoEdge;
  for (EdgeId e : g.incident(buyer)) {
    const DrawnValue& d = values[static_cast<std::size_t>(e)];
    if (!beats_both(g, prices, e, d)) continue;
    if (best == kNoEdge || ranks_above(d, values[static_cast<std::size_t>(best)])) best = e;
  }
  return best;
}

EdgeId utility_maximizing_edge(const Graph& g, const PriceTable& prices, Vertex buyer,
                               std::span<const DrawnValue> values,
                               std::span<const char> item_matched) {
  EdgeId best = kNoEdge;
  double best_utility = 0.0;
  for (EdgeId e : g.incident(buyer)) {
    const DrawnValue& d = values[static_cast<std::size_t>(e)];
    if (item_matched[static_cast<std::size_t>(g.edge(e).other(buyer))]) continue;
    if (!beats_both(g, prices, e, d)) continue;
    const double utility = d.value - offered_price(g, prices, e);
    if (best == kNoEdge || utility > best_utility ||
        (utility == best_utility && ranks_above(d, values[static_cast<std::size_t>(best)]))) {
      best = e;
      best_utility = utility;
    }
  }
  return best;
}

}  // namespace prophet
