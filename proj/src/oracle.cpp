#include "prophet/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace prophet {

namespace {

void require_values(const Graph& g, std::span<const DrawnValue> values) {
  if (values.size() != static_cast<std::size_t>(g.edge_count())) {
    throw InputError("oracle: " + std::to_string(g.edge_count()) + " edges but " +
                     std::to_string(values.size()) + " values");
  }
}

struct Enumerator {
  const Graph& g;
  std::span<const DrawnValue> values;
  std::vector<char> decided;  // vertex already matched or skipped
  std::vector<EdgeId> current;
  std::vector<EdgeId> best;
  double current_weight = 0.0;
  double best_weight = -1.0;
  std::vector<double> best_incident;  // max incident value per vertex, for the bound

  double remaining_bound(Vertex from) const {
    double b = 0.0;
    for (Vertex v = from; v < g.vertex_count(); ++v) {
      if (!decided[static_cast<std::size_t>(v)]) b += best_incident[static_cast<std::size_t>(v)];
    }
    return 0.5 * b;
  }

  void run(Vertex from) {
    while (from < g.vertex_count() && decided[static_cast<std::size_t>(from)]) ++from;
    if (from == g.vertex_count()) {
      if (current_weight > best_weight) {
        best_weight = current_weight;
        best = current;
      }
      return;
    }
    if (current_weight + remaining_bound(from) <= best_weight) return;

    decided[static_cast<std::size_t>(from)] = 1;
    for (EdgeId e : g.incident(from)) {
      const Vertex w = g.edge(e).other(from);
      if (decided[static_cast<std::size_t>(w)]) continue;
      decided[static_cast<std::size_t>(w)] = 1;
      current.push_back(e);
      const double saved = current_weight;
      current_weight += values[static_cast<std::size_t>(e)].value;
      run(from + 1);
      current_weight = saved;
      current.pop_back();
      decided[static_cast<std::size_t>(w)] = 0;
    }
    run(from + 1);  // leave `from` unmatched
    decided[static_cast<std::size_t>(from)] = 0;
  }
};

}  // namespace

Matching greedy_matching(const Graph& g, std::span<const DrawnValue> values) {
  require_values(g, values);
  std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return ranks_above(values[static_cast<std::size_t>(a)], values[static_cast<std::size_t>(b)]);
  });
  std::vector<char> matched(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<EdgeId> chosen;
  for (EdgeId e : order) {
    const Edge& ed = g.edge(e);
    if (matched[static_cast<std::size_t>(ed.u)] || matched[static_cast<std::size_t>(ed.v)]) continue;
    matched[static_cast<std::size_t>(ed.u)] = matched[static_cast<std::size_t>(ed.v)] = 1;
    chosen.push_back(e);
  }
  return make_selection(std::move(chosen), values);
}

Matching exhaustive_max_weight_matching(const Graph& g, std::span<const DrawnValue> values) {
  require_values(g, values);
  Enumerator en{g, values, {}, {}, {}, 0.0, -1.0, {}};
  en.decided.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  en.best_incident.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const double w = values[static_cast<std::size_t>(e)].value;
    for (Vertex x : {ed.u, ed.v}) {
      auto& slot = en.best_incident[static_cast<std::size_t>(x)];
      slot = std::max(slot, w);
    }
  }
  en.run(0);
  return make_selection(std::move(en.best), values);
}

Matching assignment_max_weight_matching(const Graph& g, std::span<const DrawnValue> values) {
  require_values(g, values);
  if (!g.is_bipartite()) throw CapabilityError("assignment solver requires a bipartite graph");
  const auto buyers = g.buyers();
  const auto items = g.items();
  const std::size_t rows = buyers.size();
  const std::size_t cols = items.size();
  const std::size_t n = std::max(rows, cols);
  if (n == 0 || g.edge_count() == 0) return {};

  std::vector<std::size_t> row_of(static_cast<std::size_t>(g.vertex_count()));
  std::vector<std::size_t> col_of(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t r = 0; r < rows; ++r) row_of[static_cast<std::size_t>(buyers[r])] = r;
  for (std::size_t c = 0; c < cols; ++c) col_of[static_cast<std::size_t>(items[c])] = c;

  // cost = -value, 1-based arrays as in the classic potential formulation.
  std::vector<double> cost(n * n, 0.0);
  std::vector<EdgeId> edge_at(n * n, kNoEdge);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const std::size_t idx = row_of[static_cast<std::size_t>(ed.u)] * n +
                            col_of[static_cast<std::size_t>(ed.v)];
    cost[idx] = -values[static_cast<std::size_t>(e)].value;
    edge_at[idx] = e;
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<EdgeId> chosen;
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] == 0) continue;
    const EdgeId e = edge_at[(p[j] - 1) * n + (j - 1)];
    if (e != kNoEdge) chosen.push_back(e);
  }
  return make_selection(std::move(chosen), values);
}

Matching max_weight_matching(const Graph& g, std::span<const DrawnValue> values,
                             const OracleOptions& options) {
  require_values(g, values);
  if (g.is_bipartite()) return assignment_max_weight_matching(g, values);
  if (static_cast<std::size_t>(g.edge_count()) > options.exhaustive_cap) {
    throw CapabilityError("max_weight_matching: general graph with " +
                          std::to_string(g.edge_count()) + " edges exceeds the exhaustive cap of " +
                          std::to_string(options.exhaustive_cap));
  }
  return exhaustive_max_weight_matching(g, values);
}

}  // namespace prophet
