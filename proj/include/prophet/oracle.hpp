#pragma once

#include <cstddef>
#include <span>

#include "prophet/core.hpp"

namespace prophet {

/// Greedy matching under the total order: scan edges by decreasing rank and
/// keep each edge whose endpoints are both still free. Input edge order is
/// irrelevant. `values` is indexed by edge id.
Matching greedy_matching(const Graph& g, std::span<const DrawnValue> values);

struct OracleOptions {
  /// General graphs above this edge count have no exact solver.
  std::size_t exhaustive_cap = 24;
};

/// Maximum-weight matching. Bipartite graphs use the assignment solver;
/// general graphs use exhaustive enumeration up to `exhaustive_cap` edges and
/// raise CapabilityError beyond it.
Matching max_weight_matching(const Graph& g, std::span<const DrawnValue> values,
                             const OracleOptions& options = {});

/// Enumerates every matching by branching on the lowest undecided vertex.
/// Works on any graph; exponential in the worst case.
Matching exhaustive_max_weight_matching(const Graph& g, std::span<const DrawnValue> values);

/// Hungarian method on the buyer x item value matrix (missing edges are 0).
Matching assignment_max_weight_matching(const Graph& g, std::span<const DrawnValue> values);

}  // namespace prophet
