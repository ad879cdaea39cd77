#pragma once

#include <cstdint>
#include <string>

#include "prophet/core.hpp"
#include "prophet/distributions.hpp"

namespace prophet {

Graph complete_graph(Vertex n);
/// Buyers 0..buyers-1, items buyers..buyers+items-1.
Graph complete_bipartite(Vertex buyers, Vertex items);
Graph random_gnp(Vertex n, double p, std::uint64_t seed);
/// Vertex 0 is the center, joined to the n-1 leaves.
Graph star_graph(Vertex n);
Graph path_graph(Vertex n);

/// Topology description: "complete:N", "bipartite:AxB", "gnp:N:P[:SEED]",
/// "star:N", "path:N". N always counts vertices.
struct GeneratorSpec {
  enum class Family { complete, bipartite, gnp, star, path };
  Family family = Family::complete;
  Vertex n = 0;
  Vertex items = 0;  // bipartite only
  double p = 0.5;    // gnp only
  std::uint64_t seed = 0;

  static GeneratorSpec parse(const std::string& text);
  std::string describe() const;
  Graph build() const;
};

/// Same distribution on every edge.
InstanceSpec make_instance(Graph graph, const DistSpec& dist);
InstanceSpec generate_instance(const GeneratorSpec& gen, const DistSpec& dist);

/// Small random instance with 2..max_vertices vertices and a randomly chosen
/// distribution per edge (all five families). Bipartite when requested.
InstanceSpec random_mixed_instance(std::uint64_t seed, Vertex max_vertices, bool bipartite);

}  // namespace prophet
