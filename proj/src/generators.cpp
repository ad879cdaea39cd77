#include "prophet/generators.hpp"

#include <cstdlib>
#include <random>
#include <sstream>
#include <vector>

namespace prophet {

Graph complete_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::general(n, std::move(edges));
}

Graph complete_bipartite(Vertex buyers, Vertex items) {
  std::vector<Vertex> bs, is;
  std::vector<Edge> edges;
  for (Vertex b = 0; b < buyers; ++b) bs.push_back(b);
  for (Vertex j = 0; j < items; ++j) is.push_back(buyers + j);
  for (Vertex b : bs) {
    for (Vertex j : is) edges.push_back({b, j});
  }
  return Graph::bipartite(buyers + items, std::move(bs), std::move(is), std::move(edges));
}

Graph random_gnp(Vertex n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("gnp: p must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (unit_interval(rng()) < p) edges.push_back({u, v});
    }
  }
  return Graph::general(n, std::move(edges));
}

Graph star_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v});
  return Graph::general(n, std::move(edges));
}

Graph path_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::general(n, std::move(edges));
}

namespace {

long parse_int(const std::string& tok, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || end != tok.c_str() + tok.size() || v < 0) {
    throw InputError("generator '" + text + "': bad integer '" + tok + "'");
  }
  return v;
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() < 2) throw InputError("generator '" + text + "': expected family:size");
  GeneratorSpec g;
  const std::string& fam = parts[0];
  if (fam == "complete" || fam == "star" || fam == "path") {
    if (parts.size() != 2) throw InputError("generator '" + text + "': expected " + fam + ":N");
    g.family = fam == "complete" ? Family::complete : fam == "star" ? Family::star : Family::path;
    g.n = static_cast<Vertex>(parse_int(parts[1], text));
  } else if (fam == "bipartite") {
    const auto x = parts[1].find('x');
    if (parts.size() != 2 || x == std::string::npos) {
      throw InputError("generator '" + text + "': expected bipartite:AxB");
    }
    g.family = Family::bipartite;
    g.n = static_cast<Vertex>(parse_int(parts[1].substr(0, x), text));
    g.items = static_cast<Vertex>(parse_int(parts[1].substr(x + 1), text));
  } else if (fam == "gnp") {
    if (parts.size() < 3 || parts.size() > 4) {
      throw InputError("generator '" + text + "': expected gnp:N:P[:SEED]");
    }
    g.family = Family::gnp;
    g.n = static_cast<Vertex>(parse_int(parts[1], text));
    char* end = nullptr;
    g.p = std::strtod(parts[2].c_str(), &end);
    if (end != parts[2].c_str() + parts[2].size() || parts[2].empty() || !(g.p >= 0.0 && g.p <= 1.0)) {
      throw InputError("generator '" + text + "': p must be a number in [0,1]");
    }
    if (parts.size() == 4) g.seed = static_cast<std::uint64_t>(parse_int(parts[3], text));
  } else {
    throw InputError("unknown generator family '" + fam + "'");
  }
  return g;
}

std::string GeneratorSpec::describe() const {
  switch (family) {
    case Family::complete: return "complete:" + std::to_string(n);
    case Family::bipartite: return "bipartite:" + std::to_string(n) + "x" + std::to_string(items);
    case Family::gnp: {
      std::ostringstream os;
      os << "gnp:" << n << ':' << p << ':' << seed;
      return os.str();
    }
    case Family::star: return "star:" + std::to_string(n);
    case Family::path: return "path:" + std::to_string(n);
  }
  return "unknown";
}

Graph GeneratorSpec::build() const {
  switch (family) {
    case Family::complete: return complete_graph(n);
    case Family::bipartite: return complete_bipartite(n, items);
    case Family::gnp: return random_gnp(n, p, seed);
    case Family::star: return star_graph(n);
    case Family::path: return path_graph(n);
  }
  return {};
}

InstanceSpec make_instance(Graph graph, const DistSpec& dist) {
  dist.validate();
  InstanceSpec spec;
  spec.dists.assign(static_cast<std::size_t>(graph.edge_count()), dist);
  spec.graph = std::move(graph);
  return spec;
}

InstanceSpec generate_instance(const GeneratorSpec& gen, const DistSpec& dist) {
  return make_instance(gen.build(), dist);
}

InstanceSpec random_mixed_instance(std::uint64_t seed, Vertex max_vertices, bool bipartite) {
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto u01 = [&] { return unit_interval(rng()); };

  Graph g;
  if (bipartite) {
    const int total = uniform_int(2, max_vertices);
    const int buyers = uniform_int(1, total - 1);
    std::vector<Vertex> bs, is;
    for (Vertex v = 0; v < total; ++v) (v < buyers ? bs : is).push_back(v);
    const double p = 0.3 + 0.7 * u01();
    std::vector<Edge> edges;
    for (Vertex b : bs) {
      for (Vertex j : is) {
        if (u01() < p) edges.push_back({b, j});
      }
    }
    g = Graph::bipartite(total, std::move(bs), std::move(is), std::move(edges));
  } else {
    const int n = uniform_int(2, max_vertices);
    g = random_gnp(n, 0.3 + 0.7 * u01(), rng());
  }

  InstanceSpec spec;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    switch (uniform_int(0, 4)) {
      case 0: spec.dists.push_back(DistSpec::point_mass(static_cast<double>(uniform_int(0, 3)))); break;
      case 1: spec.dists.push_back(DistSpec::uniform(0.0, 1.0 + 4.0 * u01())); break;
      case 2: spec.dists.push_back(DistSpec::exponential(0.5 + u01())); break;
      case 3: spec.dists.push_back(DistSpec::pareto(1.0, 1.5 + 2.0 * u01())); break;
      default:
        spec.dists.push_back(DistSpec::bernoulli_scaled(u01(), static_cast<double>(uniform_int(1, 5))));
        break;
    }
  }
  spec.graph = std::move(g);
  return spec;
}

}  // namespace prophet
