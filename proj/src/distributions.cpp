#include "prophet/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

namespace prophet {

const char* to_string(DistFamily f) noexcept {
  switch (f) {
    case DistFamily::point_mass: return "point_mass";
    case DistFamily::uniform: return "uniform";
    case DistFamily::exponential: return "exponential";
    case DistFamily::pareto: return "pareto";
    case DistFamily::bernoulli_scaled: return "bernoulli_scaled";
  }
  return "unknown";
}

DistFamily parse_family(const std::string& name) {
  for (DistFamily f : {DistFamily::point_mass, DistFamily::uniform, DistFamily::exponential,
                       DistFamily::pareto, DistFamily::bernoulli_scaled}) {
    if (name == to_string(f)) return f;
  }
  throw InputError("unknown distribution family '" + name + "'");
}

namespace {

std::size_t arity(DistFamily f) {
  switch (f) {
    case DistFamily::point_mass:
    case DistFamily::exponential: return 1;
    default: return 2;
  }
}

}  // namespace

void DistSpec::validate() const {
  const std::string name = to_string(family);
  if (params.size() != arity(family)) {
    throw InputError(name + ": expected " + std::to_string(arity(family)) + " parameter(s), got " +
                     std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw InputError(name + ": parameters must be finite");
  }
  switch (family) {
    case DistFamily::point_mass:
      if (params[0] < 0) throw InputError("point_mass: value must be non-negative");
      break;
    case DistFamily::uniform:
      if (params[0] < 0) throw InputError("uniform: lo must be non-negative");
      if (params[0] > params[1]) throw InputError("uniform: requires lo <= hi");
      break;
    case DistFamily::exponential:
      if (params[0] <= 0) throw InputError("exponential: rate must be positive");
      break;
    case DistFamily::pareto:
      if (params[0] <= 0 || params[1] <= 0) {
        throw InputError("pareto: scale and shape must be positive");
      }
      break;
    case DistFamily::bernoulli_scaled:
      if (params[0] < 0 || params[0] > 1) throw InputError("bernoulli_scaled: p must be in [0,1]");
      if (params[1] < 0) throw InputError("bernoulli_scaled: value must be non-negative");
      break;
  }
}

double DistSpec::quantile(double u) const {
  switch (family) {
    case DistFamily::point_mass: return params[0];
    case DistFamily::uniform: return params[0] + (params[1] - params[0]) * u;
    case DistFamily::exponential: return -std::log1p(-u) / params[0];
    case DistFamily::pareto: return params[0] / std::pow(1.0 - u, 1.0 / params[1]);
    case DistFamily::bernoulli_scaled: return u < params[0] ? params[1] : 0.0;
  }
  return 0.0;
}

double DistSpec::cdf(double x) const {
  switch (family) {
    case DistFamily::point_mass: return x >= params[0] ? 1.0 : 0.0;
    case DistFamily::uniform:
      if (params[1] == params[0]) return x >= params[0] ? 1.0 : 0.0;
      return std::clamp((x - params[0]) / (params[1] - params[0]), 0.0, 1.0);
    case DistFamily::exponential: return x <= 0 ? 0.0 : -std::expm1(-params[0] * x);
    case DistFamily::pareto: return x <= params[0] ? 0.0 : 1.0 - std::pow(params[0] / x, params[1]);
    case DistFamily::bernoulli_scaled:
      if (x < 0) return 0.0;
      if (params[1] == 0) return 1.0;
      return x >= params[1] ? 1.0 : 1.0 - params[0];
  }
  return 0.0;
}

double DistSpec::mean() const {
  switch (family) {
    case DistFamily::point_mass: return params[0];
    case DistFamily::uniform: return 0.5 * (params[0] + params[1]);
    case DistFamily::exponential: return 1.0 / params[0];
    case DistFamily::pareto:
      if (params[1] <= 1) return std::numeric_limits<double>::infinity();
      return params[1] * params[0] / (params[1] - 1.0);
    case DistFamily::bernoulli_scaled: return params[0] * params[1];
  }
  return 0.0;
}

DistSpec parse_dist(const std::string& text) {
  const auto colon = text.find(':');
  DistSpec d;
  d.family = parse_family(text.substr(0, colon));
  d.params.clear();
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size()) {
        throw InputError("distribution '" + text + "': bad parameter '" + tok + "'");
      }
      d.params.push_back(v);
    }
  }
  d.validate();
  return d;
}

std::string format_dist(const DistSpec& d) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(d.family);
  for (std::size_t i = 0; i < d.params.size(); ++i) os << (i == 0 ? ':' : ',') << d.params[i];
  return os.str();
}

void InstanceSpec::validate() const {
  if (dists.size() != static_cast<std::size_t>(graph.edge_count())) {
    throw InputError("instance: " + std::to_string(graph.edge_count()) + " edges but " +
                     std::to_string(dists.size()) + " distributions");
  }
  for (std::size_t i = 0; i < dists.size(); ++i) {
    try {
      dists[i].validate();
    } catch (const InputError& err) {
      throw InputError("edge " + std::to_string(i) + ": " + err.what());
    }
  }
}

bool operator==(const InstanceSpec& a, const InstanceSpec& b) {
  const Graph& ga = a.graph;
  const Graph& gb = b.graph;
  if (ga.kind() != gb.kind() || ga.vertex_count() != gb.vertex_count() ||
      ga.edge_count() != gb.edge_count()) {
    return false;
  }
  for (EdgeId e = 0; e < ga.edge_count(); ++e) {
    if (ga.edge(e).u != gb.edge(e).u || ga.edge(e).v != gb.edge(e).v) return false;
  }
  return std::ranges::equal(ga.buyers(), gb.buyers()) &&
         std::ranges::equal(ga.items(), gb.items()) && a.dists == b.dists;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  return splitmix64(splitmix64(seed) ^ (salt * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
}

double unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, const Edge& e, std::uint64_t copy) {
  const auto lo = static_cast<std::uint64_t>(std::min(e.u, e.v));
  const auto hi = static_cast<std::uint64_t>(std::max(e.u, e.v));
  return mix_seed(mix_seed(mix_seed(seed, lo), hi), copy);
}

}  // namespace

Realization draw_realization(const InstanceSpec& spec, std::uint64_t seed) {
  spec.validate();
  const EdgeId m = spec.graph.edge_count();
  std::vector<EdgeDraws> draws(static_cast<std::size_t>(m));
  std::vector<std::mt19937_64> streams;
  streams.reserve(static_cast<std::size_t>(2 * m));
  for (EdgeId e = 0; e < m; ++e) {
    const DistSpec& dist = spec.dists[static_cast<std::size_t>(e)];
    for (std::uint64_t copy = 0; copy < 2; ++copy) {
      std::mt19937_64 rng(stream_seed(seed, spec.graph.edge(e), copy));
      DrawnValue d;
      d.key = rng();
      d.value = dist.quantile(unit_interval(rng()));
      auto& slot = draws[static_cast<std::size_t>(e)];
      (copy == 0 ? slot.sample : slot.real) = d;
      streams.push_back(std::move(rng));
    }
  }

  // Resolve key collisions by redrawing from the colliding copy's own stream,
  // visiting edges in canonical endpoint order so the fix-up is also
  // independent of edge-list order.
  std::vector<EdgeId> canonical(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) canonical[static_cast<std::size_t>(e)] = e;
  auto code = [&](EdgeId e) {
    const Edge& ed = spec.graph.edge(e);
    return std::pair(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
  };
  std::sort(canonical.begin(), canonical.end(),
            [&](EdgeId a, EdgeId b) { return code(a) < code(b); });
  std::unordered_set<std::uint64_t> used;
  used.reserve(static_cast<std::size_t>(2 * m));
  for (EdgeId e : canonical) {
    for (int copy = 0; copy < 2; ++copy) {
      auto& slot = draws[static_cast<std::size_t>(e)];
      DrawnValue& d = copy == 0 ? slot.sample : slot.real;
      auto& rng = streams[static_cast<std::size_t>(2 * e + copy)];
      while (!used.insert(d.key).second) d.key = rng();
    }
  }
  return Realization(std::move(draws));
}

}  // namespace prophet
