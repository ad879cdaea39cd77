#include "prophet/adversary.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>

#include "prophet/selection_rules.hpp"

namespace prophet {

const char* to_string(ArrivalModel m) noexcept {
  switch (m) {
    case ArrivalModel::edge: return "edge";
    case ArrivalModel::vertex: return "vertex";
    case ArrivalModel::truthful: return "truthful";
  }
  return "unknown";
}

ArrivalModel parse_model(const std::string& name) {
  if (name == "edge") return ArrivalModel::edge;
  if (name == "vertex") return ArrivalModel::vertex;
  if (name == "truthful") return ArrivalModel::truthful;
  throw InputError("unknown model '" + name + "' (expected edge|vertex|truthful)");
}

OrderStrategy OrderStrategy::fixed(std::vector<std::int32_t> order) {
  OrderStrategy s;
  s.kind = Kind::fixed;
  s.fixed_order = std::move(order);
  return s;
}

OrderStrategy OrderStrategy::uniform_random(std::uint64_t seed) {
  OrderStrategy s;
  s.kind = Kind::uniform_random;
  s.seed = seed;
  return s;
}

OrderStrategy OrderStrategy::weight_decreasing() {
  OrderStrategy s;
  s.kind = Kind::weight_decreasing;
  return s;
}

OrderStrategy OrderStrategy::weight_increasing() {
  OrderStrategy s;
  s.kind = Kind::weight_increasing;
  return s;
}

OrderStrategy OrderStrategy::adaptive(std::string policy) {
  if (policy != "block-best" && policy != "starve-items") {
    throw InputError("unknown adaptive policy '" + policy + "' (expected block-best|starve-items)");
  }
  OrderStrategy s;
  s.kind = Kind::adaptive;
  s.policy = std::move(policy);
  return s;
}

OrderStrategy OrderStrategy::adaptive(AdaptivePolicy policy) {
  OrderStrategy s;
  s.kind = Kind::adaptive;
  s.policy = "custom";
  s.custom = std::move(policy);
  return s;
}

OrderStrategy OrderStrategy::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (head == "fixed") {
    std::vector<std::int32_t> order;
    std::stringstream ss(tail);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      char* end = nullptr;
      const long v = std::strtol(tok.c_str(), &end, 10);
      if (tok.empty() || end != tok.c_str() + tok.size()) {
        throw InputError("order '" + text + "': bad element '" + tok + "'");
      }
      order.push_back(static_cast<std::int32_t>(v));
    }
    return fixed(std::move(order));
  }
  if (head == "random") {
    std::uint64_t seed = 0;
    if (!tail.empty()) {
      char* end = nullptr;
      seed = std::strtoull(tail.c_str(), &end, 10);
      if (end != tail.c_str() + tail.size()) throw InputError("order '" + text + "': bad seed");
    }
    return uniform_random(seed);
  }
  if (head == "inc" && tail.empty()) return weight_increasing();
  if (head == "dec" && tail.empty()) return weight_decreasing();
  if (head == "adaptive") return adaptive(tail);
  throw InputError("unknown order '" + text + "' (expected fixed:...|random|inc|dec|adaptive:<policy>)");
}

std::string OrderStrategy::describe() const {
  switch (kind) {
    case Kind::fixed: {
      std::string s = "fixed:";
      for (std::size_t i = 0; i < fixed_order.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(fixed_order[i]);
      }
      return s;
    }
    case Kind::uniform_random: return seed ? "random:" + std::to_string(seed) : "random";
    case Kind::weight_decreasing: return "dec";
    case Kind::weight_increasing: return "inc";
    case Kind::adaptive: return "adaptive:" + policy;
  }
  return "unknown";
}

std::vector<std::int32_t> arriving_elements(const Graph& g, ArrivalModel model) {
  if (model == ArrivalModel::edge) {
    std::vector<std::int32_t> out(static_cast<std::size_t>(g.edge_count()));
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  if (!g.is_bipartite()) {
    throw CapabilityError(std::string(to_string(model)) + " model requires a bipartite graph");
  }
  return {g.buyers().begin(), g.buyers().end()};
}

void require_permutation(const Graph& g, ArrivalModel model, std::span<const std::int32_t> order) {
  auto expected = arriving_elements(g, model);
  std::vector<std::int32_t> got(order.begin(), order.end());
  std::sort(got.begin(), got.end());
  if (got != expected) {
    throw InputError(std::string("arrival order is not a permutation of the ") +
                     (model == ArrivalModel::edge ? "edges" : "buyers"));
  }
}

namespace {

// Ranking weight of an arriving element: r_e for edges, the best incident
// real draw for buyers (buyers without edges rank lowest).
struct ElementWeight {
  bool present = false;
  DrawnValue draw;
};

ElementWeight element_weight(const Graph& g, const Realization& real, ArrivalModel model,
                             std::int32_t element) {
  if (model == ArrivalModel::edge) return {true, real.real(element)};
  ElementWeight w;
  for (EdgeId e : g.incident(element)) {
    if (!w.present || ranks_above(real.real(e), w.draw)) w = {true, real.real(e)};
  }
  return w;
}

bool heavier(const ElementWeight& a, const ElementWeight& b) {
  if (a.present != b.present) return a.present;
  return a.present && ranks_above(a.draw, b.draw);
}

std::int32_t first_unarrived(const StateView& view, std::span<const std::int32_t> elements) {
  for (std::int32_t x : elements) {
    if (!view.arrived[static_cast<std::size_t>(x)]) return x;
  }
  throw InvariantViolation("adversary: no element left to release");
}

// Target edge a buyer would take if released now, or kNoEdge if releasing
// the buyer cannot change the matching.
EdgeId buyer_target(const StateView& view, Vertex buyer, std::span<const DrawnValue> reals) {
  const Graph& g = view.spec->graph;
  if (view.model == ArrivalModel::truthful) {
    return utility_maximizing_edge(g, *view.prices, buyer, reals, view.matched);
  }
  const EdgeId e = best_price_feasible_edge(g, *view.prices, buyer, reals);
  if (e == kNoEdge || view.matched[static_cast<std::size_t>(g.edge(e).v)]) return kNoEdge;
  return e;
}

enum class Score { residual_weight, contender_count };

std::int32_t vertex_interference(const StateView& view, Score score) {
  const Graph& g = view.spec->graph;
  const auto reals = view.realization->reals();
  std::vector<EdgeId> target(static_cast<std::size_t>(g.vertex_count()), kNoEdge);
  std::vector<double> demand_weight(static_cast<std::size_t>(g.vertex_count()), 0.0);
  std::vector<int> demand_count(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex b : g.buyers()) {
    if (view.arrived[static_cast<std::size_t>(b)]) continue;
    const EdgeId e = buyer_target(view, b, reals);
    target[static_cast<std::size_t>(b)] = e;
    if (e == kNoEdge) continue;
    const Vertex item = g.edge(e).v;
    demand_weight[static_cast<std::size_t>(item)] += reals[static_cast<std::size_t>(e)].value;
    demand_count[static_cast<std::size_t>(item)] += 1;
  }
  std::int32_t best = -1;
  double best_score = 0.0;
  for (Vertex b : g.buyers()) {
    const EdgeId e = target[static_cast<std::size_t>(b)];
    if (view.arrived[static_cast<std::size_t>(b)] || e == kNoEdge) continue;
    const Vertex item = g.edge(e).v;
    const double own = reals[static_cast<std::size_t>(e)].value;
    const double s = score == Score::residual_weight
                         ? demand_weight[static_cast<std::size_t>(item)] - own
                         : static_cast<double>(demand_count[static_cast<std::size_t>(item)]);
    // Prefer the largest interference; among equals release the cheapest buyer.
    const bool better =
        best < 0 || s > best_score ||
        (s == best_score && ranks_above(reals[static_cast<std::size_t>(target[static_cast<std::size_t>(best)])],
                                        reals[static_cast<std::size_t>(e)]));
    if (better) {
      best = b;
      best_score = s;
    }
  }
  if (best >= 0) return best;
  return first_unarrived(view, view.spec->graph.buyers());
}

std::int32_t edge_block_best(const StateView& view) {
  const Graph& g = view.spec->graph;
  const Realization& real = *view.realization;
  std::vector<EdgeId> acceptable;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (view.arrived[static_cast<std::size_t>(e)]) continue;
    const Edge& ed = g.edge(e);
    if (view.matched[static_cast<std::size_t>(ed.u)] || view.matched[static_cast<std::size_t>(ed.v)]) continue;
    if (beats_both(g, *view.prices, e, real.real(e))) acceptable.push_back(e);
  }
  if (acceptable.empty()) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!view.arrived[static_cast<std::size_t>(e)]) return e;
    }
    throw InvariantViolation("adversary: no element left to release");
  }
  EdgeId best = kNoEdge;
  double best_blocked = 0.0;
  for (EdgeId c : acceptable) {
    const Edge& ec = g.edge(c);
    double blocked = 0.0;
    for (EdgeId f : acceptable) {
      if (f == c) continue;
      const Edge& ef = g.edge(f);
      if (ef.touches(ec.u) || ef.touches(ec.v)) blocked += real.real(f).value;
    }
    if (best == kNoEdge || blocked > best_blocked ||
        (blocked == best_blocked && ranks_above(real.real(best), real.real(c)))) {
      best = c;
      best_blocked = blocked;
    }
  }
  return best;
}

}  // namespace

std::int32_t block_best_policy(const StateView& view) {
  if (view.model == ArrivalModel::edge) return edge_block_best(view);
  return vertex_interference(view, Score::residual_weight);
}

std::int32_t starve_items_policy(const StateView& view) {
  if (view.model == ArrivalModel::edge) {
    throw InputError("adaptive:starve-items applies to the vertex and truthful models only");
  }
  return vertex_interference(view, Score::contender_count);
}

std::vector<std::int32_t> materialize_order(const OrderStrategy& strategy, const InstanceSpec& spec,
                                            const Realization& realization, ArrivalModel model) {
  const Graph& g = spec.graph;
  auto elements = arriving_elements(g, model);
  switch (strategy.kind) {
    case OrderStrategy::Kind::fixed:
      require_permutation(g, model, strategy.fixed_order);
      return strategy.fixed_order;
    case OrderStrategy::Kind::uniform_random: {
      std::mt19937_64 rng(strategy.seed);
      // Fisher-Yates with explicit index draws; std::shuffle's use of the
      // engine is implementation-defined.
      for (std::size_t i = elements.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(elements[i - 1], elements[j]);
      }
      return elements;
    }
    case OrderStrategy::Kind::weight_decreasing:
    case OrderStrategy::Kind::weight_increasing: {
      const bool decreasing = strategy.kind == OrderStrategy::Kind::weight_decreasing;
      std::stable_sort(elements.begin(), elements.end(), [&](std::int32_t a, std::int32_t b) {
        const auto wa = element_weight(g, realization, model, a);
        const auto wb = element_weight(g, realization, model, b);
        return decreasing ? heavier(wa, wb) : heavier(wb, wa);
      });
      return elements;
    }
    case OrderStrategy::Kind::adaptive:
      throw InputError("adaptive strategies have no precomputed order");
  }
  return elements;
}

ArrivalSequencer::ArrivalSequencer(const OrderStrategy& strategy, const InstanceSpec& spec,
                                   const Realization& realization, ArrivalModel model)
    : strategy_(strategy),
      spec_(spec),
      realization_(realization),
      model_(model),
      elements_(arriving_elements(spec.graph, model)) {
  issued_.assign(model == ArrivalModel::edge ? static_cast<std::size_t>(spec.graph.edge_count())
                                             : static_cast<std::size_t>(spec.graph.vertex_count()),
                 0);
  if (!strategy_.is_adaptive()) {
    planned_ = materialize_order(strategy_, spec_, realization_, model_);
  } else if (strategy_.policy == "starve-items" && model == ArrivalModel::edge) {
    throw InputError("adaptive:starve-items applies to the vertex and truthful models only");
  } else if (strategy_.policy == "custom" && !strategy_.custom) {
    throw InputError("adaptive:custom requires a policy callback");
  }
}

std::int32_t ArrivalSequencer::next(const StateView& view) {
  if (done()) throw InvariantViolation("adversary: every element has already arrived");
  std::int32_t x = 0;
  if (!strategy_.is_adaptive()) {
    x = planned_[handed_out_];
  } else if (strategy_.policy == "block-best") {
    x = block_best_policy(view);
  } else if (strategy_.policy == "starve-items") {
    x = starve_items_policy(view);
  } else {
    x = strategy_.custom(view);
  }
  const bool known = x >= 0 && static_cast<std::size_t>(x) < issued_.size() &&
                     (model_ == ArrivalModel::edge || spec_.graph.is_buyer(x));
  if (!known) {
    throw InvariantViolation("adversary contract violation: element " + std::to_string(x) +
                             " is not an arriving element");
  }
  if (issued_[static_cast<std::size_t>(x)]) {
    throw InvariantViolation("adversary contract violation: element " + std::to_string(x) +
                             " already arrived");
  }
  issued_[static_cast<std::size_t>(x)] = 1;
  ++handed_out_;
  return x;
}

}  // namespace prophet
