#include "prophet/vertex_arrival.hpp"

#include <algorithm>
#include <random>

#include "prophet/oracle.hpp"
#include "prophet/selection_rules.hpp"

namespace prophet {

namespace {

void require_bipartite(const InstanceSpec& spec) {
  if (!spec.graph.is_bipartite()) {
    throw CapabilityError("vertex-arrival algorithms require a bipartite graph");
  }
}

}  // namespace

OnlineVertexMatcher::OnlineVertexMatcher(const InstanceSpec& spec, const Realization& real)
    : spec_(spec), real_(real) {
  require_bipartite(spec);
  const Graph& g = spec.graph;
  if (real.edge_count() != g.edge_count()) {
    throw InputError("realization does not match the instance edge count");
  }
  reals_ = real.reals();
  const auto samples = real.samples();
  record_.sample_matching = greedy_matching(g, samples);
  record_.prices = prices_from_matching(g, record_.sample_matching, samples);
  arrived_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  matched_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
}

void OnlineVertexMatcher::observe(Vertex buyer) {
  const Graph& g = spec_.graph;
  if (!g.is_buyer(buyer)) throw InputError("vertex " + std::to_string(buyer) + " is not a buyer");
  if (arrived_[static_cast<std::size_t>(buyer)]) {
    throw InputError("buyer " + std::to_string(buyer) + " arrived twice");
  }
  arrived_[static_cast<std::size_t>(buyer)] = 1;
  record_.arrivals.push_back(buyer);

  StepEvent ev;
  ev.step = record_.events.size();
  ev.element = buyer;
  const EdgeId hat = best_price_feasible_edge(g, record_.prices, buyer, reals_);
  if (hat == kNoEdge) {
    ev.outcome = StepOutcome::no_feasible_item;
  } else {
    ev.edge = hat;
    ev.observed = reals_[static_cast<std::size_t>(hat)].value;
    ev.threshold = offered_price(g, record_.prices, hat);
    feasible_.push_back(hat);
    const Vertex item = g.edge(hat).v;
    if (matched_[static_cast<std::size_t>(item)]) {
      ev.outcome = StepOutcome::feasible_blocked;
    } else {
      matched_[static_cast<std::size_t>(item)] = matched_[static_cast<std::size_t>(buyer)] = 1;
      accepted_.push_back(hat);
      ev.outcome = StepOutcome::accepted;
    }
  }
  record_.events.push_back(ev);
}

StateView OnlineVertexMatcher::view() const {
  StateView v;
  v.model = ArrivalModel::vertex;
  v.spec = &spec_;
  v.realization = &real_;
  v.prices = &record_.prices;
  v.arrived = arrived_;
  v.matched = matched_;
  v.accepted = accepted_;
  v.feasible = feasible_;
  return v;
}

RunRecord OnlineVertexMatcher::finish() && {
  record_.matching = make_selection(std::move(accepted_), reals_);
  Matching fs = make_selection(std::move(feasible_), reals_);
  record_.feasible_set = std::move(fs.edges);
  record_.feasible_weight = fs.weight;
  return std::move(record_);
}

RunRecord run_online_vertex(const InstanceSpec& spec, const Realization& real,
                            std::span<const Vertex> order) {
  require_bipartite(spec);
  require_permutation(spec.graph, ArrivalModel::vertex, order);
  OnlineVertexMatcher alg(spec, real);
  for (Vertex b : order) alg.observe(b);
  return std::move(alg).finish();
}

RunRecord run_online_vertex(const InstanceSpec& spec, const Realization& real,
                            const OrderStrategy& strategy) {
  OnlineVertexMatcher alg(spec, real);
  ArrivalSequencer seq(strategy, spec, real, ArrivalModel::vertex);
  while (!seq.done()) alg.observe(seq.next(alg.view()));
  return std::move(alg).finish();
}

VertexArrivalTrace run_offline_vertex(const InstanceSpec& spec, const Realization& real,
                                      CoinSource coins, std::span<const Vertex> order) {
  require_bipartite(spec);
  const Graph& g = spec.graph;
  if (real.edge_count() != g.edge_count()) {
    throw InputError("realization does not match the instance edge count");
  }
  require_permutation(g, ArrivalModel::vertex, order);

  struct ScanDraw {
    EdgeId edge;
    bool is_real;
    DrawnValue draw;
  };
  std::vector<ScanDraw> scan;
  scan.reserve(static_cast<std::size_t>(2 * g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    scan.push_back({e, false, real.sample(e)});
    scan.push_back({e, true, real.real(e)});
  }
  std::sort(scan.begin(), scan.end(),
            [](const ScanDraw& x, const ScanDraw& y) { return ranks_above(x.draw, y.draw); });

  const auto m = static_cast<std::size_t>(g.edge_count());
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<char> marked(m, 0);
  std::vector<char> first_copy_is_r(m, 0);  // role of the first scanned copy
  std::vector<char> in_ir(n, 0), in_is(n, 0), in_js(n, 0);
  for (Vertex b : g.buyers()) in_ir[static_cast<std::size_t>(b)] = in_is[static_cast<std::size_t>(b)] = 1;
  for (Vertex j : g.items()) in_js[static_cast<std::size_t>(j)] = 1;

  VertexArrivalTrace trace;
  std::mt19937_64 rng(coins.seed);
  std::vector<EdgeId> eprime;
  std::vector<EdgeId> sample_matching;
  std::vector<EdgeId> eprime_of_buyer(n, kNoEdge);

  for (const ScanDraw& a : scan) {
    const auto e = static_cast<std::size_t>(a.edge);
    bool plays_r = false;
    if (!marked[e]) {
      bool heads = false;
      switch (coins.kind) {
        case CoinSource::Kind::coupled: heads = a.is_real; break;
        case CoinSource::Kind::seeded: heads = (rng() >> 63) != 0; break;
        case CoinSource::Kind::heads: heads = true; break;
        case CoinSource::Kind::tails: heads = false; break;
      }
      marked[e] = 1;
      first_copy_is_r[e] = heads ? 1 : 0;
      trace.coin_flips.push_back({a.edge, heads});
      plays_r = heads;
    } else {
      plays_r = !first_copy_is_r[e];
    }
    const Vertex i = g.edge(a.edge).u;
    const Vertex j = g.edge(a.edge).v;
    if (plays_r) {
      if (in_ir[static_cast<std::size_t>(i)] && in_js[static_cast<std::size_t>(j)]) {
        eprime.push_back(a.edge);
        eprime_of_buyer[static_cast<std::size_t>(i)] = a.edge;
        in_ir[static_cast<std::size_t>(i)] = 0;
      }
    } else if (in_is[static_cast<std::size_t>(i)] && in_js[static_cast<std::size_t>(j)]) {
      in_js[static_cast<std::size_t>(j)] = 0;
      in_is[static_cast<std::size_t>(i)] = in_ir[static_cast<std::size_t>(i)] = 0;
      sample_matching.push_back(a.edge);
    }
  }

  // Every edge is marked by the scan, so the coins fix all roles.
  std::vector<EdgeDraws> induced(m);
  for (std::size_t e = 0; e < m; ++e) {
    const EdgeDraws& d = real.at(static_cast<EdgeId>(e));
    const bool sample_first = ranks_above(d.sample, d.real);
    const bool first_is_r = first_copy_is_r[e] != 0;
    // The input's real draw plays R iff it was the first copy and heads came
    // up, or it was the second copy and the first came up tails.
    const bool keep = sample_first ? !first_is_r : first_is_r;
    induced[e] = keep ? d : EdgeDraws{d.real, d.sample};
  }
  trace.induced = Realization(std::move(induced));
  const auto reals = trace.induced.reals();
  const auto samples = trace.induced.samples();

  RunRecord& rec = trace.record;
  rec.sample_matching = make_selection(std::move(sample_matching), samples);
  rec.prices = prices_from_matching(g, rec.sample_matching, samples);
  std::sort(eprime.begin(), eprime.end());
  rec.feasible_weight = selection_weight(eprime, reals);
  rec.feasible_set = eprime;

  std::vector<char> item_taken(n, 0);
  std::vector<EdgeId> accepted;
  for (Vertex b : order) {
    StepEvent ev;
    ev.step = rec.events.size();
    ev.element = b;
    const EdgeId e = eprime_of_buyer[static_cast<std::size_t>(b)];
    if (e == kNoEdge) {
      ev.outcome = StepOutcome::no_feasible_item;
    } else {
      ev.edge = e;
      ev.observed = reals[static_cast<std::size_t>(e)].value;
      ev.threshold = offered_price(g, rec.prices, e);
      const Vertex j = g.edge(e).v;
      if (item_taken[static_cast<std::size_t>(j)]) {
        ev.outcome = StepOutcome::feasible_blocked;
      } else {
        item_taken[static_cast<std::size_t>(j)] = 1;
        accepted.push_back(e);
        ev.outcome = StepOutcome::accepted;
      }
    }
    rec.events.push_back(ev);
    rec.arrivals.push_back(b);
  }
  rec.matching = make_selection(std::move(accepted), reals);
  trace.m_safe = build_msafe(g, rec.feasible_set, reals);

  for (Vertex b : g.buyers()) {
    if (in_ir[static_cast<std::size_t>(b)]) trace.buyers_r.push_back(b);
    if (in_is[static_cast<std::size_t>(b)]) trace.buyers_s.push_back(b);
  }
  for (Vertex j : g.items()) {
    if (in_js[static_cast<std::size_t>(j)]) trace.items_s.push_back(j);
  }
  return trace;
}

Matching build_msafe(const Graph& g, std::span<const EdgeId> eprime,
                     std::span<const DrawnValue> reals) {
  std::vector<EdgeId> best(static_cast<std::size_t>(g.vertex_count()), kNoEdge);
  for (EdgeId e : eprime) {
    const Vertex j = g.edge(e).v;
    EdgeId& slot = best[static_cast<std::size_t>(j)];
    if (slot == kNoEdge ||
        ranks_above(reals[static_cast<std::size_t>(e)], reals[static_cast<std::size_t>(slot)])) {
      slot = e;
    }
  }
  std::vector<EdgeId> kept;
  for (Vertex j : g.items()) {
    if (best[static_cast<std::size_t>(j)] != kNoEdge) kept.push_back(best[static_cast<std::size_t>(j)]);
  }
  return make_selection(std::move(kept), reals);
}

Matching build_msafe(const VertexArrivalTrace& trace, const InstanceSpec& spec) {
  return build_msafe(spec.graph, trace.record.feasible_set, trace.induced.reals());
}

bool coupled_vertex_equivalence_check(const InstanceSpec& spec, std::uint64_t seed,
                                      const OrderStrategy& strategy) {
  const Realization real = draw_realization(spec, seed);
  const RunRecord online = run_online_vertex(spec, real, strategy);
  const VertexArrivalTrace offline =
      run_offline_vertex(spec, real, CoinSource::coupled(), online.arrivals);
  return same_sets(online, offline.record) && online.prices == offline.record.prices;
}

}  // namespace prophet
