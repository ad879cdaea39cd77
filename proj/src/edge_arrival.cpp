#include "prophet/edge_arrival.hpp"

#include <algorithm>
#include <random>

#include "prophet/oracle.hpp"
#include "prophet/selection_rules.hpp"

namespace prophet {

OnlineEdgeMatcher::OnlineEdgeMatcher(const InstanceSpec& spec, const Realization& real)
    : spec_(spec), real_(real) {
  const Graph& g = spec.graph;
  if (real.edge_count() != g.edge_count()) {
    throw InputError("realization does not match the instance edge count");
  }
  const auto samples = real.samples();
  record_.sample_matching = greedy_matching(g, samples);
  record_.prices = prices_from_matching(g, record_.sample_matching, samples);
  arrived_.assign(static_cast<std::size_t>(g.edge_count()), 0);
  matched_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
}

void OnlineEdgeMatcher::observe(EdgeId e) {
  const Graph& g = spec_.graph;
  if (!g.contains_edge(e)) throw InputError("arrival of unknown edge " + std::to_string(e));
  if (arrived_[static_cast<std::size_t>(e)]) {
    throw InputError("edge " + std::to_string(e) + " arrived twice");
  }
  arrived_[static_cast<std::size_t>(e)] = 1;
  record_.arrivals.push_back(e);

  const Edge& ed = g.edge(e);
  const DrawnValue& r = real_.real(e);
  StepEvent ev;
  ev.step = record_.events.size();
  ev.element = e;
  ev.edge = e;
  ev.observed = r.value;
  ev.threshold = offered_price(g, record_.prices, e);
  if (!beats_both(g, record_.prices, e, r)) {
    ev.outcome = StepOutcome::below_price;
  } else {
    feasible_.push_back(e);
    if (matched_[static_cast<std::size_t>(ed.u)] || matched_[static_cast<std::size_t>(ed.v)]) {
      ev.outcome = StepOutcome::feasible_blocked;
    } else {
      matched_[static_cast<std::size_t>(ed.u)] = matched_[static_cast<std::size_t>(ed.v)] = 1;
      accepted_.push_back(e);
      ev.outcome = StepOutcome::accepted;
    }
  }
  record_.events.push_back(ev);
}

StateView OnlineEdgeMatcher::view() const {
  StateView v;
  v.model = ArrivalModel::edge;
  v.spec = &spec_;
  v.realization = &real_;
  v.prices = &record_.prices;
  v.arrived = arrived_;
  v.matched = matched_;
  v.accepted = accepted_;
  v.feasible = feasible_;
  return v;
}

RunRecord OnlineEdgeMatcher::finish() && {
  const auto reals = real_.reals();
  record_.matching = make_selection(std::move(accepted_), reals);
  Matching fs = make_selection(std::move(feasible_), reals);
  record_.feasible_set = std::move(fs.edges);
  record_.feasible_weight = fs.weight;
  return std::move(record_);
}

RunRecord run_online_edge(const InstanceSpec& spec, const Realization& real,
                          std::span<const EdgeId> order) {
  require_permutation(spec.graph, ArrivalModel::edge, order);
  OnlineEdgeMatcher alg(spec, real);
  for (EdgeId e : order) alg.observe(e);
  return std::move(alg).finish();
}

RunRecord run_online_edge(const InstanceSpec& spec, const Realization& real,
                          const OrderStrategy& strategy) {
  OnlineEdgeMatcher alg(spec, real);
  ArrivalSequencer seq(strategy, spec, real, ArrivalModel::edge);
  while (!seq.done()) alg.observe(seq.next(alg.view()));
  return std::move(alg).finish();
}

bool EdgeArrivalTrace::first_considered_in_eprime(Vertex v) const {
  const EdgeId e = e_v[static_cast<std::size_t>(v)];
  return e != kNoEdge && std::binary_search(record.feasible_set.begin(), record.feasible_set.end(), e);
}

double EdgeArrivalTrace::e_v_value(Vertex v) const {
  if (!first_considered_in_eprime(v)) return 0.0;
  return induced.real(e_v[static_cast<std::size_t>(v)]).value;
}

namespace {

struct ScanDraw {
  EdgeId edge;
  bool is_real;  // role in the input realization
  DrawnValue draw;
};

std::vector<ScanDraw> sorted_draws(const Realization& real) {
  std::vector<ScanDraw> a;
  a.reserve(static_cast<std::size_t>(2 * real.edge_count()));
  for (EdgeId e = 0; e < real.edge_count(); ++e) {
    a.push_back({e, false, real.sample(e)});
    a.push_back({e, true, real.real(e)});
  }
  std::sort(a.begin(), a.end(),
            [](const ScanDraw& x, const ScanDraw& y) { return ranks_above(x.draw, y.draw); });
  return a;
}

class CoinFlipper {
 public:
  explicit CoinFlipper(CoinSource source) : source_(source), rng_(source.seed) {}
  bool flip(bool copy_is_real) {
    switch (source_.kind) {
      case CoinSource::Kind::coupled: return copy_is_real;
      case CoinSource::Kind::seeded: return (rng_() >> 63) != 0;
      case CoinSource::Kind::heads: return true;
      case CoinSource::Kind::tails: return false;
    }
    return false;
  }
  bool independent() const noexcept { return source_.kind == CoinSource::Kind::seeded; }
  bool fair_bit() { return (rng_() >> 63) != 0; }

 private:
  CoinSource source_;
  std::mt19937_64 rng_;
};

}  // namespace

EdgeArrivalTrace run_offline_edge(const InstanceSpec& spec, const Realization& real,
                                  CoinSource coins, std::span<const EdgeId> order) {
  const Graph& g = spec.graph;
  if (real.edge_count() != g.edge_count()) {
    throw InputError("realization does not match the instance edge count");
  }
  require_permutation(g, ArrivalModel::edge, order);

  enum Status : char { free_edge, r_used, s_used };
  const auto m = static_cast<std::size_t>(g.edge_count());
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<Status> status(m, free_edge);
  std::vector<int> real_copy(m, -1);  // 1: the input's real draw plays R, 0: the sample does
  std::vector<char> in_vs(n, 1);
  std::vector<EdgeId> eprime;
  std::vector<EdgeId> sample_matching;

  EdgeArrivalTrace trace;
  CoinFlipper flipper(coins);

  for (const ScanDraw& a : sorted_draws(real)) {
    const Edge& ed = g.edge(a.edge);
    const auto e = static_cast<std::size_t>(a.edge);
    const bool endpoints_free = in_vs[static_cast<std::size_t>(ed.u)] && in_vs[static_cast<std::size_t>(ed.v)];
    if (!endpoints_free) continue;
    if (status[e] == free_edge) {
      const bool heads = flipper.flip(a.is_real);
      trace.coin_flips.push_back({a.edge, heads});
      // Heads: this copy is R. Tails: this copy is S.
      real_copy[e] = (heads == a.is_real) ? 1 : 0;
      if (heads) {
        status[e] = r_used;
        eprime.push_back(a.edge);
        trace.considered.push_back({a.edge, EdgeArrivalTrace::Target::eprime});
      } else {
        status[e] = s_used;
        sample_matching.push_back(a.edge);
        in_vs[static_cast<std::size_t>(ed.u)] = in_vs[static_cast<std::size_t>(ed.v)] = 0;
        trace.considered.push_back({a.edge, EdgeArrivalTrace::Target::sample_matching});
      }
    } else {
      // Second copy of an observed edge whose endpoints are still in V^S.
      // Only an R-used edge can get here: S-used edges emptied their endpoints.
      sample_matching.push_back(a.edge);
      in_vs[static_cast<std::size_t>(ed.u)] = in_vs[static_cast<std::size_t>(ed.v)] = 0;
      trace.considered.push_back({a.edge, EdgeArrivalTrace::Target::sample_matching});
    }
  }

  // Induced roles. Unmarked edges keep the input roles unless coins are
  // independent, in which case a fair coin decides them.
  std::vector<EdgeDraws> induced(m);
  for (std::size_t e = 0; e < m; ++e) {
    const EdgeDraws& d = real.at(static_cast<EdgeId>(e));
    bool keep = true;
    if (real_copy[e] >= 0) {
      keep = real_copy[e] == 1;
    } else if (flipper.independent()) {
      keep = flipper.fair_bit();
    }
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

  std::vector<char> matched(n, 0);
  std::vector<EdgeId> accepted;
  for (EdgeId e : order) {
    const Edge& ed = g.edge(e);
    StepEvent ev;
    ev.step = rec.events.size();
    ev.element = e;
    ev.edge = e;
    ev.observed = reals[static_cast<std::size_t>(e)].value;
    ev.threshold = offered_price(g, rec.prices, e);
    if (!std::binary_search(eprime.begin(), eprime.end(), e)) {
      ev.outcome = StepOutcome::below_price;
    } else if (matched[static_cast<std::size_t>(ed.u)] || matched[static_cast<std::size_t>(ed.v)]) {
      ev.outcome = StepOutcome::feasible_blocked;
    } else {
      matched[static_cast<std::size_t>(ed.u)] = matched[static_cast<std::size_t>(ed.v)] = 1;
      accepted.push_back(e);
      ev.outcome = StepOutcome::accepted;
    }
    rec.events.push_back(ev);
    rec.arrivals.push_back(e);
  }
  rec.matching = make_selection(std::move(accepted), reals);

  trace.in_v_prime.assign(n, 0);
  trace.e_v.assign(n, kNoEdge);
  for (const auto& c : trace.considered) {
    const Edge& ed = g.edge(c.edge);
    for (Vertex x : {ed.u, ed.v}) {
      if (!trace.in_v_prime[static_cast<std::size_t>(x)]) {
        trace.in_v_prime[static_cast<std::size_t>(x)] = 1;
        trace.e_v[static_cast<std::size_t>(x)] = c.edge;
      }
    }
  }
  trace.safe = safe_set(trace, spec);
  return trace;
}

std::vector<Vertex> safe_set(const EdgeArrivalTrace& trace, const InstanceSpec& spec) {
  const Graph& g = spec.graph;
  const auto& eprime = trace.record.feasible_set;
  auto in_eprime = [&](EdgeId e) { return std::binary_search(eprime.begin(), eprime.end(), e); };
  std::vector<Vertex> safe;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!trace.first_considered_in_eprime(v)) continue;
    const EdgeId ev = trace.e_v[static_cast<std::size_t>(v)];
    const DrawnValue& rv = trace.induced.real(ev);
    bool only_at_v = true;
    for (EdgeId f : g.incident(v)) {
      if (f != ev && in_eprime(f)) only_at_v = false;
    }
    if (!only_at_v) continue;
    const Vertex u = g.edge(ev).other(v);
    bool none_smaller_at_u = true;
    for (EdgeId f : g.incident(u)) {
      if (f != ev && in_eprime(f) && ranks_above(rv, trace.induced.real(f))) none_smaller_at_u = false;
    }
    if (none_smaller_at_u) safe.push_back(v);
  }
  return safe;
}

bool same_sets(const RunRecord& online, const RunRecord& offline) {
  return online.feasible_set == offline.feasible_set &&
         online.feasible_weight == offline.feasible_weight &&
         online.sample_matching == offline.sample_matching && online.matching == offline.matching;
}

bool coupled_equivalence_check(const InstanceSpec& spec, std::uint64_t seed,
                               const OrderStrategy& strategy) {
  const Realization real = draw_realization(spec, seed);
  const RunRecord online = run_online_edge(spec, real, strategy);
  const EdgeArrivalTrace offline = run_offline_edge(spec, real, CoinSource::coupled(), online.arrivals);
  return same_sets(online, offline.record) && online.prices == offline.record.prices;
}

EdgeProofQuantities edge_proof_quantities(const EdgeArrivalTrace& trace, const InstanceSpec& spec) {
  const Graph& g = spec.graph;
  const auto& eprime = trace.record.feasible_set;
  EdgeProofQuantities q;
  std::vector<double> val(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (EdgeId e : eprime) {
    const double r = trace.induced.real(e).value;
    const Edge& ed = g.edge(e);
    for (Vertex x : {ed.u, ed.v}) {
      auto& slot = val[static_cast<std::size_t>(x)];
      slot = std::max(slot, r);
    }
  }
  std::vector<char> is_safe(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : trace.safe) is_safe[static_cast<std::size_t>(v)] = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    q.sum_val_eprime += val[static_cast<std::size_t>(v)];
    const double ev = trace.e_v_value(v);
    q.sum_e_v += ev;
    if (is_safe[static_cast<std::size_t>(v)]) q.sum_safe_e_v += ev;
    if (trace.in_v_prime[static_cast<std::size_t>(v)]) ++q.v_prime;
    if (trace.first_considered_in_eprime(v)) ++q.e_v_in_eprime;
  }
  q.safe = trace.safe.size();
  q.w_sample_matching = trace.record.sample_matching.weight;
  q.w_matching = trace.record.matching.weight;
  return q;
}

}  // namespace prophet
