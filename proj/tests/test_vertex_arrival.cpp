#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prophet/generators.hpp"
#include "prophet/vertex_arrival.hpp"
#include "test_support.hpp"

using namespace prophet;
using testing_support::draws;
using testing_support::uniform_instance;

namespace {

// Buyers 0, 1; items 2, 3. Edges (0,2) (0,3) (1,2).
InstanceSpec two_buyers() {
  return uniform_instance(Graph::bipartite(4, {0, 1}, {2, 3}, {{0, 2}, {0, 3}, {1, 2}}),
                          DistSpec::uniform(0, 10));
}

}  // namespace

TEST_CASE("vertex arrivals: each buyer takes its best price-feasible edge") {
  const InstanceSpec spec = two_buyers();
  const Realization r = draws({{1, 6}, {0.5, 5}, {2, 7}});

  const RunRecord a = run_online_vertex(spec, r, std::vector<Vertex>{0, 1});
  CHECK(a.sample_matching.edges == std::vector<EdgeId>{1, 2});
  CHECK(a.prices.price(0) == 0.5);
  CHECK(a.prices.price(2) == 2);
  CHECK(a.feasible_set == std::vector<EdgeId>{0, 2});
  CHECK(a.matching.edges == std::vector<EdgeId>{0});
  CHECK(a.matching.weight == 6);
  CHECK(a.events[1].outcome == StepOutcome::feasible_blocked);

  // Buyer 0's choice is fixed to edge 0 even when item 2 is gone.
  const RunRecord b = run_online_vertex(spec, r, std::vector<Vertex>{1, 0});
  CHECK(b.matching.edges == std::vector<EdgeId>{2});
  CHECK(b.matching.weight == 7);

  const Matching msafe = build_msafe(spec.graph, a.feasible_set, r.reals());
  CHECK(msafe.edges == std::vector<EdgeId>{2});
  CHECK(msafe.weight == 7);

  const VertexArrivalTrace t = run_offline_vertex(spec, r, CoinSource::coupled(), std::vector<Vertex>{0, 1});
  CHECK(same_sets(a, t.record));
  CHECK(t.m_safe == msafe);
  CHECK(t.induced == r);
}

TEST_CASE("vertex arrivals: buyer with nothing above the prices stays unmatched") {
  const InstanceSpec spec = uniform_instance(complete_bipartite(1, 1), DistSpec::uniform(0, 10));
  const RunRecord hi = run_online_vertex(spec, draws({{5, 7}}), std::vector<Vertex>{0});
  CHECK(hi.matching.weight == 7);
  const RunRecord lo = run_online_vertex(spec, draws({{5, 3}}), std::vector<Vertex>{0});
  CHECK(lo.matching.empty());
  CHECK(lo.events[0].outcome == StepOutcome::no_feasible_item);
}

TEST_CASE("offline vertex twin with forced coins") {
  const InstanceSpec spec = two_buyers();
  // Ranking: e2 7, e0 6, e1 5, e2 2, e0 1, e1 0.5.
  const Realization r = draws({{1, 6}, {0.5, 5}, {2, 7}});
  const std::vector<Vertex> order{0, 1};
  // All heads: every first copy plays R. E' gets e2 (buyer 1) and e0
  // (buyer 0); e1 finds buyer 0 out of I^R. Second copies play S.
  const VertexArrivalTrace h = run_offline_vertex(spec, r, CoinSource::all_heads(), order);
  CHECK(h.record.feasible_set == std::vector<EdgeId>{0, 2});
  CHECK(h.record.sample_matching.edges == std::vector<EdgeId>{1, 2});
  // All tails: the 7-copy of e2 is the sample, matching buyer 1 and item 2.
  // The 6-copy of e0 plays S and finds item 2 taken; the 5-copy of e1 plays S
  // and matches buyer 0 to item 3. Later copies play R but no buyer is in I^R.
  const VertexArrivalTrace t = run_offline_vertex(spec, r, CoinSource::all_tails(), order);
  CHECK(t.record.sample_matching.edges == std::vector<EdgeId>{1, 2});
  CHECK(t.record.sample_matching.weight == 12);
  CHECK(t.record.feasible_set.empty());
  CHECK(t.buyers_r.empty());
  CHECK(t.items_s.empty());
}

TEST_CASE("independent coins: offline vertex trace equals the coupled run on its induced realization") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const InstanceSpec spec = random_mixed_instance(s, 8, true);
    const Realization r = draw_realization(spec, s);
    const std::vector<Vertex> order(spec.graph.buyers().begin(), spec.graph.buyers().end());
    const VertexArrivalTrace ind = run_offline_vertex(spec, r, CoinSource::seeded(s + 7), order);
    const VertexArrivalTrace cpl = run_offline_vertex(spec, ind.induced, CoinSource::coupled(), order);
    CHECK(same_sets(ind.record, cpl.record));
    CHECK(same_sets(run_online_vertex(spec, ind.induced, order), ind.record));
  }
}

TEST_CASE("buyer-unique E' and the weight chain hold on random runs") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const InstanceSpec spec = random_mixed_instance(s + 77, 8, true);
    const Realization r = draw_realization(spec, s);
    const RunRecord rec = run_online_vertex(spec, r, OrderStrategy::uniform_random(s));
    std::vector<int> per_buyer(static_cast<std::size_t>(spec.graph.vertex_count()), 0);
    for (EdgeId e : rec.feasible_set) CHECK(++per_buyer[spec.graph.edge(e).u] <= 1);
    const Matching ms = build_msafe(spec.graph, rec.feasible_set, r.reals());
    CHECK(validate_matching(spec.graph, ms));
    CHECK(validate_matching(spec.graph, rec.matching));
    CHECK(rec.matching.weight <= ms.weight);
    CHECK(ms.weight <= rec.feasible_weight);
  }
}

TEST_CASE("coupled vertex equivalence over strategies") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const InstanceSpec spec = random_mixed_instance(s + 500, 8, true);
    for (const OrderStrategy& st : {OrderStrategy::uniform_random(s), OrderStrategy::weight_decreasing(),
                                    OrderStrategy::weight_increasing(), OrderStrategy::adaptive("block-best"),
                                    OrderStrategy::adaptive("starve-items")}) {
      CHECK(coupled_vertex_equivalence_check(spec, s, st));
    }
  }
}

TEST_CASE("vertex model needs a bipartite instance") {
  const InstanceSpec spec = uniform_instance(path_graph(3));
  const Realization r = draw_realization(spec, 1);
  CHECK_THROWS_AS(run_online_vertex(spec, r, std::vector<Vertex>{0}), CapabilityError);
}
