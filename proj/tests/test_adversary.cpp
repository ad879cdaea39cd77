#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "prophet/edge_arrival.hpp"
#include "prophet/generators.hpp"
#include "prophet/truthful.hpp"
#include "prophet/vertex_arrival.hpp"
#include "test_support.hpp"

using namespace prophet;
using testing_support::draws;
using testing_support::uniform_instance;

TEST_CASE("fixed order is replayed verbatim") {
  const InstanceSpec spec = uniform_instance(path_graph(4));
  const Realization r = draw_realization(spec, 3);
  const RunRecord rec = run_online_edge(spec, r, OrderStrategy::fixed({2, 0, 1}));
  CHECK(rec.arrivals == std::vector<std::int32_t>{2, 0, 1});
  CHECK_THROWS_AS(run_online_edge(spec, r, OrderStrategy::fixed({2, 0})), InputError);
  CHECK_THROWS_AS(run_online_edge(spec, r, OrderStrategy::fixed({2, 0, 0})), InputError);
}

TEST_CASE("monotone orders follow real values") {
  const InstanceSpec spec = uniform_instance(path_graph(4), DistSpec::uniform(0, 10));
  const Realization r = draws({{1, 5}, {1.5, 3}, {2, 4}});
  CHECK(materialize_order(OrderStrategy::weight_increasing(), spec, r, ArrivalModel::edge) ==
        std::vector<std::int32_t>{1, 2, 0});
  CHECK(materialize_order(OrderStrategy::weight_decreasing(), spec, r, ArrivalModel::edge) ==
        std::vector<std::int32_t>{0, 2, 1});
}

TEST_CASE("vertex monotone orders rank buyers by their best edge") {
  const InstanceSpec spec = uniform_instance(Graph::bipartite(5, {0, 1, 2}, {3, 4}, {{0, 3}, {1, 3}, {1, 4}}),
                                             DistSpec::uniform(0, 10));
  const Realization r = draws({{1, 6}, {1.5, 2}, {2, 7}});
  // Buyer 2 has no edges and ranks lowest.
  CHECK(materialize_order(OrderStrategy::weight_decreasing(), spec, r, ArrivalModel::vertex) ==
        std::vector<std::int32_t>{1, 0, 2});
  CHECK(materialize_order(OrderStrategy::weight_increasing(), spec, r, ArrivalModel::vertex) ==
        std::vector<std::int32_t>{2, 0, 1});
}

TEST_CASE("uniform random order is a seeded permutation") {
  const InstanceSpec spec = uniform_instance(complete_graph(5));
  const Realization r = draw_realization(spec, 1);
  const auto a = materialize_order(OrderStrategy::uniform_random(9), spec, r, ArrivalModel::edge);
  CHECK(a == materialize_order(OrderStrategy::uniform_random(9), spec, r, ArrivalModel::edge));
  CHECK_FALSE(a == materialize_order(OrderStrategy::uniform_random(10), spec, r, ArrivalModel::edge));
  CHECK_NOTHROW(require_permutation(spec.graph, ArrivalModel::edge, a));
}

TEST_CASE("uniform random order puts each edge first equally often") {
  const InstanceSpec spec = uniform_instance(path_graph(5));
  const Realization r = draw_realization(spec, 1);
  std::vector<int> first(4, 0);
  const int n = 8000;
  for (int s = 0; s < n; ++s) {
    ++first[materialize_order(OrderStrategy::uniform_random(s), spec, r, ArrivalModel::edge)[0]];
  }
  for (int c : first) CHECK(std::abs(c - n / 4) < 5 * std::sqrt(n * 0.25 * 0.75));
}

TEST_CASE("parse and describe strategies") {
  CHECK(OrderStrategy::parse("fixed:2,0,1").fixed_order == std::vector<std::int32_t>{2, 0, 1});
  CHECK(OrderStrategy::parse("random:17").seed == 17);
  CHECK(OrderStrategy::parse("inc").kind == OrderStrategy::Kind::weight_increasing);
  CHECK(OrderStrategy::parse("dec").kind == OrderStrategy::Kind::weight_decreasing);
  CHECK(OrderStrategy::parse("adaptive:starve-items").policy == "starve-items");
  for (const char* t : {"fixed:2,0,1", "random:17", "inc", "dec", "adaptive:block-best"}) {
    CHECK(OrderStrategy::parse(t).describe() == t);
  }
  CHECK_THROWS_AS(OrderStrategy::parse("sideways"), InputError);
  CHECK_THROWS_AS(OrderStrategy::parse("adaptive:nope"), InputError);
  CHECK_THROWS_AS(OrderStrategy::parse("fixed:1,x"), InputError);
}

TEST_CASE("a policy that repeats an element violates the contract") {
  const InstanceSpec spec = uniform_instance(path_graph(4));
  const Realization r = draw_realization(spec, 2);
  const auto always_zero = OrderStrategy::adaptive([](const StateView&) { return 0; });
  CHECK_THROWS_AS(run_online_edge(spec, r, always_zero), InvariantViolation);
  const auto out_of_range = OrderStrategy::adaptive([](const StateView&) { return 99; });
  CHECK_THROWS_AS(run_online_edge(spec, r, out_of_range), InvariantViolation);
}

TEST_CASE("custom policies see the public state as it evolves") {
  const InstanceSpec spec = uniform_instance(path_graph(4));
  const Realization r = draw_realization(spec, 2);
  std::size_t calls = 0;
  const auto last_first = OrderStrategy::adaptive([&](const StateView& v) {
    CHECK(v.prices != nullptr);
    CHECK(static_cast<std::size_t>(std::count(v.arrived.begin(), v.arrived.end(), 1)) == calls);
    ++calls;
    for (std::int32_t e = 2; e >= 0; --e) {
      if (!v.arrived[e]) return e;
    }
    return -1;
  });
  CHECK(run_online_edge(spec, r, last_first).arrivals == std::vector<std::int32_t>{2, 1, 0});
  CHECK(calls == 3);
}

TEST_CASE("shipped adaptive policies release each element exactly once") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const InstanceSpec gen = random_mixed_instance(s, 8, false);
    const Realization rg = draw_realization(gen, s);
    auto a = run_online_edge(gen, rg, OrderStrategy::adaptive("block-best")).arrivals;
    CHECK_NOTHROW(require_permutation(gen.graph, ArrivalModel::edge, a));

    const InstanceSpec bip = random_mixed_instance(s, 8, true);
    const Realization rb = draw_realization(bip, s);
    for (const char* p : {"block-best", "starve-items"}) {
      auto v = run_online_vertex(bip, rb, OrderStrategy::adaptive(p)).arrivals;
      CHECK_NOTHROW(require_permutation(bip.graph, ArrivalModel::vertex, v));
      auto t = run_truthful(bip, rb, OrderStrategy::adaptive(p)).record.arrivals;
      CHECK_NOTHROW(require_permutation(bip.graph, ArrivalModel::truthful, t));
    }
  }
}

TEST_CASE("block-best releases the acceptable edge that blocks the most weight") {
  const InstanceSpec spec = uniform_instance(path_graph(4), DistSpec::uniform(0, 20));
  // Greedy on the samples takes edge 1, pricing vertices 1 and 2 at 0.3.
  const Realization r = draws({{0.1, 5}, {0.3, 2}, {0.2, 6}});
  const RunRecord rec = run_online_edge(spec, r, OrderStrategy::adaptive("block-best"));
  // Edge 1 blocks 5 + 6; it arrives first and is accepted.
  CHECK(rec.arrivals.front() == 1);
  CHECK(rec.matching.edges == std::vector<EdgeId>{1});
}

TEST_CASE("starve-items is not defined for edge arrivals") {
  const InstanceSpec spec = uniform_instance(path_graph(3));
  const Realization r = draw_realization(spec, 1);
  CHECK_THROWS_AS(run_online_edge(spec, r, OrderStrategy::adaptive("starve-items")), InputError);
}
