#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "prophet/edge_arrival.hpp"
#include "prophet/generators.hpp"
#include "prophet/truthful.hpp"
#include "test_support.hpp"

using namespace prophet;
using testing_support::draws;
using testing_support::uniform_instance;

namespace {

InstanceSpec single_pair() {
  return uniform_instance(complete_bipartite(1, 1), DistSpec::uniform(0, 10));
}

InstanceSpec two_buyers() {
  return uniform_instance(Graph::bipartite(4, {0, 1}, {2, 3}, {{0, 2}, {0, 3}, {1, 2}}),
                          DistSpec::uniform(0, 10));
}

}  // namespace

TEST_CASE("single pair: buyer pays the sample price") {
  const InstanceSpec spec = single_pair();
  const Realization r = draws({{5, 7}});
  const std::vector<Vertex> order{0};
  const MechanismOutcome out = run_truthful(spec, r, order);
  CHECK(out.matching.edges == std::vector<EdgeId>{0});
  CHECK(out.charged.at(0) == 5);
  CHECK(out.utility(0) == 2);

  const MechanismOutcome shaded = run_truthful(spec, r, order, Reports{{0, {{0, 4.0}}}});
  CHECK(shaded.matching.empty());
  CHECK(shaded.utility(0) == 0);
  CHECK(shaded.charged.empty());
}

TEST_CASE("buyer maximizes utility, not value") {
  const InstanceSpec spec = two_buyers();
  // Prices: p0 = p3 = 0.5, p1 = p2 = 2. Buyer 0: edge 0 gives 6 - 2 = 4,
  // edge 1 gives 5 - 0.5 = 4.5.
  const Realization r = draws({{1, 6}, {0.5, 5}, {2, 7}});
  const MechanismOutcome out = run_truthful(spec, r, std::vector<Vertex>{0, 1});
  CHECK(out.matching.edges == std::vector<EdgeId>{1, 2});
  CHECK(out.matching.weight == 12);
  CHECK(out.charged.at(0) == 0.5);
  CHECK(out.charged.at(1) == 2);
  CHECK(out.utility(0) == 4.5);
  CHECK(out.utility(1) == 5);
  CHECK(out.feasible_set == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("taken items are skipped; the buyer falls back to a free one") {
  const InstanceSpec spec = two_buyers();
  // p0 = 3 from edge 1's sample; buyer 1 takes item 2 first.
  const Realization r = draws({{1, 8}, {3, 6}, {2, 7}});
  const MechanismOutcome out = run_truthful(spec, r, std::vector<Vertex>{1, 0});
  CHECK(out.charged.at(1) == 2);
  CHECK(out.matching.contains(1));
  CHECK(out.charged.at(0) == 3);
  CHECK(out.utility(0) == 3);
}

TEST_CASE("truthful E' equals the edge-arrival E' under coupling") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const InstanceSpec spec = random_mixed_instance(s + 3, 8, true);
    const Realization r = draw_realization(spec, s);
    const MechanismOutcome out = run_truthful(spec, r, OrderStrategy::uniform_random(s));
    std::vector<EdgeId> ids(static_cast<std::size_t>(spec.graph.edge_count()));
    for (EdgeId e = 0; e < spec.graph.edge_count(); ++e) ids[e] = e;
    const auto eprime = run_offline_edge(spec, r, CoinSource::coupled(), ids).record.feasible_set;
    CHECK(out.feasible_set == eprime);
    CHECK(maximality_check(spec.graph, out, eprime));
    CHECK(validate_matching(spec.graph, out.matching));
    for (const auto& [b, u] : out.utilities) CHECK(u >= 0);
  }
}

TEST_CASE("misreports never beat truthful reporting") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const InstanceSpec spec = random_mixed_instance(s + 900, 7, true);
    const Realization r = draw_realization(spec, s);
    const MechanismOutcome out = run_truthful(spec, r, OrderStrategy::uniform_random(s));
    for (Vertex b : spec.graph.buyers()) {
      const AuditResult a = misreport_audit(spec, r, out.record.arrivals, b, 60, s * 13 + b);
      CHECK(a.passed);
      CHECK(a.trials == 60);
      CHECK(a.best_misreport_utility <= a.truthful_utility);
    }
  }
}

TEST_CASE("exhaustive misreports on 2x2 grids") {
  const InstanceSpec spec = uniform_instance(complete_bipartite(2, 2), DistSpec::uniform(0, 4));
  const std::vector<double> grid{0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4};
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Realization r = draw_realization(spec, s);
    for (const std::vector<Vertex>& order : {std::vector<Vertex>{0, 1}, std::vector<Vertex>{1, 0}}) {
      for (Vertex b : {0, 1}) {
        const AuditResult a = exhaustive_misreport_audit(spec, r, order, b, grid);
        CHECK(a.passed);
        CHECK(a.trials == grid.size() * grid.size());
      }
    }
  }
}

TEST_CASE("malformed reports are input errors") {
  const InstanceSpec spec = two_buyers();
  const Realization r = draws({{1, 6}, {0.5, 5}, {2, 7}});
  const std::vector<Vertex> order{0, 1};
  CHECK_THROWS_AS(run_truthful(spec, r, order, Reports{{0, {{2, 1.0}}}}), InputError);
  CHECK_THROWS_AS(run_truthful(spec, r, order, Reports{{0, {{0, -1.0}}}}), InputError);
  CHECK_THROWS_AS(run_truthful(spec, r, order, Reports{{0, {{0, std::nan("")}}}}), InputError);
}
