#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "prophet/core.hpp"
#include "test_support.hpp"

using namespace prophet;

TEST_CASE("compare orders by value, then by smaller key") {
  CHECK(compare({3.0, 10}, {2.0, 1}) == Ordering::greater);
  CHECK(compare({2.0, 1}, {3.0, 10}) == Ordering::less);
  CHECK(compare({2.0, 4}, {2.0, 9}) == Ordering::greater);
  CHECK(compare({2.0, 9}, {2.0, 4}) == Ordering::less);
  CHECK(compare({0.0, 1}, {0.0, 2}) == Ordering::greater);
  CHECK_THROWS_AS(compare({1.0, 7}, {2.0, 7}), InvariantViolation);
}

TEST_CASE("rank order is a strict total order on distinct keys") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(0, 3);
  for (int round = 0; round < 200; ++round) {
    std::vector<DrawnValue> xs;
    for (std::uint64_t k = 0; k < 12; ++k) xs.push_back({static_cast<double>(small(rng)), rng()});
    for (const auto& a : xs) {
      CHECK_FALSE(ranks_above(a, a));
      for (const auto& b : xs) {
        if (a.key == b.key) continue;
        CHECK(ranks_above(a, b) != ranks_above(b, a));
        for (const auto& c : xs) {
          if (ranks_above(a, b) && ranks_above(b, c)) CHECK(ranks_above(a, c));
        }
      }
    }
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end(), RankDescending{});
    auto reversed = xs;
    std::reverse(reversed.begin(), reversed.end());
    std::sort(reversed.begin(), reversed.end(), RankDescending{});
    CHECK(sorted == reversed);
  }
}

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(Graph::general(2, {{0, 2}}), InputError);
  CHECK_THROWS_AS(Graph::general(3, {{1, 1}}), InputError);
  CHECK_THROWS_AS(Graph::general(3, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(Graph::bipartite(4, {0, 1}, {2, 3}, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Graph::bipartite(3, {0, 1}, {1, 2}, {{0, 2}}), InputError);

  const Graph b = Graph::bipartite(4, {0, 1}, {2, 3}, {{2, 0}, {1, 3}});
  CHECK(b.is_bipartite());
  CHECK(b.edge(0).u == 0);
  CHECK(b.edge(0).v == 2);
  CHECK(b.is_buyer(1));
  CHECK_FALSE(b.is_buyer(3));
  CHECK(b.incident(0).size() == 1);
}

TEST_CASE("validate_matching on small examples") {
  const Graph tri = Graph::general(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(validate_matching(tri, std::vector<EdgeId>{}));
  CHECK(validate_matching(tri, std::vector<EdgeId>{1}));
  CHECK_FALSE(validate_matching(tri, std::vector<EdgeId>{0, 1}));
  CHECK_FALSE(validate_matching(tri, std::vector<EdgeId>{0, 2}));
  const Graph p4 = Graph::general(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(validate_matching(p4, std::vector<EdgeId>{0, 2}));
  CHECK_THROWS_AS(validate_matching(p4, std::vector<EdgeId>{5}), InputError);
}

TEST_CASE("realization rejects duplicate keys") {
  CHECK_THROWS_AS(Realization(std::vector<EdgeDraws>{{{1.0, 1}, {2.0, 1}}}), InvariantViolation);
  CHECK_NOTHROW(Realization(std::vector<EdgeDraws>{{{1.0, 1}, {1.0, 2}}}));
}

TEST_CASE("prices come from the sample matching; unpriced vertices admit every draw") {
  const Graph p3 = Graph::general(3, {{0, 1}, {1, 2}});
  const auto s = testing_support::values({4.0, 2.0});
  const Matching ms = make_selection({0}, s);
  const PriceTable prices = prices_from_matching(p3, ms, s);
  CHECK(prices.price(0) == 4.0);
  CHECK(prices.price(1) == 4.0);
  CHECK(prices.price(2) == 0.0);
  CHECK_FALSE(prices.origin(2).has_value());
  CHECK(prices.beats({0.0, 99}, 2));
  CHECK_FALSE(prices.beats({4.0, 99}, 0));
  CHECK(prices.beats({4.0, 0}, 0));
}
