#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "prophet/distributions.hpp"
#include "prophet/generators.hpp"
#include "test_support.hpp"

using namespace prophet;

namespace {

constexpr std::size_t kDraws = 20000;
// DKW band at confidence 1 - 1e-6.
const double kKsBand = std::sqrt(std::log(2.0 / 1e-6) / (2.0 * kDraws));

std::vector<std::pair<double, double>> many_draws(const DistSpec& d) {
  const InstanceSpec spec = make_instance(Graph::general(2, {{0, 1}}), d);
  std::vector<std::pair<double, double>> out;
  for (std::uint64_t s = 0; s < kDraws; ++s) {
    const Realization r = draw_realization(spec, s);
    out.emplace_back(r.sample(0).value, r.real(0).value);
  }
  return out;
}

double ks_statistic(std::vector<double> xs, const DistSpec& d) {
  std::sort(xs.begin(), xs.end());
  double worst = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = d.cdf(xs[i]);
    worst = std::max({worst, std::abs(f - (i + 1) / n), std::abs(f - i / n)});
  }
  return worst;
}

}  // namespace

TEST_CASE("parse and format distributions") {
  CHECK(parse_dist("uniform:0,1") == DistSpec::uniform(0, 1));
  CHECK(parse_dist("point_mass:0.5") == DistSpec::point_mass(0.5));
  CHECK(parse_dist("pareto:1,3") == DistSpec::pareto(1, 3));
  CHECK(parse_dist(format_dist(DistSpec::bernoulli_scaled(0.3, 10))) == DistSpec::bernoulli_scaled(0.3, 10));
  CHECK_THROWS_AS(parse_dist("gaussian:0,1"), InputError);
  CHECK_THROWS_AS(parse_dist("uniform:2,1"), InputError);
  CHECK_THROWS_AS(parse_dist("uniform:-1,1"), InputError);
  CHECK_THROWS_AS(parse_dist("exponential:0"), InputError);
  CHECK_THROWS_AS(parse_dist("uniform:0"), InputError);
  CHECK_THROWS_AS(parse_dist("uniform:0,x"), InputError);
  CHECK_THROWS_AS(parse_dist("bernoulli_scaled:1.5,2"), InputError);
}

TEST_CASE("continuous families pass a KS band and match their means") {
  for (const DistSpec& d : {DistSpec::uniform(0, 1), DistSpec::uniform(2, 5), DistSpec::exponential(1),
                            DistSpec::exponential(3), DistSpec::pareto(1, 3)}) {
    CAPTURE(format_dist(d));
    const auto xs = many_draws(d);
    std::vector<double> s, r;
    for (auto [a, b] : xs) {
      s.push_back(a);
      r.push_back(b);
    }
    CHECK(ks_statistic(s, d) < kKsBand);
    CHECK(ks_statistic(r, d) < kKsBand);
    double mean = 0.0;
    for (double x : r) mean += x;
    mean /= kDraws;
    CHECK(std::abs(mean - d.mean()) < 0.05 * d.mean() + 0.01);
  }
}

TEST_CASE("sample and real copies are uncorrelated") {
  const auto xs = many_draws(DistSpec::uniform(0, 1));
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (auto [a, b] : xs) {
    sx += a;
    sy += b;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  const double n = kDraws;
  const double corr = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
  CHECK(std::abs(corr) < 5.0 / std::sqrt(n));
}

TEST_CASE("bernoulli_scaled hits its atom with the right frequency") {
  const auto xs = many_draws(DistSpec::bernoulli_scaled(0.3, 10));
  std::size_t hits = 0;
  for (auto [a, b] : xs) {
    CHECK((b == 0.0 || b == 10.0));
    hits += b == 10.0;
  }
  const double p = static_cast<double>(hits) / kDraws;
  CHECK(std::abs(p - 0.3) < 5 * std::sqrt(0.21 / kDraws));
}

TEST_CASE("point mass draws are constant with distinct keys") {
  const InstanceSpec spec = make_instance(complete_graph(5), DistSpec::point_mass(1.0));
  const Realization r = draw_realization(spec, 7);
  std::vector<std::uint64_t> keys;
  for (const auto& d : r.draws()) {
    CHECK(d.sample.value == 1.0);
    CHECK(d.real.value == 1.0);
    keys.push_back(d.sample.key);
    keys.push_back(d.real.key);
  }
  std::sort(keys.begin(), keys.end());
  CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
}

TEST_CASE("draws are deterministic per seed and independent of edge-list order") {
  const InstanceSpec a = make_instance(Graph::general(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), DistSpec::exponential(1));
  const InstanceSpec b = make_instance(Graph::general(4, {{3, 2}, {0, 3}, {1, 0}, {2, 1}}), DistSpec::exponential(1));
  CHECK(draw_realization(a, 42) == draw_realization(a, 42));
  CHECK_FALSE(draw_realization(a, 42) == draw_realization(a, 43));
  const Realization ra = draw_realization(a, 42);
  const Realization rb = draw_realization(b, 42);
  CHECK(ra.at(0) == rb.at(2));
  CHECK(ra.at(1) == rb.at(3));
  CHECK(ra.at(2) == rb.at(0));
  CHECK(ra.at(3) == rb.at(1));
}

TEST_CASE("unit_interval covers [0,1) with 53-bit resolution") {
  CHECK(unit_interval(0) == 0.0);
  CHECK(unit_interval(~0ULL) < 1.0);
  CHECK(unit_interval(~0ULL) == 1.0 - 0x1.0p-53);
}

TEST_CASE("instance validation names the edge") {
  InstanceSpec s = testing_support::uniform_instance(Graph::general(2, {{0, 1}}));
  s.dists[0].params = {1.0};
  CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("edge 0"), InputError);
  s.dists.clear();
  CHECK_THROWS_AS(s.validate(), InputError);
}
