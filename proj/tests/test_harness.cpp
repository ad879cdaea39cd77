#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "prophet/experiment.hpp"
#include "prophet/generators.hpp"
#include "prophet/instance_io.hpp"
#include "prophet/invariants.hpp"
#include "prophet/stats.hpp"
#include "test_support.hpp"

using namespace prophet;

namespace {

const char* kMinimal = R"({
  "kind": "general",
  "vertices": 2,
  "edges": [ { "u": 0, "v": 1, "dist": { "family": "uniform", "params": [0, 1] } } ]
})";

ExperimentConfig small_config(ArrivalModel model, const char* gen, std::size_t trials) {
  ExperimentConfig c;
  c.instance = generate_instance(GeneratorSpec::parse(gen), DistSpec::exponential(1));
  c.instance_label = gen;
  c.model = model;
  c.strategy = OrderStrategy::uniform_random(0);
  c.trials = trials;
  c.seed = 123;
  return c;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("prophet_test_" + name)).string();
}

}  // namespace

TEST_CASE("minimal instance file parses") {
  const InstanceSpec s = parse_instance(kMinimal);
  CHECK(s.graph.vertex_count() == 2);
  CHECK(s.graph.edge_count() == 1);
  CHECK(s.dists[0] == DistSpec::uniform(0, 1));
}

TEST_CASE("schema errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse_instance(R"({"kind":"bipartite","vertices":3,"buyers":[0,1],"items":[2],
      "edges":[{"u":0,"v":2,"dist":{"family":"uniform","params":[0,1]}},
               {"u":0,"v":1,"dist":{"family":"uniform","params":[0,1]}}]})"),
                       doctest::Contains("edge 1"), InputError);
  CHECK_THROWS_WITH_AS(parse_instance(R"({"kind":"general","vertices":2,
      "edges":[{"u":0,"v":1,"dist":{"family":"uniform","params":[0]}}]})"),
                       doctest::Contains("edges[0].dist"), InputError);
  CHECK_THROWS_WITH_AS(parse_instance(R"({"kind":"general","vertices":2,
      "edges":[{"u":0,"v":1,"dist":{"family":"uniform","params":"x"}}]})"),
                       doctest::Contains("edges[0].dist.params"), InputError);
  CHECK_THROWS_WITH_AS(parse_instance(R"({"kind":"general","vertices":2,"edges":[{"u":0,"v":5}]})"),
                       doctest::Contains("edges[0].v"), InputError);
  CHECK_THROWS_WITH_AS(parse_instance(R"({"kind":"tree","vertices":2,"edges":[]})"),
                       doctest::Contains("kind"), InputError);
  CHECK_THROWS_WITH_AS(parse_instance("{\n  \"kind\": ,\n}"), doctest::Contains("line 2"), InputError);
}

TEST_CASE("instances and realizations round-trip") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const InstanceSpec spec = random_mixed_instance(s, 8, s % 2 == 0);
    const InstanceSpec back = instance_from_json(nlohmann::json::parse(instance_to_json(spec).dump()));
    CHECK(back == spec);
    const Realization r = draw_realization(spec, s);
    CHECK(realization_from_json(nlohmann::json::parse(realization_to_json(r).dump())) == r);
  }
  const std::string path = temp_path("instance.json");
  const InstanceSpec spec = generate_instance(GeneratorSpec::parse("bipartite:3x4"), DistSpec::pareto(1, 3));
  save_instance(spec, path);
  CHECK(load_instance(path) == spec);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_instance(temp_path("does_not_exist.json")), InputError);
}

TEST_CASE("generators") {
  CHECK(GeneratorSpec::parse("complete:6").build().edge_count() == 15);
  CHECK(GeneratorSpec::parse("bipartite:3x6").build().edge_count() == 18);
  CHECK(GeneratorSpec::parse("star:8").build().edge_count() == 7);
  CHECK(GeneratorSpec::parse("path:5").build().edge_count() == 4);
  CHECK(GeneratorSpec::parse("gnp:8:0.5:3").build().edge_count() ==
        GeneratorSpec::parse("gnp:8:0.5:3").build().edge_count());
  CHECK(GeneratorSpec::parse("gnp:6:1").build().edge_count() == 15);
  CHECK(GeneratorSpec::parse("gnp:6:0").build().edge_count() == 0);
  CHECK_THROWS_AS(GeneratorSpec::parse("gnp:6:2"), InputError);
  CHECK_THROWS_AS(GeneratorSpec::parse("wheel:5"), InputError);
  CHECK_THROWS_AS(GeneratorSpec::parse("bipartite:3"), InputError);
  const Graph b = complete_bipartite(2, 3);
  CHECK(b.buyers().size() == 2);
  CHECK(b.items().front() == 2);
}

TEST_CASE("stats helpers") {
  const std::vector<double> xs{1, 2, 3, 4};
  const MeanSe m = mean_se(xs);
  CHECK(m.mean == 2.5);
  CHECK(m.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  const std::vector<double> small{1, 1, 1}, large{2, 2, 2};
  CHECK(dominance_gate(small, large, 2).passed);
  CHECK_FALSE(dominance_gate(small, large, 1.5).passed);
  const std::vector<double> hits{1, 0, 1, 2}, totals{2, 1, 1, 4};
  CHECK(pooled_proportion(hits, totals).value == 0.5);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("ratio estimate handles empty algorithms") {
  std::vector<TrialRow> rows(3);
  CHECK(summarize(rows).ratio_undefined);
  rows[1].w_opt = 1;
  CHECK(summarize(rows).ratio_infinite);
  rows[1].w_alg = 0.5;
  CHECK(summarize(rows).ratio == 2);
}

TEST_CASE("experiments are deterministic and thread-count invariant") {
  for (ArrivalModel model : {ArrivalModel::edge, ArrivalModel::vertex, ArrivalModel::truthful}) {
    ExperimentConfig c = small_config(model, model == ArrivalModel::edge ? "complete:5" : "bipartite:3x3", 200);
    const std::string one = results_csv(estimate_ratio(c));
    CHECK(one == results_csv(estimate_ratio(c)));
    c.threads = 3;
    CHECK(one == results_csv(estimate_ratio(c)));
    c.seed = 124;
    CHECK_FALSE(one == results_csv(estimate_ratio(c)));
  }
}

TEST_CASE("saved CSV is byte-identical across runs") {
  const ExperimentConfig c = small_config(ArrivalModel::edge, "star:6", 100);
  const std::string a = temp_path("a.csv"), b = temp_path("b.csv");
  save_results(c, estimate_ratio(c), a, "csv");
  save_results(c, estimate_ratio(c), b, "csv");
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a).rfind("trial,seed,w_alg,w_opt,w_ms,w_eprime,w_msafe\n", 0) == 0);
  const std::string j = temp_path("a.json");
  save_results(c, estimate_ratio(c), j, "json");
  const auto parsed = nlohmann::json::parse(read_file(j));
  CHECK(parsed["trials"] == 100);
  CHECK(parsed["ratio"].is_number());
  CHECK_THROWS_AS(save_results(c, estimate_ratio(c), j, "xml"), InputError);
  for (const auto& p : {a, b, j}) std::remove(p.c_str());
}

TEST_CASE("configuration errors map to the right exception") {
  ExperimentConfig c = small_config(ArrivalModel::vertex, "complete:4", 10);
  CHECK_THROWS_AS(c.validate(), CapabilityError);
  c = small_config(ArrivalModel::edge, "complete:8", 10);
  CHECK_THROWS_AS(c.validate(), CapabilityError);
  c = small_config(ArrivalModel::edge, "complete:4", 0);
  CHECK_THROWS_AS(c.validate(), InputError);
  c = small_config(ArrivalModel::edge, "complete:4", 10);
  c.strategy = OrderStrategy::adaptive("starve-items");
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("invariant suite passes on small configurations") {
  for (ArrivalModel model : {ArrivalModel::edge, ArrivalModel::vertex, ArrivalModel::truthful}) {
    const ExperimentConfig c =
        small_config(model, model == ArrivalModel::edge ? "complete:5" : "bipartite:3x3", 400);
    const InvariantReport rep = run_invariant_suite(c, 40);
    CAPTURE(rep.to_text());
    CHECK(rep.all_passed());
    CHECK(rep.to_json()["passed"] == true);
  }
}

TEST_CASE("greedy allowance is relative") {
  CHECK(greedy_two_approx_holds(1, 2));
  CHECK(greedy_two_approx_holds(1, 2 + 1e-13));
  CHECK_FALSE(greedy_two_approx_holds(1, 2.001));
  CHECK(greedy_two_approx_holds(0, 0));
}
