// prophet_sim: command-line front end for the simulator.
//
// Exit codes: 0 pass, 1 invariant failure, 2 input error, 3 capability error.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "prophet/edge_arrival.hpp"
#include "prophet/experiment.hpp"
#include "prophet/generators.hpp"
#include "prophet/instance_io.hpp"
#include "prophet/invariants.hpp"
#include "prophet/stats.hpp"
#include "prophet/truthful.hpp"
#include "prophet/vertex_arrival.hpp"

using namespace prophet;
using nlohmann::json;

namespace {

struct Options {
  std::string instance;
  std::string gen;
  std::string dist = "uniform:0,1";
  std::string model = "edge";
  std::string order = "random";
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::size_t cap = 24;
  std::size_t coupling = 1000;
  std::size_t misreports = 200;
};

constexpr int kExitInvariant = 1;
constexpr int kExitInput = 2;
constexpr int kExitCapability = 3;

void add_instance_flags(CLI::App* cmd, Options& o) {
  auto* inst = cmd->add_option("--instance", o.instance, "instance JSON file");
  auto* gen = cmd->add_option("--gen", o.gen, "generator: complete:N|bipartite:AxB|gnp:N:P[:SEED]|star:N|path:N");
  inst->excludes(gen);
  cmd->add_option("--dist", o.dist, "edge distribution for --gen, e.g. uniform:0,1")->capture_default_str();
}

void add_run_flags(CLI::App* cmd, Options& o) {
  add_instance_flags(cmd, o);
  cmd->add_option("--model", o.model, "edge|vertex|truthful")->capture_default_str();
  cmd->add_option("--order", o.order, "fixed:i,j,...|random[:SEED]|inc|dec|adaptive:<policy>")->capture_default_str();
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", o.out, "output path");
  cmd->add_option("--format", o.format, "csv|json");
  cmd->add_option("--cap", o.cap, "edge cap for exact OPT on general graphs")->capture_default_str();
}

InstanceSpec load_spec(const Options& o, std::string& label) {
  if (!o.instance.empty()) {
    label = o.instance;
    return load_instance(o.instance);
  }
  if (o.gen.empty()) throw InputError("one of --instance or --gen is required");
  const GeneratorSpec g = GeneratorSpec::parse(o.gen);
  const DistSpec d = parse_dist(o.dist);
  label = g.describe() + " " + format_dist(d);
  return generate_instance(g, d);
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig c;
  c.instance = load_spec(o, c.instance_label);
  c.model = parse_model(o.model);
  c.strategy = OrderStrategy::parse(o.order);
  c.trials = o.trials;
  c.seed = o.seed;
  c.threads = o.threads;
  c.oracle.exhaustive_cap = o.cap;
  c.validate();
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

json matching_json(const Matching& m) { return {{"edges", m.edges}, {"weight", m.weight}}; }

int cmd_simulate(const Options& o) {
  const ExperimentConfig c = make_config(o);
  const InstanceSpec& spec = c.instance;
  const std::uint64_t seed = trial_seed(c.seed, 0);
  const Realization real = draw_realization(spec, seed);
  const OrderStrategy strategy = strategy_for_trial(c.strategy, seed);
  RunRecord rec;
  json extra = json::object();
  switch (c.model) {
    case ArrivalModel::edge: rec = run_online_edge(spec, real, strategy); break;
    case ArrivalModel::vertex:
      rec = run_online_vertex(spec, real, strategy);
      extra["m_safe"] = matching_json(build_msafe(spec.graph, rec.feasible_set, real.reals()));
      break;
    case ArrivalModel::truthful: {
      const MechanismOutcome out = run_truthful(spec, real, strategy);
      rec = out.record;
      json pay = json::object();
      for (const auto& [b, p] : out.charged) pay[std::to_string(b)] = p;
      json util = json::object();
      for (const auto& [b, u] : out.utilities) util[std::to_string(b)] = u;
      extra["charged"] = pay;
      extra["utilities"] = util;
      break;
    }
  }
  const Matching opt = max_weight_matching(spec.graph, real.reals(), c.oracle);

  const std::string fmt = o.format.empty() ? "json" : o.format;
  if (fmt == "csv") {
    std::ostringstream os;
    os << "step,element,edge,observed,threshold,outcome\n";
    for (const StepEvent& e : rec.events) {
      os << e.step << ',' << e.element << ',';
      if (e.edge != kNoEdge) os << e.edge;
      os << ',' << format_double(e.observed) << ',' << format_double(e.threshold) << ',' << to_string(e.outcome)
         << '\n';
    }
    emit(o, os.str());
    return 0;
  }
  if (fmt != "json") throw InputError("unknown format '" + fmt + "' (expected csv|json)");
  json prices = json::array();
  for (Vertex v = 0; v < spec.graph.vertex_count(); ++v) prices.push_back(rec.prices.price(v));
  json events = json::array();
  for (const StepEvent& e : rec.events) {
    events.push_back({{"step", e.step},
                      {"element", e.element},
                      {"edge", e.edge == kNoEdge ? json(nullptr) : json(e.edge)},
                      {"observed", e.observed},
                      {"threshold", e.threshold},
                      {"outcome", to_string(e.outcome)}});
  }
  json j = {{"instance", c.instance_label},
            {"model", to_string(c.model)},
            {"order", c.strategy.describe()},
            {"seed", c.seed},
            {"realization", realization_to_json(real)},
            {"sample_matching", matching_json(rec.sample_matching)},
            {"prices", prices},
            {"arrivals", rec.arrivals},
            {"events", events},
            {"feasible_set", rec.feasible_set},
            {"feasible_weight", rec.feasible_weight},
            {"matching", matching_json(rec.matching)},
            {"opt", matching_json(opt)}};
  j.update(extra);
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_ratio(const Options& o) {
  const ExperimentConfig c = make_config(o);
  const ExperimentResult res = estimate_ratio(c);
  if (!o.out.empty()) save_results(c, res, o.out, o.format.empty() ? "csv" : o.format);
  if (o.out.empty() && o.format == "csv") {
    std::cout << results_csv(res);
  } else {
    std::cout << results_json(c, res).dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const ExperimentConfig c = make_config(o);
  const InvariantReport rep = run_invariant_suite(c, o.coupling);
  emit(o, o.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text());
  return rep.all_passed() ? 0 : kExitInvariant;
}

int cmd_audit(const Options& o) {
  Options t = o;
  t.model = "truthful";
  const ExperimentConfig c = make_config(t);
  const InstanceSpec& spec = c.instance;
  std::size_t audits = 0, failed = 0;
  json rows = json::array();
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    const std::uint64_t seed = trial_seed(c.seed, trial);
    const Realization real = draw_realization(spec, seed);
    const MechanismOutcome out = run_truthful(spec, real, strategy_for_trial(c.strategy, seed));
    for (Vertex b : spec.graph.buyers()) {
      const AuditResult a = misreport_audit(spec, real, out.record.arrivals, b, o.misreports, mix_seed(seed, b));
      ++audits;
      if (!a.passed) ++failed;
      rows.push_back({{"trial", trial},
                      {"buyer", b},
                      {"passed", a.passed},
                      {"truthful_utility", a.truthful_utility},
                      {"best_misreport_utility", a.best_misreport_utility}});
    }
  }
  const json summary = {{"instance", c.instance_label}, {"order", c.strategy.describe()},
                        {"trials", c.trials},           {"misreports_per_buyer", o.misreports},
                        {"audits", audits},             {"failed", failed},
                        {"passed", failed == 0}};
  if (o.format == "json") {
    emit(o, json{{"summary", summary}, {"audits", rows}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << (failed == 0 ? "PASS " : "FAIL ") << (audits - failed) << "/" << audits << " buyer audits, "
       << o.misreports << " misreports each\n";
    emit(o, os.str());
  }
  return failed == 0 ? 0 : kExitInvariant;
}

int cmd_gen(const Options& o) {
  if (o.gen.empty()) throw InputError("--gen is required");
  std::string label;
  const InstanceSpec spec = load_spec(o, label);
  emit(o, instance_to_json(spec).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Single-sample prophet matching simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "one run; prints the trace");
  add_run_flags(sim, o);

  auto* ratio = app.add_subcommand("ratio", "Monte Carlo estimate of E[OPT]/E[w(M)]");
  add_run_flags(ratio, o);
  ratio->add_option("--trials", o.trials, "number of trials")->capture_default_str();
  ratio->add_option("--threads", o.threads, "worker threads")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_run_flags(verify, o);
  verify->add_option("--trials", o.trials, "number of trials")->capture_default_str();
  verify->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  verify->add_option("--coupling", o.coupling, "random instances in the coupling sweep")->capture_default_str();

  auto* audit = app.add_subcommand("audit-truthful", "misreport audits for every buyer");
  add_run_flags(audit, o);
  audit->add_option("--trials", o.trials, "number of realizations")->capture_default_str();
  audit->add_option("--misreports", o.misreports, "misreports per buyer")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "write a generated instance as JSON");
  add_instance_flags(gen, o);
  gen->add_option("--out", o.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*sim) return cmd_simulate(o);
    if (*ratio) return cmd_ratio(o);
    if (*verify) return cmd_verify(o);
    if (*audit) return cmd_audit(o);
    if (*gen) return cmd_gen(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInput;
}
