#include "prophet/truthful.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "prophet/oracle.hpp"
#include "prophet/selection_rules.hpp"

namespace prophet {

double MechanismOutcome::utility(Vertex buyer) const {
  const auto it = utilities.find(buyer);
  return it == utilities.end() ? 0.0 : it->second;
}

TruthfulMechanism::TruthfulMechanism(const InstanceSpec& spec, const Realization& real,
                                     const Reports& reports)
    : spec_(spec), real_(real) {
  const Graph& g = spec.graph;
  if (!g.is_bipartite()) throw CapabilityError("truthful mechanism requires a bipartite graph");
  if (real.edge_count() != g.edge_count()) {
    throw InputError("realization does not match the instance edge count");
  }
  reals_ = real.reals();
  reported_ = reals_;
  for (const auto& [buyer, values] : reports) {
    if (!g.is_buyer(buyer)) throw InputError("report for non-buyer vertex " + std::to_string(buyer));
    for (const auto& [e, value] : values) {
      if (!g.contains_edge(e) || g.edge(e).u != buyer) {
        throw InputError("report of buyer " + std::to_string(buyer) + " references non-incident edge " +
                         std::to_string(e));
      }
      if (!std::isfinite(value) || value < 0) {
        throw InputError("reported values must be finite and non-negative");
      }
      // Reports keep the real draw's tie-break key.
      reported_[static_cast<std::size_t>(e)].value = value;
    }
  }
  const auto samples = real.samples();
  record_.sample_matching = greedy_matching(g, samples);
  record_.prices = prices_from_matching(g, record_.sample_matching, samples);
  arrived_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  matched_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
}

void TruthfulMechanism::observe(Vertex buyer) {
  const Graph& g = spec_.graph;
  if (!g.is_buyer(buyer)) throw InputError("vertex " + std::to_string(buyer) + " is not a buyer");
  if (arrived_[static_cast<std::size_t>(buyer)]) {
    throw InputError("buyer " + std::to_string(buyer) + " arrived twice");
  }
  arrived_[static_cast<std::size_t>(buyer)] = 1;
  record_.arrivals.push_back(buyer);

  for (EdgeId e : g.incident(buyer)) {
    if (beats_both(g, record_.prices, e, reported_[static_cast<std::size_t>(e)])) feasible_.push_back(e);
  }

  StepEvent ev;
  ev.step = record_.events.size();
  ev.element = buyer;
  const EdgeId chosen = utility_maximizing_edge(g, record_.prices, buyer, reported_, matched_);
  if (chosen == kNoEdge) {
    ev.outcome = StepOutcome::no_feasible_item;
  } else {
    const Vertex item = g.edge(chosen).v;
    matched_[static_cast<std::size_t>(item)] = matched_[static_cast<std::size_t>(buyer)] = 1;
    accepted_.push_back(chosen);
    charged_[buyer] = offered_price(g, record_.prices, chosen);
    ev.edge = chosen;
    ev.observed = reals_[static_cast<std::size_t>(chosen)].value;
    ev.threshold = charged_[buyer];
    ev.outcome = StepOutcome::accepted;
  }
  record_.events.push_back(ev);
}

StateView TruthfulMechanism::view() const {
  StateView v;
  v.model = ArrivalModel::truthful;
  v.spec = &spec_;
  v.realization = &real_;
  v.prices = &record_.prices;
  v.arrived = arrived_;
  v.matched = matched_;
  v.accepted = accepted_;
  v.feasible = feasible_;
  return v;
}

MechanismOutcome TruthfulMechanism::finish() && {
  const Graph& g = spec_.graph;
  MechanismOutcome out;
  for (Vertex b : g.buyers()) out.utilities[b] = 0.0;
  for (EdgeId e : accepted_) {
    const Vertex b = g.edge(e).u;
    out.utilities[b] = reals_[static_cast<std::size_t>(e)].value - charged_.at(b);
  }
  out.charged = std::move(charged_);
  out.matching = make_selection(std::move(accepted_), reals_);
  Matching fs = make_selection(std::move(feasible_), reals_);
  out.feasible_set = fs.edges;
  record_.matching = out.matching;
  record_.feasible_set = std::move(fs.edges);
  record_.feasible_weight = fs.weight;
  out.record = std::move(record_);
  return out;
}

MechanismOutcome run_truthful(const InstanceSpec& spec, const Realization& real,
                              std::span<const Vertex> order, const Reports& reports) {
  TruthfulMechanism mech(spec, real, reports);
  require_permutation(spec.graph, ArrivalModel::truthful, order);
  for (Vertex b : order) mech.observe(b);
  return std::move(mech).finish();
}

MechanismOutcome run_truthful(const InstanceSpec& spec, const Realization& real,
                              const OrderStrategy& strategy, const Reports& reports) {
  TruthfulMechanism mech(spec, real, reports);
  ArrivalSequencer seq(strategy, spec, real, ArrivalModel::truthful);
  while (!seq.done()) mech.observe(seq.next(mech.view()));
  return std::move(mech).finish();
}

namespace {

class Auditor {
 public:
  Auditor(const InstanceSpec& spec, const Realization& real, std::span<const Vertex> order,
          Vertex buyer)
      : spec_(spec), real_(real), order_(order), buyer_(buyer) {
    if (!spec.graph.is_buyer(buyer)) throw InputError("audit: vertex is not a buyer");
    result_.truthful_utility = run_truthful(spec, real, order).utility(buyer);
    result_.best_misreport_utility = -std::numeric_limits<double>::infinity();
  }

  void check(std::map<EdgeId, double> report) {
    Reports reports;
    reports[buyer_] = std::move(report);
    const double u = run_truthful(spec_, real_, order_, reports).utility(buyer_);
    result_.best_misreport_utility = std::max(result_.best_misreport_utility, u);
    if (u > result_.truthful_utility) result_.passed = false;
    ++result_.trials;
  }

  AuditResult result() const {
    AuditResult r = result_;
    if (r.trials == 0) r.best_misreport_utility = r.truthful_utility;
    return r;
  }

 private:
  const InstanceSpec& spec_;
  const Realization& real_;
  std::span<const Vertex> order_;
  Vertex buyer_;
  AuditResult result_;
};

}  // namespace

AuditResult misreport_audit(const InstanceSpec& spec, const Realization& real,
                            std::span<const Vertex> order, Vertex buyer, std::size_t trials,
                            std::uint64_t seed) {
  Auditor audit(spec, real, order, buyer);
  const Graph& g = spec.graph;
  const auto incident = g.incident(buyer);
  const auto samples = real.samples();
  const PriceTable prices = prices_from_matching(g, greedy_matching(g, samples), samples);

  double scale = 1.0;
  for (EdgeId e : incident) {
    scale = std::max({scale, real.real(e).value, offered_price(g, prices, e)});
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::map<EdgeId, double> report;
    std::vector<double> truth;
    for (EdgeId e : incident) truth.push_back(real.real(e).value);
    std::vector<double> values = truth;
    switch (t % 6) {
      case 0:  // multiplicative noise
        for (double& v : values) v *= 2.0 * unit(rng);
        break;
      case 1:  // truncate a random subset to zero
        for (double& v : values) {
          if (unit(rng) < 0.5) v = 0.0;
        }
        break;
      case 2:  // large inflation of a random subset
        for (double& v : values) {
          if (unit(rng) < 0.5) v = v * (1.0 + 10.0 * unit(rng)) + scale * (1.0 + unit(rng));
        }
        break;
      case 3:  // permute the true values across items
        for (std::size_t i = values.size(); i > 1; --i) {
          std::swap(values[i - 1], values[static_cast<std::size_t>(rng() % i)]);
        }
        break;
      case 4:  // arbitrary vector
        for (double& v : values) v = 3.0 * scale * unit(rng);
        break;
      default:  // report exactly the offered price on a random subset
        for (std::size_t k = 0; k < values.size(); ++k) {
          if (unit(rng) < 0.5) values[k] = offered_price(g, prices, incident[k]);
        }
        break;
    }
    for (std::size_t k = 0; k < incident.size(); ++k) report[incident[k]] = values[k];
    audit.check(std::move(report));
  }
  return audit.result();
}

AuditResult exhaustive_misreport_audit(const InstanceSpec& spec, const Realization& real,
                                       std::span<const Vertex> order, Vertex buyer,
                                       std::span<const double> grid) {
  Auditor audit(spec, real, order, buyer);
  const auto incident = spec.graph.incident(buyer);
  if (grid.empty()) return audit.result();
  std::vector<std::size_t> digit(incident.size(), 0);
  while (true) {
    std::map<EdgeId, double> report;
    for (std::size_t k = 0; k < incident.size(); ++k) report[incident[k]] = grid[digit[k]];
    audit.check(std::move(report));
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == grid.size()) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return audit.result();
}

bool maximality_check(const Graph& g, const MechanismOutcome& outcome,
                      std::span<const EdgeId> eprime) {
  std::vector<char> covered(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e : outcome.matching.edges) {
    covered[static_cast<std::size_t>(g.edge(e).u)] = covered[static_cast<std::size_t>(g.edge(e).v)] = 1;
  }
  for (EdgeId e : eprime) {
    if (!covered[static_cast<std::size_t>(g.edge(e).u)] && !covered[static_cast<std::size_t>(g.edge(e).v)]) {
      return false;
    }
  }
  return true;
}

}  // namespace prophet
