#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "prophet/adversary.hpp"
#include "prophet/core.hpp"
#include "prophet/distributions.hpp"

namespace prophet {

/// Reported values per buyer: buyer -> (incident edge -> reported value).
/// Edges not listed are reported truthfully.
using Reports = std::map<Vertex, std::map<EdgeId, double>>;

struct MechanismOutcome {
  Matching matching;               // M_T, weighted by true values
  std::map<Vertex, double> charged;    // matched buyers only
  std::map<Vertex, double> utilities;  // every buyer; 0 when unmatched
  /// Every edge of an arriving buyer whose reported value beats both prices,
  /// whether or not its item was still free. Sorted. Under truthful reports
  /// this is the edge-arrival E'.
  std::vector<EdgeId> feasible_set;
  RunRecord record;

  double utility(Vertex buyer) const;
};

/// Posted-price mechanism. Prices come from the greedy sample matching; an
/// arriving buyer is offered every free item at max{p_buyer, p_item} and
/// takes the one maximizing reported value minus price, provided the reported
/// value beats both prices. Utilities use true values.
class TruthfulMechanism {
 public:
  TruthfulMechanism(const InstanceSpec& spec, const Realization& real, const Reports& reports = {});

  void observe(Vertex buyer);
  StateView view() const;
  MechanismOutcome finish() &&;

 private:
  const InstanceSpec& spec_;
  const Realization& real_;
  std::vector<DrawnValue> reals_;
  std::vector<DrawnValue> reported_;
  RunRecord record_;
  std::vector<char> arrived_;
  std::vector<char> matched_;
  std::vector<EdgeId> accepted_;
  std::vector<EdgeId> feasible_;
  std::map<Vertex, double> charged_;
};

MechanismOutcome run_truthful(const InstanceSpec& spec, const Realization& real,
                              std::span<const Vertex> order, const Reports& reports = {});
MechanismOutcome run_truthful(const InstanceSpec& spec, const Realization& real,
                              const OrderStrategy& strategy, const Reports& reports = {});

struct AuditResult {
  bool passed = true;
  std::size_t trials = 0;
  double truthful_utility = 0.0;
  double best_misreport_utility = 0.0;  // max over trials
};

/// Samples `trials` misreports for `buyer` (others truthful) and checks that
/// none beats the truthful utility under true values.
AuditResult misreport_audit(const InstanceSpec& spec, const Realization& real,
                            std::span<const Vertex> order, Vertex buyer, std::size_t trials,
                            std::uint64_t seed);

/// Every report vector over `grid`^deg(buyer).
AuditResult exhaustive_misreport_audit(const InstanceSpec& spec, const Realization& real,
                                       std::span<const Vertex> order, Vertex buyer,
                                       std::span<const double> grid);

/// True iff no edge of `eprime` has both endpoints unmatched in M_T.
bool maximality_check(const Graph& g, const MechanismOutcome& outcome,
                      std::span<const EdgeId> eprime);

}  // namespace prophet
