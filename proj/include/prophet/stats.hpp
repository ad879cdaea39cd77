#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace prophet {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t n = 0;
};

MeanSe mean_se(std::span<const double> xs);

/// One-sided statistical gate "factor * E[small] >= E[large]", tested as
/// mean(large - factor * small) <= slack_sigmas * SE of that paired
/// difference. `margin` is positive when the gate passes.
struct GateOutcome {
  bool passed = false;
  double mean_gap = 0.0;  // mean(large - factor * small)
  double se = 0.0;
  double margin = 0.0;    // slack_sigmas * se - mean_gap
};

GateOutcome dominance_gate(std::span<const double> small, std::span<const double> large,
                           double factor, double slack_sigmas = 3.0);

/// Pooled proportion sum(hits) / sum(totals) over trials with a ratio-estimator
/// standard error (trials are the independent unit).
struct Proportion {
  double value = 0.0;
  double se = 0.0;
  double hits = 0.0;
  double total = 0.0;
};

Proportion pooled_proportion(std::span<const double> hits, std::span<const double> totals);

/// printf("%.17g"), the round-trip form used in every text output.
std::string format_double(double x);

}  // namespace prophet
