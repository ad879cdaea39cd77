#include "prophet/stats.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace prophet {

MeanSe mean_se(std::span<const double> xs) {
  MeanSe r;
  r.n = xs.size();
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  r.se = std::sqrt(var / static_cast<double>(xs.size()));
  return r;
}

GateOutcome dominance_gate(std::span<const double> small, std::span<const double> large,
                           double factor, double slack_sigmas) {
  if (small.size() != large.size()) throw std::invalid_argument("dominance_gate: size mismatch");
  std::vector<double> gap(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) gap[i] = large[i] - factor * small[i];
  const MeanSe s = mean_se(gap);
  GateOutcome g;
  g.mean_gap = s.mean;
  g.se = s.se;
  g.margin = slack_sigmas * s.se - s.mean;
  g.passed = g.margin >= 0.0;
  return g;
}

Proportion pooled_proportion(std::span<const double> hits, std::span<const double> totals) {
  if (hits.size() != totals.size()) throw std::invalid_argument("pooled_proportion: size mismatch");
  Proportion p;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    p.hits += hits[i];
    p.total += totals[i];
  }
  if (p.total <= 0) return p;
  p.value = p.hits / p.total;
  double ss = 0.0;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const double z = hits[i] - p.value * totals[i];
    ss += z * z;
  }
  const double n = static_cast<double>(hits.size());
  if (n > 1) p.se = std::sqrt(ss * n / (n - 1)) / p.total;
  return p;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace prophet
