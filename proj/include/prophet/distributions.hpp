#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prophet/core.hpp"

namespace prophet {

enum class DistFamily { point_mass, uniform, exponential, pareto, bernoulli_scaled };

const char* to_string(DistFamily f) noexcept;
DistFamily parse_family(const std::string& name);

/// Value distribution of one edge. Parameter layout per family:
///   point_mass(v) | uniform(lo, hi) | exponential(rate)
///   pareto(scale, shape) | bernoulli_scaled(p, v)
struct DistSpec {
  DistFamily family = DistFamily::point_mass;
  std::vector<double> params{0.0};

  static DistSpec point_mass(double v) { return {DistFamily::point_mass, {v}}; }
  static DistSpec uniform(double lo, double hi) { return {DistFamily::uniform, {lo, hi}}; }
  static DistSpec exponential(double rate) { return {DistFamily::exponential, {rate}}; }
  static DistSpec pareto(double scale, double shape) { return {DistFamily::pareto, {scale, shape}}; }
  static DistSpec bernoulli_scaled(double p, double v) {
    return {DistFamily::bernoulli_scaled, {p, v}};
  }

  /// Throws InputError on wrong arity, non-finite or out-of-domain parameters.
  void validate() const;

  /// Inverse CDF at u in [0, 1).
  double quantile(double u) const;
  double cdf(double x) const;
  /// Infinite for pareto with shape <= 1.
  double mean() const;

  friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

/// Compact text form "family:p1,p2", e.g. "uniform:0,1".
DistSpec parse_dist(const std::string& text);
std::string format_dist(const DistSpec& d);

/// The problem definition: a graph and one distribution per edge.
struct InstanceSpec {
  Graph graph;
  std::vector<DistSpec> dists;  // indexed by edge id

  void validate() const;
  friend bool operator==(const InstanceSpec& a, const InstanceSpec& b);
};

// Seeding helpers. Every stream in the artifact derives from a master seed
// through these, so outputs are reproducible across runs and platforms.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;
/// Uniform double in [0, 1) from the top 53 bits.
double unit_interval(std::uint64_t bits) noexcept;

/// Draws s_e and r_e for every edge. Each (edge, copy) uses its own stream
/// keyed by the edge's endpoint pair, so permuting the edge list does not
/// change an edge's draws. Deterministic in (spec, seed); keys are unique.
Realization draw_realization(const InstanceSpec& spec, std::uint64_t seed);

}  // namespace prophet
