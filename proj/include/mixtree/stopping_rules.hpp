#pragma once

#include <cstdint>
#include <vector>

#include "mixtree/mixing.hpp"
#include "mixtree/rational.hpp"
#include "mixtree/tree.hpp"

namespace mixtree {

inline constexpr std::int64_t kDefaultMaxSteps = 10'000'000;

/// Pick w ~ target up front, then walk from `start` until the first visit to w.
struct NaiveRule {
  Vertex start = 0;
  Distribution target;

  /// InvalidVertex for a bad start, BadDistribution for a bad target.
  void validate(const Tree& tree) const;
};

/// sum_w target_w H(start, w), exact.
Rat naive_expected_length(const Tree& tree, const NaiveRule& rule);

/// Support vertices w such that every other support vertex lies on the
/// start..w geodesic. A walk aiming at such a w passes every other target
/// before reaching it, so it never stops early on the way and w is a halting
/// state. Ascending order.
std::vector<Vertex> naive_halting_states(const Tree& tree, const NaiveRule& rule);

/// Vertices w_0 = start, w_1, ..., w_steps of a simple random walk.
/// StepLimitExceeded when steps exceeds kDefaultMaxSteps.
std::vector<Vertex> simulate_walk(const Tree& tree, Vertex start, std::uint64_t seed,
                                  std::int64_t steps);

struct SimulationSummary {
  std::int64_t trials = 0;
  double mean_length = 0.0;
  double std_error = 0.0;
  std::vector<double> empirical_final;
  double tv_distance_to_target = 0.0;
  std::uint64_t seed = 0;
  Rat analytic;  ///< naive_expected_length for the same rule

  /// |mean - analytic| <= 3 SE.
  bool mean_within_three_se() const;
};

/// Trial t uses SplitMix64::substream(seed, t), so the result does not depend
/// on the worker count. StepLimitExceeded if a single trial walks more than
/// max_steps without stopping.
SimulationSummary simulate_naive_rule(const Tree& tree, const NaiveRule& rule,
                                      std::int64_t trials, std::uint64_t seed,
                                      std::int64_t max_steps = kDefaultMaxSteps);

}  // namespace mixtree
