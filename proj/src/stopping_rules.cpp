#include "mixtree/stopping_rules.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "mixtree/enumeration.hpp"
#include "mixtree/error.hpp"
#include "mixtree/rng.hpp"

namespace mixtree {

void NaiveRule::validate(const Tree& tree) const {
  if (!tree.contains(start)) {
    throw Error(ErrorCode::InvalidVertex, "start vertex " + std::to_string(start) + " out of range");
  }
  target.validate(tree.order());
}

Rat naive_expected_length(const Tree& tree, const NaiveRule& rule) {
  rule.validate(tree);
  if (tree.order() == 1) return Rat(0);
  const HittingMatrix hit = hitting_matrix(tree);
  Rat total = 0;
  for (Vertex w = 0; w < tree.order(); ++w) {
    if (rule.target[w] == 0) continue;
    total += rule.target[w] * Rat(hit(rule.start, w));
  }
  return total;
}

std::vector<Vertex> naive_halting_states(const Tree& tree, const NaiveRule& rule) {
  rule.validate(tree);
  std::vector<Vertex> support;
  for (Vertex w = 0; w < tree.order(); ++w) {
    if (rule.target[w] > 0) support.push_back(w);
  }
  const auto from_start = bfs_distances(tree, rule.start);
  std::vector<Vertex> out;
  for (Vertex w : support) {
    const auto from_w = bfs_distances(tree, w);
    const int length = from_start[static_cast<std::size_t>(w)];
    const bool all_on_path = std::all_of(support.begin(), support.end(), [&](Vertex t) {
      return from_start[static_cast<std::size_t>(t)] + from_w[static_cast<std::size_t>(t)] == length;
    });
    if (all_on_path) out.push_back(w);
  }
  return out;
}

std::vector<Vertex> simulate_walk(const Tree& tree, Vertex start, std::uint64_t seed,
                                  std::int64_t steps) {
  if (!tree.contains(start)) {
    throw Error(ErrorCode::InvalidVertex, "start vertex " + std::to_string(start) + " out of range");
  }
  if (steps < 0) throw Error(ErrorCode::BadParams, "negative step count");
  if (steps > kDefaultMaxSteps) {
    throw Error(ErrorCode::StepLimitExceeded,
                "requested " + std::to_string(steps) + " steps, limit is " +
                    std::to_string(kDefaultMaxSteps));
  }
  if (steps > 0 && tree.order() < 2) throw Error(ErrorCode::TrivialTree, "no edges to walk on");
  SplitMix64 rng(seed);
  std::vector<Vertex> walk{start};
  walk.reserve(static_cast<std::size_t>(steps) + 1);
  Vertex at = start;
  for (std::int64_t s = 0; s < steps; ++s) {
    const auto& nb = tree.neighbors(at);
    at = nb[rng.below(nb.size())];
    walk.push_back(at);
  }
  return walk;
}

bool SimulationSummary::mean_within_three_se() const {
  return std::abs(mean_length - to_double(analytic)) <= 3.0 * std_error;
}

namespace {

struct TrialTotals {
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  std::vector<std::int64_t> finals;
  std::int64_t failed_trial = -1;
};

}  // namespace

SimulationSummary simulate_naive_rule(const Tree& tree, const NaiveRule& rule,
                                      std::int64_t trials, std::uint64_t seed,
                                      std::int64_t max_steps) {
  rule.validate(tree);
  if (trials <= 0) throw Error(ErrorCode::BadParams, "trials must be positive");
  const int n = tree.order();

  std::vector<double> cumulative;
  std::vector<Vertex> support;
  double acc = 0.0;
  for (Vertex w = 0; w < n; ++w) {
    if (rule.target[w] == 0) continue;
    acc += to_double(rule.target[w]);
    cumulative.push_back(acc);
    support.push_back(w);
  }
  cumulative.back() = 1.0;

  const int threads = static_cast<int>(
      std::min<std::int64_t>(worker_threads(), std::max<std::int64_t>(1, trials / 1000)));
  std::vector<TrialTotals> totals(static_cast<std::size_t>(threads));
  auto work = [&](int t) {
    TrialTotals& mine = totals[static_cast<std::size_t>(t)];
    mine.finals.assign(static_cast<std::size_t>(n), 0);
    for (std::int64_t trial = t; trial < trials; trial += threads) {
      SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(trial));
      const double u = rng.unit();
      const auto pick = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
      const Vertex goal = support[static_cast<std::size_t>(
          std::min<std::ptrdiff_t>(pick, static_cast<std::ptrdiff_t>(support.size()) - 1))];
      Vertex at = rule.start;
      std::int64_t steps = 0;
      while (at != goal) {
        if (steps == max_steps) {
          mine.failed_trial = trial;
          return;
        }
        const auto& nb = tree.neighbors(at);
        at = nb[rng.below(nb.size())];
        ++steps;
      }
      mine.sum += static_cast<std::uint64_t>(steps);
      mine.sum_sq += static_cast<unsigned __int128>(steps) * static_cast<unsigned __int128>(steps);
      ++mine.finals[static_cast<std::size_t>(at)];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  std::vector<std::int64_t> finals(static_cast<std::size_t>(n), 0);
  for (const auto& part : totals) {
    if (part.failed_trial >= 0) {
      throw Error(ErrorCode::StepLimitExceeded,
                  "trial " + std::to_string(part.failed_trial) + " exceeded " +
                      std::to_string(max_steps) + " steps (seed " + std::to_string(seed) + ")");
    }
    sum += part.sum;
    sum_sq += part.sum_sq;
    for (int v = 0; v < n; ++v) finals[static_cast<std::size_t>(v)] += part.finals[static_cast<std::size_t>(v)];
  }

  SimulationSummary out;
  out.trials = trials;
  out.seed = seed;
  out.analytic = naive_expected_length(tree, rule);
  const double count = static_cast<double>(trials);
  out.mean_length = static_cast<double>(sum) / count;
  if (trials > 1) {
    const double variance =
        (static_cast<double>(sum_sq) - count * out.mean_length * out.mean_length) / (count - 1.0);
    out.std_error = std::sqrt(std::max(0.0, variance) / count);
  }
  out.empirical_final.resize(static_cast<std::size_t>(n));
  double tv = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const double freq = static_cast<double>(finals[static_cast<std::size_t>(v)]) / count;
    out.empirical_final[static_cast<std::size_t>(v)] = freq;
    tv += std::abs(freq - to_double(rule.target[v]));
  }
  out.tv_distance_to_target = tv / 2.0;
  return out;
}

}  // namespace mixtree
