#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mixtree/brooms.hpp"
#include "mixtree/enumeration.hpp"
#include "mixtree/error.hpp"
#include "mixtree/rng.hpp"
#include "mixtree/stopping_rules.hpp"
#include "support.hpp"

using namespace mixtree;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("naive rule on P_4") {
  const Tree p4 = path_graph(4);
  const NaiveRule rule{0, stationary(p4)};
  CHECK(naive_expected_length(p4, rule) == make_rat(19, 6));
  CHECK(naive_halting_states(p4, rule) == std::vector<Vertex>{3});
  CHECK(naive_expected_length(p4, rule) == mix_from_vertex(p4, 0));
}

TEST_CASE("naive rule on S_4") {
  const Tree s4 = star_graph(4);
  const NaiveRule rule{1, stationary(s4)};
  CHECK(naive_expected_length(s4, rule) == make_rat(5, 2));
  CHECK(naive_halting_states(s4, rule).empty());
  CHECK(mix_from_vertex(s4, 1) == make_rat(3, 2));
}

// One step to the center, then one more step with probability 1/2.
TEST_CASE("two-step rule on S_4 is optimal") {
  const Tree s4 = star_graph(4);
  const Distribution pi = stationary(s4);
  std::vector<Rat> final(4, Rat(0));
  const Vertex center = s4.neighbors(1).front();
  final[static_cast<std::size_t>(center)] += make_rat(1, 2);
  for (Vertex w : s4.neighbors(center)) {
    final[static_cast<std::size_t>(w)] += make_rat(1, 2) / Rat(s4.degree(center));
  }
  for (Vertex v = 0; v < 4; ++v) CHECK(final[static_cast<std::size_t>(v)] == pi[v]);
  const Rat length = Rat(1) + make_rat(1, 2) * Rat(1);
  CHECK(length == make_rat(3, 2));
  CHECK(length == mix_from_vertex(s4, 1));
}

TEST_CASE("point mass targets") {
  const Tree t = fixtures::surgery_example();
  const NaiveRule self{4, Distribution::point_mass(13, 4)};
  CHECK(naive_expected_length(t, self) == 0);
  const NaiveRule other{4, Distribution::point_mass(13, 11)};
  CHECK(naive_halting_states(t, other) == std::vector<Vertex>{11});
  CHECK(naive_expected_length(t, other) == Rat(hitting_time(t, 4, 11)));
}

TEST_CASE("invalid rules") {
  const Tree p4 = path_graph(4);
  CHECK(error_of([&] { naive_expected_length(p4, {7, stationary(p4)}); }) == ErrorCode::InvalidVertex);
  Distribution bad = stationary(p4);
  bad.weights[0] = 0;
  CHECK(error_of([&] { naive_halting_states(p4, {0, bad}); }) == ErrorCode::BadDistribution);
  CHECK(error_of([&] { simulate_naive_rule(p4, {0, stationary(p4)}, 0, 1); }) == ErrorCode::BadParams);
}

TEST_CASE("naive rule bounds the optimum with equality exactly at halting states") {
  for (int n = 2; n <= 9; ++n) {
    for (const Tree& tree : all_trees(n)) {
      const Distribution pi = stationary(tree);
      for (Vertex v = 0; v < n; ++v) {
        const NaiveRule rule{v, pi};
        const Rat naive = naive_expected_length(tree, rule);
        const Rat optimum = mix_from_vertex(tree, v);
        CHECK(naive >= optimum);
        CHECK((naive == optimum) == !naive_halting_states(tree, rule).empty());
      }
    }
  }
}

TEST_CASE("walk simulation") {
  const Tree p2 = path_graph(2);
  const auto walk = simulate_walk(p2, 1, 5, 6);
  CHECK(walk == std::vector<Vertex>{1, 0, 1, 0, 1, 0, 1});
  const Tree t = fixtures::surgery_example();
  CHECK(simulate_walk(t, 0, 3, 1) == std::vector<Vertex>{0, 1});
  CHECK(simulate_walk(t, 2, 99, 500) == simulate_walk(t, 2, 99, 500));
  const auto long_walk = simulate_walk(t, 2, 4, 2000);
  for (std::size_t k = 1; k < long_walk.size(); ++k) CHECK(t.has_edge(long_walk[k - 1], long_walk[k]));
  CHECK(error_of([&] { simulate_walk(t, 0, 1, kDefaultMaxSteps + 1); }) == ErrorCode::StepLimitExceeded);
  CHECK(error_of([&] { simulate_walk(t, 40, 1, 3); }) == ErrorCode::InvalidVertex);
}

TEST_CASE("first steps from a degree-4 vertex are uniform") {
  const Tree star = star_graph(5);
  std::vector<int> counts(5, 0);
  const int trials = 100000;
  for (int s = 0; s < trials; ++s) ++counts[static_cast<std::size_t>(simulate_walk(star, 0, SplitMix64::substream(11, static_cast<std::uint64_t>(s))(), 1)[1])];
  double chi2 = 0.0;
  const double expected = trials / 4.0;
  for (Vertex v = 1; v <= 4; ++v) {
    chi2 += std::pow(counts[static_cast<std::size_t>(v)] - expected, 2) / expected;
  }
  // 0.999 quantile of chi-square with 3 degrees of freedom.
  CHECK(chi2 < 16.266);
}

TEST_CASE("naive rule simulation") {
  const Tree p4 = path_graph(4);
  const NaiveRule rule{0, stationary(p4)};
  const SimulationSummary s = simulate_naive_rule(p4, rule, 20000, 42);
  CHECK(s.analytic == make_rat(19, 6));
  CHECK(s.mean_within_three_se());
  CHECK(s.tv_distance_to_target < 0.02);
  double total = 0;
  for (double f : s.empirical_final) total += f;
  CHECK(total == doctest::Approx(1.0));
  const SimulationSummary again = simulate_naive_rule(p4, rule, 20000, 42);
  CHECK(again.mean_length == s.mean_length);
  CHECK(again.empirical_final == s.empirical_final);
  const SimulationSummary one = simulate_naive_rule(p4, rule, 1, 8);
  CHECK(one.trials == 1);
  CHECK(simulate_naive_rule(p4, rule, 1, 8).mean_length == one.mean_length);
}

TEST_CASE("step limit aborts rather than truncates") {
  const Tree p = path_graph(30);
  const NaiveRule rule{0, Distribution::point_mass(30, 29)};
  CHECK(error_of([&] { simulate_naive_rule(p, rule, 10, 1, 50); }) == ErrorCode::StepLimitExceeded);
}
