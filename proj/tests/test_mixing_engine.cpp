#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixtree/enumeration.hpp"
#include "mixtree/error.hpp"
#include "mixtree/mixing.hpp"
#include "support.hpp"

using namespace mixtree;

TEST_CASE("hitting times on P_4") {
  const Tree p4 = path_graph(4);
  const HittingMatrix h = hitting_matrix(p4);
  CHECK(h(0, 1) == 1);
  CHECK(h(1, 2) == 3);
  CHECK(h(2, 3) == 5);
  CHECK(h(0, 3) == 9);
  CHECK(h(3, 0) == 9);
  CHECK(h(1, 0) == 5);
  CHECK(hitting_time(p4, 2, 2) == 0);
}

TEST_CASE("single edge law") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tree t = random_tree(3 + static_cast<int>(seed), seed);
    const HittingMatrix h = hitting_matrix(t);
    for (const auto& [u, v] : t.edges()) {
      CHECK(h(u, v) == 2 * static_cast<std::int64_t>(side_set(t, u, v).size()) - 1);
      CHECK(h(v, u) == 2 * static_cast<std::int64_t>(side_set(t, v, u).size()) - 1);
    }
  }
}

TEST_CASE("closed form agrees with linear solve and overlap sums") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Tree t = random_tree(2 + static_cast<int>(seed % 12), seed * 7 + 3);
    const HittingMatrix h = hitting_matrix(t);
    const Matrix<Rat> oracle = fixtures::oracle_hitting(t);
    CHECK(hitting_matrix_by_overlap(t) == h);
    for (Vertex u = 0; u < t.order(); ++u) {
      for (Vertex v = 0; v < t.order(); ++v) {
        CHECK(Rat(h(u, v)) == oracle(u, v));
        CHECK(h(u, v) + h(v, u) == 2 * (t.order() - 1) * distance(t, u, v));
      }
    }
  }
}

TEST_CASE("linear oracle works for a graph with a cycle") {
  // Triangle: H(u, v) = 2 for distinct u, v.
  const std::vector<std::vector<Vertex>> triangle{{1, 2}, {0, 2}, {0, 1}};
  const Vector<Rat> h = hitting_vector_linear_oracle<Rat>(triangle, 0);
  CHECK(h(0) == 0);
  CHECK(h(1) == 2);
  CHECK(h(2) == 2);
  const Vector<double> approx = hitting_vector_linear_oracle<double>(triangle, 2);
  CHECK(approx(0) == doctest::Approx(2.0));
}

TEST_CASE("linear oracle reports a disconnected system") {
  const std::vector<std::vector<Vertex>> split{{1}, {0}, {3}, {2}};
  CHECK_THROWS_AS(hitting_vector_linear_oracle<Rat>(split, 0), Error);
}

TEST_CASE("stationary distribution and return times") {
  const Tree s4 = star_graph(4);
  const Distribution pi = stationary(s4);
  CHECK(pi[0] == make_rat(1, 2));
  CHECK(pi[1] == make_rat(1, 6));
  CHECK(return_time(s4, 0) == 2);
  CHECK(return_time(s4, 3) == 6);
  CHECK_THROWS_AS(stationary(Tree()), Error);
  CHECK_NOTHROW(pi.validate(4));
  Distribution bad = pi;
  bad.weights[0] = make_rat(1, 3);
  CHECK_THROWS_AS(bad.validate(4), Error);
  CHECK_THROWS_AS(pi.validate(5), Error);
}

TEST_CASE("P_4 mixing quantities") {
  const Tree p4 = path_graph(4);
  const MixingAnalysis m(p4);
  CHECK(m.access_from_stationary(0) == make_rat(35, 6));
  CHECK(m.access_from_stationary(1) == make_rat(11, 6));
  CHECK(m.mix_from(0) == make_rat(19, 6));
  CHECK(m.mix_from(1) == make_rat(13, 6));
  CHECK(m.pessimal(0) == std::vector<Vertex>{3});
  CHECK(m.pessimal(1) == std::vector<Vertex>{3});
  const MixingReport r = mixing_time(p4);
  CHECK(r.t_mix == make_rat(19, 6));
  CHECK(r.z == 0);
  CHECK(r.z_partner == 3);
  CHECK(pessimal_path(p4).vertices == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("S_4 mixing quantities") {
  const Tree s4 = star_graph(4);
  CHECK(mix_from_vertex(s4, 1) == make_rat(3, 2));
  CHECK(mix_from_vertex(s4, 0) == make_rat(1, 2));
  CHECK(mixing_time(s4).t_mix == make_rat(3, 2));
  Distribution leaf = Distribution::point_mass(4, 2);
  CHECK(access_to_vertex(s4, leaf, 0) == 1);
  CHECK(access_to_vertex(s4, stationary(s4), 1) == make_rat(9, 2));
}

TEST_CASE("engine matches the max_j (H(v,j) - H(pi,j)) characterization") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Tree t = random_tree(2 + static_cast<int>(seed % 11), seed + 500);
    const MixingReport r = mixing_time(t);
    const auto oracle = fixtures::oracle_mix_from(t);
    for (Vertex v = 0; v < t.order(); ++v) CHECK(r.mix_from[static_cast<std::size_t>(v)] == oracle[static_cast<std::size_t>(v)]);
  }
}

TEST_CASE("path and star formulas") {
  for (int n = 2; n <= 20; ++n) {
    CHECK(mixing_time(path_graph(n)).t_mix == make_rat(2 * n * n - 4 * n + 3, 6));
  }
  for (int n = 3; n <= 20; ++n) CHECK(mixing_time(star_graph(n)).t_mix == make_rat(3, 2));
}

TEST_CASE("pessimal pair endpoints are leaves and mutually pessimal") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Tree t = random_tree(3 + static_cast<int>(seed % 14), seed + 99);
    const MixingAnalysis m(t);
    const MixingReport r = m.report();
    CHECK(t.is_leaf(r.z));
    CHECK(t.is_leaf(r.z_partner));
    CHECK(m.mix_from(r.z) == r.t_mix);
    CHECK(m.mix_from(r.z_partner) == r.t_mix);
    const auto back = m.pessimal(r.z_partner);
    CHECK(std::find(back.begin(), back.end(), r.z) != back.end());
  }
}

TEST_CASE("gaussian_solve handles pivoting") {
  Matrix<Rat> a(2, 2);
  a << Rat(0), Rat(1), Rat(2), Rat(3);
  Vector<Rat> b(2);
  b << Rat(4), Rat(5);
  const Vector<Rat> x = gaussian_solve<Rat>(a, b);
  CHECK(x(1) == 4);
  CHECK(x(0) == make_rat(-7, 2));
}
