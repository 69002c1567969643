#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mixtree/brooms.hpp"
#include "mixtree/mixing.hpp"
#include "mixtree/rng.hpp"
#include "mixtree/surgery.hpp"
#include "mixtree/tree.hpp"

namespace fixtures {

using namespace mixtree;

inline Tree tree_of(std::vector<Edge> edges) { return Tree::from_edge_list(edges); }

inline VertexPath spine_upto(int d) {
  VertexPath p;
  for (int k = 0; k <= d; ++k) p.vertices.push_back(k);
  return p;
}

/// Spine 0..d; leaves[k] extra leaves hang off v_k, numbered after the spine.
inline Tree caterpillar(int d, const std::vector<int>& leaves) {
  std::vector<Edge> edges;
  for (int k = 0; k < d; ++k) edges.emplace_back(k, k + 1);
  int next = d + 1;
  for (int k = 0; k <= d; ++k) {
    for (int c = 0; c < leaves[static_cast<std::size_t>(k)]; ++c) edges.emplace_back(k, next++);
  }
  return Tree::from_edge_list(edges, next);
}

inline std::vector<int> leaf_counts(const Tree& tree, const VertexPath& spine) {
  std::vector<int> out;
  for (int k = 0; k <= spine.length(); ++k) {
    out.push_back(static_cast<int>(spine_leaves(tree, spine, k).size()));
  }
  return out;
}

/// Thirteen vertices, diameter 6: v_0..v_5 with three more leaves on v_1,
/// a path 9-10-11 hanging off v_2 and a leaf 12 on v_3.
inline Tree surgery_example() {
  return tree_of({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 6}, {1, 7}, {1, 8},
                  {2, 9}, {9, 10}, {10, 11}, {3, 12}});
}

/// Spine 0..5 with partition sizes (1,3,1,4,2,1).
inline Tree partition_example() { return caterpillar(5, {0, 2, 0, 3, 1, 0}); }

/// Spine 0..6; leaf 9 hangs off 7 which hangs off v_3 (with 8 also on 7);
/// one leaf 10 on v_1 and a path 11-12 off v_4.
inline Tree sigma_example() {
  return tree_of({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}, {7, 8}, {7, 9},
                  {1, 10}, {4, 11}, {11, 12}});
}

/// Random caterpillar with spine 0..d (d in [4, 10]) and 1..10 leaves on
/// interior spine vertices.
inline Tree random_caterpillar(std::uint64_t seed, int* d_out) {
  SplitMix64 rng(seed);
  const int d = 4 + static_cast<int>(rng.below(7));
  std::vector<int> leaves(static_cast<std::size_t>(d) + 1, 0);
  const int extra = 1 + static_cast<int>(rng.below(10));
  for (int c = 0; c < extra; ++c) ++leaves[1 + rng.below(static_cast<std::uint64_t>(d - 1))];
  *d_out = d;
  return caterpillar(d, leaves);
}

/// Exact hitting matrix from one linear solve per target.
inline Matrix<Rat> oracle_hitting(const Tree& tree) {
  const int n = tree.order();
  Matrix<Rat> h(n, n);
  for (Vertex v = 0; v < n; ++v) {
    const Vector<Rat> col = hitting_vector_linear_oracle(tree, v);
    for (Vertex u = 0; u < n; ++u) h(u, v) = col(u);
  }
  return h;
}

/// H(v, pi) = max_j (H(v, j) - H(pi, j)), from linear-solve hitting times.
inline std::vector<Rat> oracle_mix_from(const Tree& tree) {
  const int n = tree.order();
  const Matrix<Rat> h = oracle_hitting(tree);
  const Distribution pi = stationary(tree);
  std::vector<Rat> from_pi(static_cast<std::size_t>(n), Rat(0));
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex u = 0; u < n; ++u) from_pi[static_cast<std::size_t>(j)] += pi[u] * h(u, j);
  }
  std::vector<Rat> out;
  for (Vertex v = 0; v < n; ++v) {
    Rat best = h(v, 0) - from_pi[0];
    for (Vertex j = 1; j < n; ++j) best = std::max(best, h(v, j) - from_pi[static_cast<std::size_t>(j)]);
    out.push_back(best);
  }
  return out;
}

inline Rat oracle_tmix(const Tree& tree) {
  const auto values = oracle_mix_from(tree);
  return *std::max_element(values.begin(), values.end());
}

}  // namespace fixtures
