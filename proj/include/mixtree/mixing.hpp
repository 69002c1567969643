#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mixtree/error.hpp"
#include "mixtree/rational.hpp"
#include "mixtree/tree.hpp"

namespace mixtree {

/// H(u, v) stored at (u, v). Hitting times on trees are integers.
using HittingMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Probability distribution on the vertex set, exact weights.
struct Distribution {
  std::vector<Rat> weights;

  static Distribution point_mass(int order, Vertex v);

  const Rat& operator[](Vertex v) const { return weights[static_cast<std::size_t>(v)]; }
  int size() const { return static_cast<int>(weights.size()); }

  /// Throws BadDistribution unless sized for `order`, nonnegative, summing to 1.
  void validate(int order) const;
};

/// pi_v = deg(v) / 2|E|.
Distribution stationary(const Tree& tree);

/// Expected first return time 2|E| / deg(u).
Rat return_time(const Tree& tree, Vertex u);

/// Accumulates the single-edge law H(u,v) = 2|V_{u:v}| - 1 along each path,
/// one BFS per target: O(n^2) overall.
HittingMatrix hitting_matrix(const Tree& tree);
std::int64_t hitting_time(const Tree& tree, Vertex u, Vertex v);

/// Cross-check route: H(u,v) = sum_w overlap(u,w;v) deg(w), O(n) per entry.
std::int64_t hitting_time_by_overlap(const Tree& tree, const DistanceMatrix& dist, Vertex u,
                                     Vertex v);
HittingMatrix hitting_matrix_by_overlap(const Tree& tree);

/// Solves A x = b in place by Gaussian elimination with largest-magnitude
/// pivoting. Exact for rational scalars. Throws Disconnected on a singular
/// system (the only way the hitting-time system degenerates).
template <typename Scalar>
Vector<Scalar> gaussian_solve(Matrix<Scalar> a, Vector<Scalar> b) {
  using std::abs;
  const Eigen::Index n = a.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index row = col + 1; row < n; ++row) {
      if (abs(a(row, col)) > abs(a(pivot, col))) pivot = row;
    }
    if (a(pivot, col) == Scalar(0)) throw Error(ErrorCode::Disconnected, "singular hitting system");
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(b(pivot), b(col));
    }
    for (Eigen::Index row = col + 1; row < n; ++row) {
      if (a(row, col) == Scalar(0)) continue;
      const Scalar factor = a(row, col) / a(col, col);
      for (Eigen::Index k = col; k < n; ++k) a(row, k) -= factor * a(col, k);
      b(row) -= factor * b(col);
    }
  }
  Vector<Scalar> x(n);
  for (Eigen::Index row = n - 1; row >= 0; --row) {
    Scalar acc = b(row);
    for (Eigen::Index k = row + 1; k < n; ++k) acc -= a(row, k) * x(k);
    x(row) = acc / a(row, row);
  }
  return x;
}

/// Independent oracle for hitting times into `target` on any connected
/// graph: H(target) = 0 and deg(u) H(u) - sum_{w~u} H(w) = deg(u) elsewhere.
template <typename Scalar>
Vector<Scalar> hitting_vector_linear_oracle(std::span<const std::vector<Vertex>> adjacency,
                                            Vertex target) {
  const auto n = static_cast<Eigen::Index>(adjacency.size());
  if (target < 0 || target >= n) {
    throw Error(ErrorCode::InvalidVertex, "target " + std::to_string(target) + " out of range");
  }
  Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
  Vector<Scalar> b = Vector<Scalar>::Zero(n);
  for (Eigen::Index u = 0; u < n; ++u) {
    if (u == target) {
      a(u, u) = Scalar(1);
      continue;
    }
    const auto& nb = adjacency[static_cast<std::size_t>(u)];
    a(u, u) = Scalar(static_cast<long>(nb.size()));
    for (Vertex w : nb) a(u, w) -= Scalar(1);
    b(u) = Scalar(static_cast<long>(nb.size()));
  }
  return gaussian_solve<Scalar>(std::move(a), std::move(b));
}

Vector<Rat> hitting_vector_linear_oracle(const Tree& tree, Vertex target);

/// sum_u sigma_u H(u, v): the optimal (sigma, v)-access time.
Rat access_to_vertex(const Tree& tree, const Distribution& sigma, Vertex v);

/// All argmax_w H(w, v), ascending.
std::vector<Vertex> pessimal_vertices(const Tree& tree, Vertex v);

/// H(v, pi) = H(v', v) - H(pi, v) for a v-pessimal v'.
Rat mix_from_vertex(const Tree& tree, Vertex v);

struct MixingReport {
  Rat t_mix;
  Vertex z = 0;          ///< smallest-id start vertex attaining t_mix
  Vertex z_partner = 0;  ///< smallest-id z-pessimal vertex
  std::vector<Rat> mix_from;   ///< H(v, pi)
  std::vector<Rat> access_to;  ///< H(pi, v)
};

/// Shares one hitting matrix between all derived quantities. Every value
/// below has denominator dividing 2|E|, so the comparisons stay in integers.
class MixingAnalysis {
 public:
  explicit MixingAnalysis(const Tree& tree);

  const HittingMatrix& hitting() const { return hitting_; }
  std::int64_t hit(Vertex u, Vertex v) const { return hitting_(u, v); }
  int order() const { return static_cast<int>(hitting_.rows()); }

  /// H(pi, v)
  Rat access_from_stationary(Vertex v) const;
  /// H(v, pi)
  Rat mix_from(Vertex v) const;
  std::vector<Vertex> pessimal(Vertex v) const;
  Rat t_mix() const;
  MixingReport report() const;

 private:
  Rat over_two_edges(std::int64_t numerator) const;
  std::int64_t scaled_mix_from(Vertex v) const;

  HittingMatrix hitting_;
  std::vector<std::int64_t> degree_weighted_;  // sum_u deg(u) H(u, v)
  std::vector<std::int64_t> max_hit_;          // max_w H(w, v)
};

/// max_v H(v, pi) with the pessimal pair; verifies H(z, pi) = H(z', pi) and
/// that z is z'-pessimal before returning.
MixingReport mixing_time(const Tree& tree);

/// The z..z' geodesic of mixing_time's report.
VertexPath pessimal_path(const Tree& tree);

}  // namespace mixtree
