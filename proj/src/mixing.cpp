#include "mixtree/mixing.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixtree {

Distribution Distribution::point_mass(int order, Vertex v) {
  if (v < 0 || v >= order) {
    throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v) + " out of range");
  }
  Distribution out{std::vector<Rat>(static_cast<std::size_t>(order), Rat(0))};
  out.weights[static_cast<std::size_t>(v)] = 1;
  return out;
}

void Distribution::validate(int order) const {
  if (size() != order) {
    throw Error(ErrorCode::BadDistribution, "distribution has " + std::to_string(size()) +
                                                " weights for " + std::to_string(order) +
                                                " vertices");
  }
  Rat total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error(ErrorCode::BadDistribution, "negative weight " + to_fraction_string(w));
    total += w;
  }
  if (total != 1) {
    throw Error(ErrorCode::BadDistribution, "weights sum to " + to_fraction_string(total));
  }
}

namespace {

void require_nontrivial(const Tree& tree) {
  if (tree.order() < 2) throw Error(ErrorCode::TrivialTree, "needs at least two vertices");
}

}  // namespace

Distribution stationary(const Tree& tree) {
  require_nontrivial(tree);
  Distribution pi;
  pi.weights.reserve(static_cast<std::size_t>(tree.order()));
  const Integer two_edges = 2 * tree.edge_count();
  for (Vertex v = 0; v < tree.order(); ++v) pi.weights.emplace_back(Integer(tree.degree(v)), two_edges);
  return pi;
}

Rat return_time(const Tree& tree, Vertex u) {
  require_nontrivial(tree);
  return Rat(Integer(2 * tree.edge_count()), Integer(tree.degree(u)));
}

HittingMatrix hitting_matrix(const Tree& tree) {
  const int n = tree.order();
  HittingMatrix hit = HittingMatrix::Zero(n, n);
  std::vector<Vertex> order;
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::vector<std::int64_t> subtree(static_cast<std::size_t>(n));
  for (Vertex target = 0; target < n; ++target) {
    order.assign(1, target);
    parent[static_cast<std::size_t>(target)] = -1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Vertex u = order[k];
      for (Vertex w : tree.neighbors(u)) {
        if (w != parent[static_cast<std::size_t>(u)]) {
          parent[static_cast<std::size_t>(w)] = u;
          order.push_back(w);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::int64_t size = 1;
      for (Vertex w : tree.neighbors(*it)) {
        if (w != parent[static_cast<std::size_t>(*it)]) size += subtree[static_cast<std::size_t>(w)];
      }
      subtree[static_cast<std::size_t>(*it)] = size;
    }
    // Walking from u to its parent (one step closer to the target) costs
    // 2 |V_{u:parent}| - 1, and |V_{u:parent}| is u's subtree when rooted at the target.
    for (std::size_t k = 1; k < order.size(); ++k) {
      const Vertex u = order[k];
      hit(u, target) = hit(parent[static_cast<std::size_t>(u)], target) +
                       2 * subtree[static_cast<std::size_t>(u)] - 1;
    }
  }
  return hit;
}

std::int64_t hitting_time(const Tree& tree, Vertex u, Vertex v) {
  tree.check(u);
  tree.check(v);
  return hitting_matrix(tree)(u, v);
}

std::int64_t hitting_time_by_overlap(const Tree& tree, const DistanceMatrix& dist, Vertex u,
                                     Vertex v) {
  tree.check(u);
  tree.check(v);
  std::int64_t total = 0;
  for (Vertex w = 0; w < tree.order(); ++w) {
    total += static_cast<std::int64_t>(path_overlap(dist, u, w, v)) * tree.degree(w);
  }
  return total;
}

HittingMatrix hitting_matrix_by_overlap(const Tree& tree) {
  const int n = tree.order();
  const DistanceMatrix dist = distance_matrix(tree);
  HittingMatrix hit(n, n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) hit(u, v) = hitting_time_by_overlap(tree, dist, u, v);
  }
  return hit;
}

Vector<Rat> hitting_vector_linear_oracle(const Tree& tree, Vertex target) {
  return hitting_vector_linear_oracle<Rat>(tree.adjacency(), target);
}

Rat access_to_vertex(const Tree& tree, const Distribution& sigma, Vertex v) {
  tree.check(v);
  sigma.validate(tree.order());
  const HittingMatrix hit = hitting_matrix(tree);
  Rat total = 0;
  for (Vertex u = 0; u < tree.order(); ++u) {
    if (sigma[u] != 0) total += sigma[u] * Rat(Integer(hit(u, v)));
  }
  return total;
}

std::vector<Vertex> pessimal_vertices(const Tree& tree, Vertex v) {
  tree.check(v);
  const HittingMatrix hit = hitting_matrix(tree);
  const std::int64_t best = hit.col(v).maxCoeff();
  std::vector<Vertex> out;
  for (Vertex w = 0; w < tree.order(); ++w) {
    if (hit(w, v) == best) out.push_back(w);
  }
  return out;
}

Rat mix_from_vertex(const Tree& tree, Vertex v) {
  require_nontrivial(tree);
  tree.check(v);
  return MixingAnalysis(tree).mix_from(v);
}

MixingAnalysis::MixingAnalysis(const Tree& tree) : hitting_(hitting_matrix(tree)) {
  const int n = tree.order();
  degree_weighted_.assign(static_cast<std::size_t>(n), 0);
  max_hit_.assign(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    std::int64_t sum = 0;
    for (Vertex u = 0; u < n; ++u) sum += tree.degree(u) * hitting_(u, v);
    degree_weighted_[static_cast<std::size_t>(v)] = sum;
    max_hit_[static_cast<std::size_t>(v)] = hitting_.col(v).maxCoeff();
  }
}

Rat MixingAnalysis::over_two_edges(std::int64_t numerator) const {
  if (order() < 2) throw Error(ErrorCode::TrivialTree, "needs at least two vertices");
  return Rat(Integer(numerator), Integer(2 * (order() - 1)));
}

Rat MixingAnalysis::access_from_stationary(Vertex v) const {
  return over_two_edges(degree_weighted_.at(static_cast<std::size_t>(v)));
}

std::int64_t MixingAnalysis::scaled_mix_from(Vertex v) const {
  const auto k = static_cast<std::size_t>(v);
  return 2 * static_cast<std::int64_t>(order() - 1) * max_hit_.at(k) - degree_weighted_[k];
}

Rat MixingAnalysis::mix_from(Vertex v) const { return over_two_edges(scaled_mix_from(v)); }

std::vector<Vertex> MixingAnalysis::pessimal(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex w = 0; w < order(); ++w) {
    if (hitting_(w, v) == max_hit_.at(static_cast<std::size_t>(v))) out.push_back(w);
  }
  return out;
}

Rat MixingAnalysis::t_mix() const {
  std::int64_t best = scaled_mix_from(0);
  for (Vertex v = 1; v < order(); ++v) best = std::max(best, scaled_mix_from(v));
  return over_two_edges(best);
}

MixingReport MixingAnalysis::report() const {
  if (order() < 2) throw Error(ErrorCode::TrivialTree, "needs at least two vertices");
  MixingReport out;
  std::int64_t best = scaled_mix_from(0);
  for (Vertex v = 0; v < order(); ++v) {
    const std::int64_t value = scaled_mix_from(v);
    out.mix_from.push_back(over_two_edges(value));
    out.access_to.push_back(access_from_stationary(v));
    if (value > best) {
      best = value;
      out.z = v;
    }
  }
  out.t_mix = over_two_edges(best);
  out.z_partner = pessimal(out.z).front();
  const Vertex z = out.z;
  const Vertex zp = out.z_partner;
  if (scaled_mix_from(zp) != best) {
    throw std::logic_error("duality violated: H(z',pi) != H(z,pi) for z=" + std::to_string(z) +
                           ", z'=" + std::to_string(zp));
  }
  if (hitting_(z, zp) != max_hit_[static_cast<std::size_t>(zp)]) {
    throw std::logic_error("duality violated: z is not z'-pessimal for z=" + std::to_string(z));
  }
  return out;
}

MixingReport mixing_time(const Tree& tree) {
  require_nontrivial(tree);
  return MixingAnalysis(tree).report();
}

VertexPath pessimal_path(const Tree& tree) {
  const MixingReport report = mixing_time(tree);
  return geodesic(tree, report.z, report.z_partner);
}

}  // namespace mixtree
