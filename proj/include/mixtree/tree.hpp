#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace mixtree {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Dense integer matrix indexed by vertex ids.
using DistanceMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// An ordered list of distinct vertices, consecutive entries adjacent.
struct VertexPath {
  std::vector<Vertex> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  Vertex operator[](std::size_t k) const { return vertices[k]; }
  std::size_t size() const { return vertices.size(); }
  VertexPath reversed() const { return {{vertices.rbegin(), vertices.rend()}}; }

  friend bool operator==(const VertexPath&, const VertexPath&) = default;
};

/// Immutable tree on vertices 0..n-1. Adjacency lists are sorted.
class Tree {
 public:
  /// The single-vertex tree.
  Tree() : adjacency_(1) {}

  /// Builds and validates a tree; n is inferred as max id + 1, and an empty
  /// edge list yields the single-vertex tree.
  static Tree from_edge_list(std::span<const Edge> edges);
  static Tree from_edge_list(std::span<const Edge> edges, int order);

  int order() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return order() - 1; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[check(v)]; }
  const std::vector<std::vector<Vertex>>& adjacency() const { return adjacency_; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[check(v)].size()); }
  bool is_leaf(Vertex v) const { return degree(v) == 1; }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < order(); }

  /// Edges as (min, max) pairs in lexicographic order.
  std::vector<Edge> edges() const;
  std::vector<Vertex> leaves() const;

  /// Throws InvalidVertex for ids outside 0..n-1.
  Vertex check(Vertex v) const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  explicit Tree(std::vector<std::vector<Vertex>> adjacency) : adjacency_(std::move(adjacency)) {}

  std::vector<std::vector<Vertex>> adjacency_;
};

/// Single edge moves; the result is revalidated.
Tree move_leaf(const Tree& tree, Vertex leaf, Vertex new_neighbor);

std::vector<int> bfs_distances(const Tree& tree, Vertex source);
int distance(const Tree& tree, Vertex u, Vertex v);
DistanceMatrix distance_matrix(const Tree& tree);
int diameter(const Tree& tree);

/// Length of the common part of the (u,w)- and (v,w)-geodesics.
int path_overlap(const Tree& tree, Vertex u, Vertex v, Vertex w);
int path_overlap(const DistanceMatrix& dist, Vertex u, Vertex v, Vertex w);

/// Component of tree - (u,v) that contains u, sorted.
std::vector<Vertex> side_set(const Tree& tree, Vertex u, Vertex v);

VertexPath geodesic(const Tree& tree, Vertex u, Vertex v);

/// Throws NotOnPath unless `path` is a simple path of the tree.
void check_path(const Tree& tree, const VertexPath& path);

/// Distance from each vertex to the nearest vertex of `path`.
std::vector<int> distances_to_path(const Tree& tree, const VertexPath& path);

/// True when every vertex lies within distance one of `path`.
bool is_caterpillar_spine(const Tree& tree, const VertexPath& path);

/// Lexicographically smallest diameter path that every vertex is within
/// distance one of; nullopt for non-caterpillars.
std::optional<VertexPath> caterpillar_spine(const Tree& tree);

std::vector<Vertex> centers(const Tree& tree);

/// Isomorphism-invariant encoding: equal codes iff isomorphic trees.
/// Layout: order (2 bytes, big endian), center kind (0 central vertex,
/// 1 central edge), then the AHU parenthesis string of the center-rooted tree
/// packed MSB first.
using CanonicalCode = std::string;
CanonicalCode canonical_code(const Tree& tree);

/// Rebuilds a representative from its code; vertex 0 is a center and ids
/// follow the pre-order of the encoding.
Tree tree_from_canonical_code(const CanonicalCode& code);

bool isomorphic(const Tree& a, const Tree& b);

std::string to_hex(const std::string& bytes);

/// Applies a permutation: vertex v becomes perm[v].
Tree relabel(const Tree& tree, std::span<const Vertex> perm);

/// "u v" per line; '#' comments and blank lines ignored. Throws ParseError
/// with the offending line number.
std::vector<Edge> parse_edge_list(std::istream& in);
Tree read_edge_list(std::istream& in);
Tree read_edge_list_file(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Tree& tree);

/// Named families used throughout the tests and the CLI.
Tree path_graph(int n);
Tree star_graph(int n);

}  // namespace mixtree
