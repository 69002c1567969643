#include "mixtree/tree.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "mixtree/error.hpp"

namespace mixtree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::HasCycle: return "HasCycle";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::TrivialTree: return "TrivialTree";
    case ErrorCode::BadDistribution: return "BadDistribution";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotACaterpillar: return "NotACaterpillar";
    case ErrorCode::NotALeaf: return "NotALeaf";
    case ErrorCode::AlreadyAdjacent: return "AlreadyAdjacent";
    case ErrorCode::NotOnPath: return "NotOnPath";
    case ErrorCode::NoLeafAt: return "NoLeafAt";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InsufficientLeaves: return "InsufficientLeaves";
    case ErrorCode::NotBroomLike: return "NotBroomLike";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::BadDiameter: return "BadDiameter";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Tree Tree::from_edge_list(std::span<const Edge> edges) {
  int order = 1;
  for (const auto& [u, v] : edges) order = std::max({order, u + 1, v + 1});
  return from_edge_list(edges, order);
}

Tree Tree::from_edge_list(std::span<const Edge> edges, int order) {
  if (order < 1) throw Error(ErrorCode::InvalidVertex, "a tree needs at least one vertex");
  std::vector<std::vector<Vertex>> adjacency(static_cast<std::size_t>(order));
  std::set<Edge> seen;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= order || v >= order) {
      throw Error(ErrorCode::InvalidVertex,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop at " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") repeated");
    }
    adjacency[static_cast<std::size_t>(u)].push_back(v);
    adjacency[static_cast<std::size_t>(v)].push_back(u);
  }
  const auto m = static_cast<int>(edges.size());
  if (m > order - 1) {
    throw Error(ErrorCode::HasCycle, std::to_string(m) + " edges on " + std::to_string(order) +
                                         " vertices");
  }
  if (m < order - 1) {
    throw Error(ErrorCode::Disconnected, std::to_string(m) + " edges on " +
                                             std::to_string(order) + " vertices");
  }
  std::vector<char> reached(static_cast<std::size_t>(order), 0);
  std::vector<Vertex> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency[static_cast<std::size_t>(u)]) {
      if (!reached[static_cast<std::size_t>(w)]) {
        reached[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  // n-1 edges but not connected: some component carries a cycle.
  if (count != order) throw Error(ErrorCode::HasCycle, "edge set is not acyclic");
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return Tree(std::move(adjacency));
}

Vertex Tree::check(Vertex v) const {
  if (!contains(v)) {
    throw Error(ErrorCode::InvalidVertex,
                "vertex " + std::to_string(v) + " not in 0.." + std::to_string(order() - 1));
  }
  return v;
}

bool Tree::has_edge(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  check(v);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[static_cast<std::size_t>(u)]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Vertex> Tree::leaves() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < order(); ++v) {
    if (is_leaf(v)) out.push_back(v);
  }
  return out;
}

Tree move_leaf(const Tree& tree, Vertex leaf, Vertex new_neighbor) {
  if (!tree.is_leaf(leaf)) throw Error(ErrorCode::NotALeaf, std::to_string(leaf) + " is not a leaf");
  tree.check(new_neighbor);
  const Vertex old = tree.neighbors(leaf).front();
  const Edge removed{std::min(leaf, old), std::max(leaf, old)};
  std::vector<Edge> edges;
  for (const auto& e : tree.edges()) {
    if (e != removed) edges.push_back(e);
  }
  edges.emplace_back(std::min(leaf, new_neighbor), std::max(leaf, new_neighbor));
  return Tree::from_edge_list(edges, tree.order());
}

std::vector<int> bfs_distances(const Tree& tree, Vertex source) {
  std::vector<int> dist(static_cast<std::size_t>(tree.order()), -1);
  std::queue<Vertex> queue;
  dist[static_cast<std::size_t>(tree.check(source))] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop();
    for (Vertex w : tree.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

int distance(const Tree& tree, Vertex u, Vertex v) {
  tree.check(v);
  return bfs_distances(tree, u)[static_cast<std::size_t>(v)];
}

DistanceMatrix distance_matrix(const Tree& tree) {
  const int n = tree.order();
  DistanceMatrix dist(n, n);
  for (Vertex u = 0; u < n; ++u) {
    const auto row = bfs_distances(tree, u);
    for (Vertex v = 0; v < n; ++v) dist(u, v) = row[static_cast<std::size_t>(v)];
  }
  return dist;
}

int diameter(const Tree& tree) {
  // Double sweep: the farthest vertex from anywhere is a diameter endpoint.
  auto farthest = [&](Vertex from) {
    const auto d = bfs_distances(tree, from);
    const auto it = std::max_element(d.begin(), d.end());
    return std::pair{static_cast<Vertex>(it - d.begin()), *it};
  };
  return farthest(farthest(0).first).second;
}

int path_overlap(const DistanceMatrix& dist, Vertex u, Vertex v, Vertex w) {
  return (dist(u, w) + dist(v, w) - dist(u, v)) / 2;
}

int path_overlap(const Tree& tree, Vertex u, Vertex v, Vertex w) {
  const auto from_w = bfs_distances(tree, w);
  tree.check(u);
  tree.check(v);
  return (from_w[static_cast<std::size_t>(u)] + from_w[static_cast<std::size_t>(v)] -
          distance(tree, u, v)) /
         2;
}

std::vector<Vertex> side_set(const Tree& tree, Vertex u, Vertex v) {
  if (!tree.has_edge(u, v)) {
    throw Error(ErrorCode::NotAnEdge,
                "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  }
  std::vector<char> seen(static_cast<std::size_t>(tree.order()), 0);
  seen[static_cast<std::size_t>(u)] = 1;
  seen[static_cast<std::size_t>(v)] = 1;
  std::vector<Vertex> out{u};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (Vertex w : tree.neighbors(out[k])) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexPath geodesic(const Tree& tree, Vertex u, Vertex v) {
  tree.check(u);
  std::vector<Vertex> parent(static_cast<std::size_t>(tree.order()), -1);
  std::queue<Vertex> queue;
  parent[static_cast<std::size_t>(tree.check(v))] = v;
  queue.push(v);
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    for (Vertex w : tree.neighbors(x)) {
      if (parent[static_cast<std::size_t>(w)] < 0) {
        parent[static_cast<std::size_t>(w)] = x;
        queue.push(w);
      }
    }
  }
  VertexPath path;
  for (Vertex x = u; x != v; x = parent[static_cast<std::size_t>(x)]) path.vertices.push_back(x);
  path.vertices.push_back(v);
  return path;
}

void check_path(const Tree& tree, const VertexPath& path) {
  if (path.vertices.empty()) throw Error(ErrorCode::NotOnPath, "empty path");
  std::vector<char> seen(static_cast<std::size_t>(tree.order()), 0);
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Vertex v = path[k];
    if (!tree.contains(v)) throw Error(ErrorCode::NotOnPath, "path vertex out of range");
    if (seen[static_cast<std::size_t>(v)]) throw Error(ErrorCode::NotOnPath, "path repeats a vertex");
    seen[static_cast<std::size_t>(v)] = 1;
    if (k > 0 && !tree.has_edge(path[k - 1], v)) {
      throw Error(ErrorCode::NotOnPath, "consecutive path vertices are not adjacent");
    }
  }
}

std::vector<int> distances_to_path(const Tree& tree, const VertexPath& path) {
  std::vector<int> dist(static_cast<std::size_t>(tree.order()), -1);
  std::queue<Vertex> queue;
  for (Vertex v : path.vertices) {
    dist[static_cast<std::size_t>(v)] = 0;
    queue.push(v);
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop();
    for (Vertex w : tree.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

bool is_caterpillar_spine(const Tree& tree, const VertexPath& path) {
  const auto dist = distances_to_path(tree, path);
  return std::all_of(dist.begin(), dist.end(), [](int d) { return d <= 1; });
}

std::optional<VertexPath> caterpillar_spine(const Tree& tree) {
  const int n = tree.order();
  if (n == 1) return VertexPath{{0}};
  const DistanceMatrix dist = distance_matrix(tree);
  const int diam = dist.maxCoeff();
  std::optional<VertexPath> best;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (dist(u, v) != diam) continue;
      VertexPath candidate = geodesic(tree, u, v);
      if (best && !(candidate.vertices < best->vertices)) continue;
      if (is_caterpillar_spine(tree, candidate)) best = std::move(candidate);
    }
  }
  return best;
}

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xF]);
  }
  return out;
}

Tree relabel(const Tree& tree, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != tree.order()) {
    throw Error(ErrorCode::InvalidVertex, "permutation size does not match order");
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : tree.edges()) {
    edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  return Tree::from_edge_list(edges, tree.order());
}

std::vector<Edge> parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0 || u > 1'000'000 ||
        v > 1'000'000) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected \"u v\", got \"" + line + "\"");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return edges;
}

Tree read_edge_list(std::istream& in) {
  const auto edges = parse_edge_list(in);
  return Tree::from_edge_list(edges);
}

Tree read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Tree& tree) {
  for (const auto& [u, v] : tree.edges()) out << u << ' ' << v << '\n';
}

Tree path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Tree::from_edge_list(edges, n);
}

Tree star_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Tree::from_edge_list(edges, n);
}

}  // namespace mixtree
