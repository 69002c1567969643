#include <algorithm>
#include <string>
#include <vector>

#include "mixtree/error.hpp"
#include "mixtree/tree.hpp"

namespace mixtree {

std::vector<Vertex> centers(const Tree& tree) {
  const int n = tree.order();
  if (n <= 2) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    return all;
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = tree.degree(v);
    if (deg[static_cast<std::size_t>(v)] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex leaf : layer) {
      for (Vertex w : tree.neighbors(leaf)) {
        if (--deg[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

namespace {

// '1' opens a vertex, '0' closes it; children sorted so the string is canonical.
std::string rooted_code(const Tree& tree, Vertex v, Vertex parent) {
  std::vector<std::string> parts;
  for (Vertex w : tree.neighbors(v)) {
    if (w != parent) parts.push_back(rooted_code(tree, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "1";
  for (const auto& p : parts) out += p;
  out += '0';
  return out;
}

}  // namespace

CanonicalCode canonical_code(const Tree& tree) {
  const auto c = centers(tree);
  std::string bits;
  unsigned char kind = 0;
  if (c.size() == 1) {
    bits = rooted_code(tree, c[0], -1);
  } else {
    kind = 1;
    std::string a = rooted_code(tree, c[0], c[1]);
    std::string b = rooted_code(tree, c[1], c[0]);
    if (b < a) std::swap(a, b);
    bits = a + b;
  }
  const int n = tree.order();
  CanonicalCode out;
  out.push_back(static_cast<char>((n >> 8) & 0xFF));
  out.push_back(static_cast<char>(n & 0xFF));
  out.push_back(static_cast<char>(kind));
  unsigned char byte = 0;
  int filled = 0;
  for (char bit : bits) {
    byte = static_cast<unsigned char>((byte << 1) | (bit == '1' ? 1 : 0));
    if (++filled == 8) {
      out.push_back(static_cast<char>(byte));
      byte = 0;
      filled = 0;
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(byte << (8 - filled)));
  return out;
}

Tree tree_from_canonical_code(const CanonicalCode& code) {
  if (code.size() < 3) throw Error(ErrorCode::ParseError, "canonical code too short");
  const int n = (static_cast<unsigned char>(code[0]) << 8) | static_cast<unsigned char>(code[1]);
  const int kind = static_cast<unsigned char>(code[2]);
  const std::size_t bit_count = 2 * static_cast<std::size_t>(n);
  if (n < 1 || kind > 1 || code.size() != 3 + (bit_count + 7) / 8) {
    throw Error(ErrorCode::ParseError, "malformed canonical code");
  }
  auto bit = [&](std::size_t k) {
    const auto byte = static_cast<unsigned char>(code[3 + k / 8]);
    return (byte >> (7 - k % 8)) & 1;
  };
  std::vector<Edge> edges;
  std::vector<Vertex> stack;
  std::vector<Vertex> roots;
  Vertex next = 0;
  for (std::size_t k = 0; k < bit_count; ++k) {
    if (bit(k)) {
      if (stack.empty()) {
        roots.push_back(next);
      } else {
        edges.emplace_back(stack.back(), next);
      }
      stack.push_back(next++);
    } else {
      if (stack.empty()) throw Error(ErrorCode::ParseError, "unbalanced canonical code");
      stack.pop_back();
    }
  }
  if (!stack.empty() || next != n || roots.size() != static_cast<std::size_t>(kind + 1)) {
    throw Error(ErrorCode::ParseError, "unbalanced canonical code");
  }
  if (kind == 1) edges.emplace_back(roots[0], roots[1]);
  return Tree::from_edge_list(edges, n);
}

bool isomorphic(const Tree& a, const Tree& b) { return canonical_code(a) == canonical_code(b); }

}  // namespace mixtree
