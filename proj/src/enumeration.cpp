#include "mixtree/enumeration.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>

#include "mixtree/brooms.hpp"
#include "mixtree/error.hpp"
#include "mixtree/mixing.hpp"
#include "mixtree/rng.hpp"

namespace mixtree {

int worker_threads() {
  if (const char* env = std::getenv("MIXTREE_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1) return static_cast<int>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Tree tree_from_pruefer(std::span<const int> sequence) {
  const int n = static_cast<int>(sequence.size()) + 2;
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : sequence) {
    if (x < 0 || x >= n) throw Error(ErrorCode::InvalidVertex, "Pruefer symbol out of range");
    ++degree[static_cast<std::size_t>(x)];
  }
  std::vector<Edge> edges;
  int ptr = 0;
  while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int x : sequence) {
    edges.emplace_back(leaf, x);
    --degree[static_cast<std::size_t>(leaf)];
    if (--degree[static_cast<std::size_t>(x)] == 1 && x < ptr) {
      leaf = x;
    } else {
      do ++ptr;
      while (degree[static_cast<std::size_t>(ptr)] != 1);
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return Tree::from_edge_list(edges, n);
}

namespace {

// Fixed-width twin of canonical_code for orders up to 31: the AHU string of
// length 2n fits a 64-bit word, with the center kind in bit 62.
constexpr int kFastMaxOrder = 31;

struct FastTree {
  int n = 0;
  std::array<std::array<std::int8_t, kFastMaxOrder>, kFastMaxOrder> adj{};
  std::array<std::int8_t, kFastMaxOrder> deg{};

  void add(int u, int v) {
    adj[u][deg[u]++] = static_cast<std::int8_t>(v);
    adj[v][deg[v]++] = static_cast<std::int8_t>(u);
  }
};

struct Code {
  std::uint64_t bits = 0;
  int len = 0;
  bool operator<(const Code& o) const {
    return (bits << (64 - len)) < (o.bits << (64 - o.len));
  }
};

Code fast_rooted(const FastTree& t, int root, int blocked) {
  std::array<std::int8_t, kFastMaxOrder> order{};
  std::array<std::int8_t, kFastMaxOrder> parent{};
  std::array<Code, kFastMaxOrder> code{};
  int size = 0;
  order[size++] = static_cast<std::int8_t>(root);
  parent[root] = static_cast<std::int8_t>(blocked);
  for (int k = 0; k < size; ++k) {
    const int u = order[k];
    for (int e = 0; e < t.deg[u]; ++e) {
      const int w = t.adj[u][e];
      if (w != parent[u]) {
        parent[w] = static_cast<std::int8_t>(u);
        order[size++] = static_cast<std::int8_t>(w);
      }
    }
  }
  std::array<Code, kFastMaxOrder> kids{};
  for (int k = size - 1; k >= 0; --k) {
    const int u = order[k];
    int count = 0;
    for (int e = 0; e < t.deg[u]; ++e) {
      const int w = t.adj[u][e];
      if (w != parent[u]) kids[count++] = code[w];
    }
    std::sort(kids.begin(), kids.begin() + count);
    Code c{1, 1};
    for (int m = 0; m < count; ++m) {
      c.bits = (c.bits << kids[m].len) | kids[m].bits;
      c.len += kids[m].len;
    }
    c.bits <<= 1;
    c.len += 1;
    code[u] = c;
  }
  return code[root];
}

std::uint64_t fast_code(const FastTree& t) {
  std::array<std::int8_t, kFastMaxOrder> deg = t.deg;
  std::array<std::int8_t, kFastMaxOrder> layer{};
  std::array<std::int8_t, kFastMaxOrder> next{};
  int layer_size = 0;
  for (int v = 0; v < t.n; ++v) {
    if (deg[v] <= 1) layer[layer_size++] = static_cast<std::int8_t>(v);
  }
  int remaining = t.n;
  while (remaining > 2) {
    remaining -= layer_size;
    int next_size = 0;
    for (int k = 0; k < layer_size; ++k) {
      const int leaf = layer[k];
      for (int e = 0; e < t.deg[leaf]; ++e) {
        const int w = t.adj[leaf][e];
        if (--deg[w] == 1) next[next_size++] = static_cast<std::int8_t>(w);
      }
    }
    layer = next;
    layer_size = next_size;
  }
  if (layer_size == 1) return fast_rooted(t, layer[0], -1).bits;
  Code a = fast_rooted(t, layer[0], layer[1]);
  Code b = fast_rooted(t, layer[1], layer[0]);
  if (b < a) std::swap(a, b);
  return (std::uint64_t{1} << 62) | (a.bits << b.len) | b.bits;
}

CanonicalCode expand_fast_code(int n, std::uint64_t key) {
  const int bit_count = 2 * n;
  CanonicalCode out;
  out.push_back(static_cast<char>((n >> 8) & 0xFF));
  out.push_back(static_cast<char>(n & 0xFF));
  out.push_back(static_cast<char>((key >> 62) & 1));
  unsigned char byte = 0;
  int filled = 0;
  for (int k = bit_count - 1; k >= 0; --k) {
    byte = static_cast<unsigned char>((byte << 1) | ((key >> k) & 1));
    if (++filled == 8) {
      out.push_back(static_cast<char>(byte));
      byte = 0;
      filled = 0;
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(byte << (8 - filled)));
  return out;
}

void decode_pruefer_fast(const int* seq, int n, FastTree& t, std::array<int, kFastMaxOrder>& degree) {
  t.n = n;
  t.deg.fill(0);
  for (int v = 0; v < n; ++v) degree[v] = 1;
  for (int k = 0; k < n - 2; ++k) ++degree[seq[k]];
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int k = 0; k < n - 2; ++k) {
    const int x = seq[k];
    t.add(leaf, x);
    --degree[leaf];
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      do ++ptr;
      while (degree[ptr] != 1);
      leaf = ptr;
    }
  }
  t.add(leaf, n - 1);
}

std::unordered_set<std::uint64_t> pruefer_shard(int n, int first) {
  std::unordered_set<std::uint64_t> seen;
  const int len = n - 2;
  std::array<int, kFastMaxOrder> seq{};
  std::array<int, kFastMaxOrder> degree{};
  FastTree t;
  seq[0] = first;
  for (;;) {
    decode_pruefer_fast(seq.data(), n, t, degree);
    seen.insert(fast_code(t));
    int pos = len - 1;
    while (pos >= 1 && seq[pos] == n - 1) seq[pos--] = 0;
    if (pos < 1) break;
    ++seq[pos];
  }
  return seen;
}

void check_order(int n, EnumerationMode mode) {
  const int cap = mode == EnumerationMode::Long ? kLongMaxOrder : kStandardMaxOrder;
  if (n < 1) throw Error(ErrorCode::OrderTooLarge, "order must be at least 1");
  if (n > cap) {
    throw Error(ErrorCode::OrderTooLarge,
                "order " + std::to_string(n) + " exceeds " + std::to_string(cap) +
                    (mode == EnumerationMode::Standard ? " (orders 11 and 12 need the long mode)" : ""));
  }
}

}  // namespace

std::vector<CanonicalCode> classes_by_pruefer(int n) {
  if (n < 1 || n > kFastMaxOrder) {
    throw Error(ErrorCode::OrderTooLarge, "Pruefer enumeration supports orders 1.." +
                                              std::to_string(kFastMaxOrder));
  }
  if (n <= 2) return {canonical_code(path_graph(n))};
  const int threads = std::min(worker_threads(), n);
  std::vector<std::unordered_set<std::uint64_t>> shards(static_cast<std::size_t>(n));
  auto work = [&](int t) {
    for (int first = t; first < n; first += threads) shards[static_cast<std::size_t>(first)] = pruefer_shard(n, first);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  std::set<CanonicalCode> merged;
  for (const auto& shard : shards) {
    for (std::uint64_t key : shard) merged.insert(expand_fast_code(n, key));
  }
  return {merged.begin(), merged.end()};
}

namespace {

// Beyer-Hedetniemi successor on level sequences (root at level 1); calls
// `visit` for each rooted tree of order n exactly once.
template <typename Visit>
void for_each_level_sequence(int n, Visit&& visit) {
  std::vector<int> level(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) level[static_cast<std::size_t>(i)] = i;
  for (;;) {
    visit(level);
    int p = n;
    while (p > 1 && level[static_cast<std::size_t>(p)] <= 2) --p;
    if (p <= 1) return;
    int q = p - 1;
    while (level[static_cast<std::size_t>(q)] != level[static_cast<std::size_t>(p)] - 1) --q;
    for (int i = p; i <= n; ++i) {
      level[static_cast<std::size_t>(i)] = level[static_cast<std::size_t>(i - (p - q))];
    }
  }
}

Tree tree_from_levels(const std::vector<int>& level, int n) {
  std::vector<Edge> edges;
  std::vector<int> last_at(static_cast<std::size_t>(n) + 2, -1);
  for (int i = 1; i <= n; ++i) {
    const int lv = level[static_cast<std::size_t>(i)];
    if (i > 1) edges.emplace_back(last_at[static_cast<std::size_t>(lv - 1)], i - 1);
    last_at[static_cast<std::size_t>(lv)] = i - 1;
  }
  return Tree::from_edge_list(edges, n);
}

}  // namespace

std::size_t count_rooted_trees(int n) {
  std::size_t count = 0;
  for_each_level_sequence(n, [&](const std::vector<int>&) { ++count; });
  return count;
}

std::vector<CanonicalCode> classes_by_level_sequences(int n) {
  if (n < 1) throw Error(ErrorCode::OrderTooLarge, "order must be at least 1");
  std::set<CanonicalCode> seen;
  for_each_level_sequence(n, [&](const std::vector<int>& level) {
    const Tree tree = tree_from_levels(level, n);
    const auto c = centers(tree);
    if (std::find(c.begin(), c.end(), 0) == c.end()) return;
    seen.insert(canonical_code(tree));
  });
  return {seen.begin(), seen.end()};
}

Tree random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidVertex, "order must be at least 1");
  if (n <= 2) return path_graph(n);
  SplitMix64 rng(seed);
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (auto& x : seq) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return tree_from_pruefer(seq);
}

TreeClassIterator::TreeClassIterator(int order, std::optional<int> diameter,
                                     std::vector<CanonicalCode> codes)
    : order_(order), diameter_(diameter) {
  std::sort(codes.begin(), codes.end());
  for (auto& code : codes) {
    Tree tree = tree_from_canonical_code(code);
    if (diameter_ && mixtree::diameter(tree) != *diameter_) continue;
    trees_.push_back(std::move(tree));
    codes_.push_back(std::move(code));
  }
}

TreeClassIterator all_trees(int n, EnumerationMode mode) {
  check_order(n, mode);
  auto codes = n <= kStandardMaxOrder ? classes_by_pruefer(n) : classes_by_level_sequences(n);
  return TreeClassIterator(n, std::nullopt, std::move(codes));
}

TreeClassIterator trees_with_diameter(int n, int d, EnumerationMode mode) {
  check_order(n, mode);
  const bool possible = n == 1 ? d == 0 : (d >= (n == 2 ? 1 : 2) && d <= n - 1);
  if (!possible) {
    throw Error(ErrorCode::BadDiameter,
                "no tree of order " + std::to_string(n) + " has diameter " + std::to_string(d));
  }
  auto codes = n <= kStandardMaxOrder ? classes_by_pruefer(n) : classes_by_level_sequences(n);
  return TreeClassIterator(n, d, std::move(codes));
}

ExtremalReport evaluate_extremal(int n, int d, std::span<const Tree> candidates) {
  ExtremalReport report;
  report.n = n;
  report.d = d;
  report.class_count = candidates.size();
  std::vector<Rat> values;
  values.reserve(candidates.size());
  for (const auto& tree : candidates) values.push_back(mixing_time(tree).t_mix);
  if (values.empty()) return report;
  report.max_tmix = *std::max_element(values.begin(), values.end());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (values[k] == report.max_tmix) report.argmax_codes.push_back(canonical_code(candidates[k]));
  }
  report.is_unique = report.argmax_codes.size() == 1;
  const CanonicalCode broom = canonical_code(balanced_broom(n, d).tree);
  report.matches_balanced_broom = report.is_unique && report.argmax_codes.front() == broom;
  report.matches_formula = report.max_tmix == balanced_mixing_closed_form(n, d);
  return report;
}

namespace {

void check_extremal_diameter(int n, int d) {
  if (d < 3 || d > n - 1) {
    throw Error(ErrorCode::BadDiameter, "need 3 <= d <= n-1, got n=" + std::to_string(n) +
                                            ", d=" + std::to_string(d));
  }
}

}  // namespace

ExtremalReport verify_extremal(int n, int d, EnumerationMode mode) {
  check_order(n, mode);
  check_extremal_diameter(n, d);
  const auto classes = trees_with_diameter(n, d, mode);
  return evaluate_extremal(n, d, classes.trees());
}

std::vector<ExtremalReport> extremal_table(int n_max, EnumerationMode mode) {
  if (n_max > (mode == EnumerationMode::Long ? kLongMaxOrder : kStandardMaxOrder)) {
    check_order(n_max, mode);
  }
  std::vector<ExtremalReport> rows;
  for (int n = 4; n <= n_max; ++n) {
    const auto classes = all_trees(n, mode);
    std::map<int, std::vector<Tree>> by_diameter;
    for (const auto& tree : classes) by_diameter[diameter(tree)].push_back(tree);
    for (int d = 3; d <= n - 1; ++d) rows.push_back(evaluate_extremal(n, d, by_diameter[d]));
  }
  return rows;
}

}  // namespace mixtree
