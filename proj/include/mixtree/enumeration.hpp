#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixtree/rational.hpp"
#include "mixtree/tree.hpp"

namespace mixtree {

/// Standard enumerates every Pruefer sequence (orders up to 10); Long unlocks
/// orders 11 and 12 through center-rooted level-sequence generation.
enum class EnumerationMode { Standard, Long };

inline constexpr int kStandardMaxOrder = 10;
inline constexpr int kLongMaxOrder = 12;

/// One representative per isomorphism class, in ascending canonical-code order.
class TreeClassIterator {
 public:
  TreeClassIterator(int order, std::optional<int> diameter, std::vector<CanonicalCode> codes);

  int order() const { return order_; }
  std::optional<int> diameter_filter() const { return diameter_; }
  std::size_t size() const { return trees_.size(); }
  const std::vector<Tree>& trees() const { return trees_; }
  const std::vector<CanonicalCode>& codes() const { return codes_; }

  auto begin() const { return trees_.begin(); }
  auto end() const { return trees_.end(); }

 private:
  int order_;
  std::optional<int> diameter_;
  std::vector<CanonicalCode> codes_;
  std::vector<Tree> trees_;
};

/// OrderTooLarge beyond the mode's cap.
TreeClassIterator all_trees(int n, EnumerationMode mode = EnumerationMode::Standard);
/// BadDiameter unless d is a possible diameter for order n.
TreeClassIterator trees_with_diameter(int n, int d,
                                      EnumerationMode mode = EnumerationMode::Standard);

/// Decodes a Pruefer sequence over 0..n-1 (length n-2) into a labelled tree.
Tree tree_from_pruefer(std::span<const int> sequence);

/// Distinct canonical codes over all n^(n-2) labelled trees, sharded by
/// the first sequence symbol across worker threads. Sorted.
std::vector<CanonicalCode> classes_by_pruefer(int n);

/// Distinct canonical codes from rooted level sequences whose root is a center. Sorted.
std::vector<CanonicalCode> classes_by_level_sequences(int n);

/// Number of rooted trees visited by the level-sequence generator.
std::size_t count_rooted_trees(int n);

/// Uniform labelled tree on n vertices via a random Pruefer sequence.
Tree random_tree(int n, std::uint64_t seed);

/// Worker count: MIXTREE_THREADS if set (>= 1), else hardware concurrency.
int worker_threads();

struct ExtremalReport {
  int n = 0;
  int d = 0;
  Rat max_tmix;
  std::vector<CanonicalCode> argmax_codes;
  bool is_unique = false;
  bool matches_balanced_broom = false;
  bool matches_formula = false;  ///< max_tmix equals the balanced-broom closed form
  std::size_t class_count = 0;

  bool passed() const { return is_unique && matches_balanced_broom && matches_formula; }
};

/// Maximizes T_mix over `candidates` (all of order n, diameter d).
ExtremalReport evaluate_extremal(int n, int d, std::span<const Tree> candidates);

/// Exhaustive check over T(n, d) for 3 <= d <= n-1.
ExtremalReport verify_extremal(int n, int d, EnumerationMode mode = EnumerationMode::Standard);

/// One report per (n, d) with 4 <= n <= n_max and 3 <= d <= n-1, ordered by (n, d).
std::vector<ExtremalReport> extremal_table(int n_max,
                                           EnumerationMode mode = EnumerationMode::Standard);

}  // namespace mixtree
