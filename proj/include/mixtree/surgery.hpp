#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mixtree/brooms.hpp"
#include "mixtree/rational.hpp"
#include "mixtree/tree.hpp"

namespace mixtree {

/// V_k = {v_k} plus the non-spine leaves hanging off v_k.
struct CaterpillarPartition {
  VertexPath spine;
  std::vector<std::vector<Vertex>> sets;

  std::vector<int> sizes() const;
  /// k such that v lies in V_k.
  std::vector<int> block_of(int order) const;
};

/// Throws NotACaterpillar unless every vertex off the spine is a leaf
/// adjacent to it (NotOnPath if the spine is not a path of the tree).
CaterpillarPartition partition(const Tree& tree, const VertexPath& spine);

/// Re-attaches leaf y (at distance >= 2 from the path) to its nearest path vertex.
Tree sigma(const Tree& tree, const VertexPath& path, Vertex y);

/// Path vertex that sigma would attach y to.
Vertex nearest_path_vertex(const Tree& tree, const VertexPath& path, Vertex y);

/// Non-spine leaves adjacent to v_i, in decreasing id order. Transplants
/// always move the first entry (and the second when both moves share v_i).
std::vector<Vertex> spine_leaves(const Tree& tree, const VertexPath& spine, int i);

/// Moves one non-spine leaf from v_i to v_j.
Tree tau_single(const Tree& tree, const VertexPath& spine, int i, int j);

/// Moves a leaf x from v_i to v_j and a distinct leaf y from v_k to v_l.
Tree tau_pair(const Tree& tree, const VertexPath& spine, int i, int j, int k, int l);

/// Leaves that tau_pair(tree, spine, i, _, k, _) moves: {x, y}.
std::array<Vertex, 2> tau_pair_leaves(const Tree& tree, const VertexPath& spine, int i, int k);

/// Exact change of hitting times into v_d under the outward pair move
/// tau(i -> i-1, j -> j+1), next to the closed per-case values usually
/// stated for this move. Both columns are exact integers.
struct DeltaHittingTable {
  int i = 0;
  int j = 0;
  Vertex x = -1;  ///< leaf moved from v_i to v_{i-1}
  Vertex y = -1;  ///< leaf moved from v_j to v_{j+1}
  std::vector<int> block;              ///< k with v in V_k (before the move)
  std::vector<std::int64_t> measured;  ///< H*(v, v_d) - H(v, v_d), recomputed
  std::vector<std::int64_t> stated;   ///< 0 | -2 | 2 + H(v_{i-1},v_i) | 2 - H(v_j,v_{j+1})
};

/// Needs 2 <= i <= j <= d-2 and leaves at v_i and v_j.
DeltaHittingTable delta_hitting_table(const Tree& tree, const VertexPath& spine, int i, int j);

enum class SurgeryKind { Sigma, TauSingle, TauPair };
std::string_view to_string(SurgeryKind kind);

/// A named runtime assertion attached to a surgery step.
struct SurgeryCheck {
  std::string name;
  bool passed = false;
};

struct SurgeryStep {
  int phase = 0;
  SurgeryKind kind = SurgeryKind::Sigma;
  /// Sigma: {k} (the attachment index); TauSingle: {i, j}; TauPair: {i, j, k, l}.
  std::vector<int> indices;
  std::vector<Vertex> moved;
  Rat before_tmix;
  Rat after_tmix;
  Tree before_tree;
  Tree after_tree;
  std::vector<SurgeryCheck> checks;

  bool increased() const { return after_tmix > before_tmix; }
  bool all_checks_pass() const;
};

struct PhaseResult {
  Tree tree;
  VertexPath spine;
  std::vector<SurgeryStep> steps;
};

/// Repeated sigma moves along the (recomputed) pessimal path until every
/// vertex is within distance one of it.
PhaseResult phase1_caterpillarify(const Tree& tree);

/// Outward pair moves tau(i -> i-1, j -> j+1) using the leftmost and
/// rightmost interior leaf indices, until at most one interior leaf remains.
PhaseResult phase2_to_broomlike(const Tree& caterpillar);
PhaseResult phase2_to_broomlike(const Tree& caterpillar, const VertexPath& spine);

/// Orients the spine so deg(v_1) >= deg(v_{d-1}), throws the stray interior
/// leaf (if any) to v_{d-1}, then moves leaves from v_1 to v_{d-1} while
/// ell >= r + 2.
PhaseResult phase3_to_balanced(const Tree& broomlike);
PhaseResult phase3_to_balanced(const Tree& broomlike, const VertexPath& spine);

struct EvolutionCertificate {
  Tree initial_tree;
  Tree final_tree;
  std::vector<SurgeryStep> steps;
  BroomParams final_params;
  int original_diameter = 0;
  int final_diameter = 0;
  Rat initial_tmix;
  Rat final_tmix;
  Rat target_tmix;  ///< T_mix(D_{n,d}) for the original diameter d
  /// Violations discovered outside individual steps (final shape, gaps).
  std::vector<std::string> global_violations;

  std::vector<std::string> violations() const;
  bool valid() const { return violations().empty(); }
};

/// Chains the three phases. A tree already isomorphic to D_{n,d} yields an
/// empty certificate. TrivialTree for n < 4.
EvolutionCertificate evolve(const Tree& tree);

}  // namespace mixtree
