#include "mixtree/surgery.hpp"

#include <algorithm>
#include <queue>

#include "mixtree/error.hpp"
#include "mixtree/mixing.hpp"

namespace mixtree {

namespace {

std::string idx(int k) { return std::to_string(k); }

int spine_index_of(const VertexPath& spine, Vertex v) {
  const auto it = std::find(spine.vertices.begin(), spine.vertices.end(), v);
  return it == spine.vertices.end() ? -1 : static_cast<int>(it - spine.vertices.begin());
}

void check_spine_index(const VertexPath& spine, int k) {
  if (k < 0 || k > spine.length()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "spine index " + idx(k) + " outside 0.." + idx(spine.length()));
  }
}

Tree rewire(const Tree& tree, const std::vector<std::pair<Vertex, Vertex>>& moves) {
  // moves: (leaf, new neighbour); every leaf's single edge is replaced.
  std::vector<Edge> edges;
  for (const auto& [u, v] : tree.edges()) {
    const bool dropped = std::any_of(moves.begin(), moves.end(), [&](const auto& m) {
      return m.first == u || m.first == v;
    });
    if (!dropped) edges.emplace_back(u, v);
  }
  for (const auto& [leaf, target] : moves) edges.emplace_back(std::minmax(leaf, target));
  return Tree::from_edge_list(edges, tree.order());
}

bool endpoints_are_leaves(const Tree& tree, const VertexPath& spine) {
  return tree.order() <= 2 || (tree.is_leaf(spine.front()) && tree.is_leaf(spine.back()));
}

}  // namespace

std::string_view to_string(SurgeryKind kind) {
  switch (kind) {
    case SurgeryKind::Sigma: return "sigma";
    case SurgeryKind::TauSingle: return "tau_single";
    case SurgeryKind::TauPair: return "tau_pair";
  }
  return "unknown";
}

std::vector<int> CaterpillarPartition::sizes() const {
  std::vector<int> out;
  for (const auto& s : sets) out.push_back(static_cast<int>(s.size()));
  return out;
}

std::vector<int> CaterpillarPartition::block_of(int order) const {
  std::vector<int> out(static_cast<std::size_t>(order), -1);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (Vertex v : sets[k]) out[static_cast<std::size_t>(v)] = static_cast<int>(k);
  }
  return out;
}

CaterpillarPartition partition(const Tree& tree, const VertexPath& spine) {
  check_path(tree, spine);
  CaterpillarPartition out{spine, std::vector<std::vector<Vertex>>(spine.size())};
  std::vector<int> index(static_cast<std::size_t>(tree.order()), -1);
  for (std::size_t k = 0; k < spine.size(); ++k) {
    index[static_cast<std::size_t>(spine[k])] = static_cast<int>(k);
    out.sets[k].push_back(spine[k]);
  }
  for (Vertex v = 0; v < tree.order(); ++v) {
    if (index[static_cast<std::size_t>(v)] >= 0) continue;
    const Vertex anchor = tree.neighbors(v).front();
    if (!tree.is_leaf(v) || index[static_cast<std::size_t>(anchor)] < 0) {
      throw Error(ErrorCode::NotACaterpillar,
                  "vertex " + idx(v) + " is not a leaf hanging off the spine");
    }
    out.sets[static_cast<std::size_t>(index[static_cast<std::size_t>(anchor)])].push_back(v);
  }
  return out;
}

Vertex nearest_path_vertex(const Tree& tree, const VertexPath& path, Vertex y) {
  check_path(tree, path);
  tree.check(y);
  const auto from_y = bfs_distances(tree, y);
  Vertex best = path.front();
  for (Vertex v : path.vertices) {
    if (from_y[static_cast<std::size_t>(v)] < from_y[static_cast<std::size_t>(best)]) best = v;
  }
  return best;
}

Tree sigma(const Tree& tree, const VertexPath& path, Vertex y) {
  check_path(tree, path);
  tree.check(y);
  if (spine_index_of(path, y) >= 0) {
    throw Error(ErrorCode::AlreadyAdjacent, "vertex " + idx(y) + " lies on the path");
  }
  if (!tree.is_leaf(y)) throw Error(ErrorCode::NotALeaf, "vertex " + idx(y) + " is not a leaf");
  const Vertex target = nearest_path_vertex(tree, path, y);
  if (tree.has_edge(y, target)) {
    throw Error(ErrorCode::AlreadyAdjacent, "leaf " + idx(y) + " is already adjacent to the path");
  }
  return move_leaf(tree, y, target);
}

std::vector<Vertex> spine_leaves(const Tree& tree, const VertexPath& spine, int i) {
  check_path(tree, spine);
  check_spine_index(spine, i);
  std::vector<Vertex> out;
  for (Vertex w : tree.neighbors(spine[static_cast<std::size_t>(i)])) {
    if (tree.is_leaf(w) && spine_index_of(spine, w) < 0) out.push_back(w);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

Tree tau_single(const Tree& tree, const VertexPath& spine, int i, int j) {
  check_spine_index(spine, j);
  const auto leaves = spine_leaves(tree, spine, i);
  if (leaves.empty()) throw Error(ErrorCode::NoLeafAt, "no non-spine leaf at v_" + idx(i));
  if (i == j) return tree;
  return rewire(tree, {{leaves.front(), spine[static_cast<std::size_t>(j)]}});
}

std::array<Vertex, 2> tau_pair_leaves(const Tree& tree, const VertexPath& spine, int i, int k) {
  const auto at_i = spine_leaves(tree, spine, i);
  const auto at_k = spine_leaves(tree, spine, k);
  if (at_i.empty()) throw Error(ErrorCode::NoLeafAt, "no non-spine leaf at v_" + idx(i));
  if (at_k.empty()) throw Error(ErrorCode::NoLeafAt, "no non-spine leaf at v_" + idx(k));
  if (i == k) {
    if (at_i.size() < 2) {
      throw Error(ErrorCode::InsufficientLeaves, "need two leaves at v_" + idx(i));
    }
    return {at_i[0], at_i[1]};
  }
  return {at_i.front(), at_k.front()};
}

Tree tau_pair(const Tree& tree, const VertexPath& spine, int i, int j, int k, int l) {
  check_path(tree, spine);
  for (int t : {i, j, k, l}) check_spine_index(spine, t);
  const auto [x, y] = tau_pair_leaves(tree, spine, i, k);
  std::vector<std::pair<Vertex, Vertex>> moves;
  if (i != j) moves.emplace_back(x, spine[static_cast<std::size_t>(j)]);
  if (k != l) moves.emplace_back(y, spine[static_cast<std::size_t>(l)]);
  return moves.empty() ? tree : rewire(tree, moves);
}

DeltaHittingTable delta_hitting_table(const Tree& tree, const VertexPath& spine, int i, int j) {
  check_path(tree, spine);
  const int d = spine.length();
  if (!(2 <= i && i <= j && j <= d - 2)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "need 2 <= i <= j <= d-2, got i=" + idx(i) + ", j=" + idx(j) + ", d=" + idx(d));
  }
  const auto part = partition(tree, spine);
  const auto [x, y] = tau_pair_leaves(tree, spine, i, j);
  const Tree moved = tau_pair(tree, spine, i, i - 1, j, j + 1);
  const HittingMatrix before = hitting_matrix(tree);
  const HittingMatrix after = hitting_matrix(moved);
  const auto v = [&](int k) { return spine[static_cast<std::size_t>(k)]; };
  const Vertex end = v(d);

  DeltaHittingTable table;
  table.i = i;
  table.j = j;
  table.x = x;
  table.y = y;
  table.block = part.block_of(tree.order());
  for (Vertex w = 0; w < tree.order(); ++w) {
    table.measured.push_back(after(w, end) - before(w, end));
    const int k = table.block[static_cast<std::size_t>(w)];
    std::int64_t stated = 0;
    if (w == x) {
      stated = 2 + before(v(i - 1), v(i));
    } else if (w == y) {
      stated = 2 - before(v(j), v(j + 1));
    } else if (i <= k && k <= j) {
      stated = -2;
    }
    table.stated.push_back(stated);
  }
  return table;
}

bool SurgeryStep::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SurgeryCheck& c) { return c.passed; });
}

namespace {

SurgeryStep make_step(int phase, SurgeryKind kind, std::vector<int> indices, std::vector<Vertex> moved,
                      const Tree& before, const MixingAnalysis& before_mix, const Tree& after,
                      const MixingAnalysis& after_mix) {
  SurgeryStep step;
  step.phase = phase;
  step.kind = kind;
  step.indices = std::move(indices);
  step.moved = std::move(moved);
  step.before_tree = before;
  step.after_tree = after;
  step.before_tmix = before_mix.t_mix();
  step.after_tmix = after_mix.t_mix();
  step.checks.push_back({"tmix_increases", step.after_tmix > step.before_tmix});
  return step;
}

// The tree with the phase-one result's spine needs to be leaf-to-leaf; a
// pessimal path always is.
VertexPath default_spine(const Tree& tree) {
  if (tree.order() >= 2) {
    VertexPath p = pessimal_path(tree);
    if (is_caterpillar_spine(tree, p)) return p;
  }
  auto spine = caterpillar_spine(tree);
  if (!spine) throw Error(ErrorCode::NotACaterpillar, "tree is not a caterpillar");
  return *spine;
}

}  // namespace

PhaseResult phase1_caterpillarify(const Tree& tree) {
  if (tree.order() < 4) throw Error(ErrorCode::TrivialTree, "evolution needs n >= 4");
  PhaseResult out{tree, VertexPath{}, {}};
  MixingAnalysis mix(out.tree);
  // Each accepted step strictly increases T_mix over a finite family, so the
  // loop terminates; the cap only guards against a violated step repeating.
  const int cap = tree.order() * tree.order() + 8;
  for (int iteration = 0;; ++iteration) {
    const MixingReport report = mix.report();
    const VertexPath path = geodesic(out.tree, report.z, report.z_partner);
    const auto dist = distances_to_path(out.tree, path);
    Vertex y = -1;
    for (Vertex v = 0; v < out.tree.order() && y < 0; ++v) {
      if (dist[static_cast<std::size_t>(v)] >= 2 && out.tree.is_leaf(v)) y = v;
    }
    if (y < 0 || iteration >= cap) {
      out.spine = path;
      return out;
    }
    const Vertex anchor = nearest_path_vertex(out.tree, path, y);
    const Tree next = sigma(out.tree, path, y);
    const MixingAnalysis next_mix(next);

    SurgeryStep step = make_step(1, SurgeryKind::Sigma, {spine_index_of(path, anchor)}, {y},
                                 out.tree, mix, next, next_mix);
    bool spine_preserved = true;
    bool nonincreasing = true;
    bool leaf_decreases = true;
    bool access_decreases = true;
    for (Vertex target : path.vertices) {
      for (Vertex u : path.vertices) {
        spine_preserved &= next_mix.hit(u, target) == mix.hit(u, target);
      }
      for (Vertex u = 0; u < out.tree.order(); ++u) {
        nonincreasing &= next_mix.hit(u, target) <= mix.hit(u, target);
      }
      leaf_decreases &= next_mix.hit(y, target) < mix.hit(y, target);
      access_decreases &= next_mix.access_from_stationary(target) < mix.access_from_stationary(target);
    }
    step.checks.push_back({"spine_hitting_preserved", spine_preserved});
    step.checks.push_back({"hitting_to_spine_nonincreasing", nonincreasing});
    step.checks.push_back({"moved_leaf_hitting_decreases", leaf_decreases});
    step.checks.push_back({"stationary_access_to_spine_decreases", access_decreases});
    step.checks.push_back(
        {"start_vertex_mixing_increases", next_mix.mix_from(path.front()) > mix.mix_from(path.front())});
    out.steps.push_back(std::move(step));
    out.tree = next;
    mix = next_mix;
  }
}

PhaseResult phase2_to_broomlike(const Tree& caterpillar) {
  return phase2_to_broomlike(caterpillar, default_spine(caterpillar));
}

PhaseResult phase2_to_broomlike(const Tree& caterpillar, const VertexPath& spine) {
  partition(caterpillar, spine);
  if (!endpoints_are_leaves(caterpillar, spine)) {
    throw Error(ErrorCode::NotACaterpillar, "spine endpoints must be leaves");
  }
  PhaseResult out{caterpillar, spine, {}};
  const int d = spine.length();
  MixingAnalysis mix(out.tree);
  const Vertex first = spine.front();
  const Vertex last = spine.back();
  for (;;) {
    int i = -1;
    int j = -1;
    int interior = 0;
    for (int k = 2; k <= d - 2; ++k) {
      const auto count = static_cast<int>(spine_leaves(out.tree, spine, k).size());
      if (count == 0) continue;
      interior += count;
      if (i < 0) i = k;
      j = k;
    }
    if (interior < 2) return out;

    const auto leaves = tau_pair_leaves(out.tree, spine, i, j);
    const DeltaHittingTable table = delta_hitting_table(out.tree, spine, i, j);
    const Tree next = tau_pair(out.tree, spine, i, i - 1, j, j + 1);
    const MixingAnalysis next_mix(next);
    SurgeryStep step = make_step(2, SurgeryKind::TauPair, {i, i - 1, j, j + 1},
                                 {leaves[0], leaves[1]}, out.tree, mix, next, next_mix);
    step.checks.push_back(
        {"end_to_end_hitting_preserved", next_mix.hit(first, last) == mix.hit(first, last)});
    step.checks.push_back({"stationary_access_to_far_end_decreases",
                           next_mix.access_from_stationary(last) < mix.access_from_stationary(last)});
    step.checks.push_back({"stationary_access_to_near_end_decreases",
                           next_mix.access_from_stationary(first) < mix.access_from_stationary(first)});
    bool table_ok = true;
    for (Vertex w = 0; w < out.tree.order(); ++w) {
      if (w != table.x && w != table.y) {
        table_ok &= table.measured[static_cast<std::size_t>(w)] == table.stated[static_cast<std::size_t>(w)];
      }
    }
    step.checks.push_back({"delta_table_outer_and_inner_cases", table_ok});
    out.steps.push_back(std::move(step));
    out.tree = next;
    mix = next_mix;
  }
}

PhaseResult phase3_to_balanced(const Tree& broomlike) {
  return phase3_to_balanced(broomlike, default_spine(broomlike));
}

PhaseResult phase3_to_balanced(const Tree& broomlike, const VertexPath& spine_in) {
  const int d = spine_in.length();
  try {
    partition(broomlike, spine_in);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotACaterpillar) throw Error(ErrorCode::NotBroomLike, e.what());
    throw;
  }
  if (!endpoints_are_leaves(broomlike, spine_in) || d < 2) {
    throw Error(ErrorCode::NotBroomLike, "spine must be a leaf-to-leaf path of length >= 2");
  }
  VertexPath spine = spine_in;
  if (broomlike.degree(spine[1]) < broomlike.degree(spine[static_cast<std::size_t>(d - 1)])) {
    spine = spine.reversed();
  }
  PhaseResult out{broomlike, spine, {}};
  if (d == 2) return out;  // a star is its own balanced broom

  int stray = -1;
  int interior = 0;
  for (int k = 2; k <= d - 2; ++k) {
    const auto count = static_cast<int>(spine_leaves(broomlike, spine, k).size());
    interior += count;
    if (count > 0) stray = k;
  }
  if (interior > 1) {
    throw Error(ErrorCode::NotBroomLike, std::to_string(interior) + " interior leaves");
  }

  const auto v = [&](int k) { return spine[static_cast<std::size_t>(k)]; };
  const auto edges = static_cast<std::int64_t>(broomlike.edge_count());
  MixingAnalysis mix(out.tree);
  if (stray >= 0) {
    const Vertex leaf = spine_leaves(out.tree, spine, stray).front();
    const Tree next = tau_single(out.tree, spine, stray, d - 1);
    const MixingAnalysis next_mix(next);
    SurgeryStep step = make_step(3, SurgeryKind::TauSingle, {stray, d - 1}, {leaf}, out.tree, mix,
                                 next, next_mix);
    step.checks.push_back({"end_to_end_hitting_shift",
                           next_mix.hit(v(0), v(d)) - mix.hit(v(0), v(d)) == -2 * (d - stray - 1)});
    step.checks.push_back(
        {"transplant_condition", edges <= mix.hit(v(stray), v(stray + 1)) + d - stray - 3});
    out.steps.push_back(std::move(step));
    out.tree = next;
    mix = next_mix;
  }
  for (;;) {
    const int ell = out.tree.degree(v(1)) - 1;
    const int r = out.tree.degree(v(d - 1)) - 1;
    if (ell < r + 2) return out;
    const Vertex leaf = spine_leaves(out.tree, spine, 1).front();
    const Tree next = tau_single(out.tree, spine, 1, d - 1);
    const MixingAnalysis next_mix(next);
    SurgeryStep step =
        make_step(3, SurgeryKind::TauSingle, {1, d - 1}, {leaf}, out.tree, mix, next, next_mix);
    step.checks.push_back({"transplant_condition", edges <= mix.hit(v(1), v(2)) + d - 4});
    out.steps.push_back(std::move(step));
    out.tree = next;
    mix = next_mix;
  }
}

std::vector<std::string> EvolutionCertificate::violations() const {
  std::vector<std::string> out = global_violations;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const auto& step = steps[s];
    for (const auto& check : step.checks) {
      if (check.passed) continue;
      out.push_back("step " + std::to_string(s) + " (" + std::string(to_string(step.kind)) +
                    "): " + check.name);
    }
    if (s > 0 && !(steps[s - 1].after_tree == step.before_tree)) {
      out.push_back("step " + std::to_string(s) + ": chain broken");
    }
  }
  return out;
}

EvolutionCertificate evolve(const Tree& tree) {
  const int n = tree.order();
  if (n < 4) throw Error(ErrorCode::TrivialTree, "evolution needs n >= 4");
  EvolutionCertificate cert;
  cert.initial_tree = tree;
  cert.final_tree = tree;
  cert.original_diameter = diameter(tree);
  cert.initial_tmix = mixing_time(tree).t_mix;
  cert.target_tmix = mixing_time(balanced_broom(n, cert.original_diameter).tree).t_mix;

  if (isomorphic(tree, balanced_broom(n, cert.original_diameter).tree)) {
    cert.final_diameter = cert.original_diameter;
    cert.final_params = balanced_params(n, cert.original_diameter);
    cert.final_tmix = cert.initial_tmix;
    return cert;
  }

  PhaseResult one = phase1_caterpillarify(tree);
  PhaseResult two = phase2_to_broomlike(one.tree, one.spine);
  PhaseResult three = phase3_to_balanced(two.tree, two.spine);
  for (auto* phase : {&one, &two, &three}) {
    for (auto& step : phase->steps) cert.steps.push_back(std::move(step));
  }
  cert.final_tree = three.tree;
  cert.final_diameter = three.spine.length();
  cert.final_params = balanced_params(n, cert.final_diameter);
  cert.final_tmix = mixing_time(cert.final_tree).t_mix;

  if (!isomorphic(cert.final_tree, balanced_broom(n, cert.final_diameter).tree)) {
    cert.global_violations.push_back("final tree is not the balanced double broom");
  }
  if (cert.final_diameter > cert.original_diameter) {
    cert.global_violations.push_back("diameter grew during evolution");
  }
  if (!(cert.final_tmix > cert.initial_tmix)) {
    cert.global_violations.push_back("final mixing time does not exceed the initial one");
  }
  if (cert.final_diameter < cert.original_diameter && !(cert.target_tmix > cert.final_tmix)) {
    cert.global_violations.push_back("balanced broom mixing time not increasing in diameter");
  }
  return cert;
}

}  // namespace mixtree
