#include "mixtree/brooms.hpp"

#include <string>
#include <vector>

#include "mixtree/error.hpp"

namespace mixtree {

void BroomParams::validate() const {
  const auto describe = [this] {
    return "(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ", ell=" + std::to_string(ell) +
           ", r=" + std::to_string(r) + ")";
  };
  if (d < 2) throw Error(ErrorCode::BadParams, "diameter must be at least 2 " + describe());
  if (ell < 1 || r < 1) throw Error(ErrorCode::BadParams, "leaf counts must be positive " + describe());
  if (ell + r != n - d + 1) {
    throw Error(ErrorCode::BadParams, "need ell + r = n - d + 1 " + describe());
  }
}

LabeledBroom build_double_broom(const BroomParams& params) {
  params.validate();
  const int d = params.d;
  std::vector<Edge> edges;
  for (Vertex k = 1; k <= d; ++k) edges.emplace_back(k - 1, k);
  Vertex next = d + 1;
  for (int k = 1; k < params.ell; ++k) edges.emplace_back(1, next++);
  for (int k = 1; k < params.r; ++k) edges.emplace_back(d - 1, next++);
  LabeledBroom out{Tree::from_edge_list(edges, params.n), VertexPath{}, params};
  for (Vertex k = 0; k <= d; ++k) out.spine.vertices.push_back(k);
  return out;
}

BroomParams balanced_params(int n, int d) {
  if (d < 2 || d > n - 1) {
    throw Error(ErrorCode::BadParams, "need 2 <= d <= n - 1, got n=" + std::to_string(n) +
                                          ", d=" + std::to_string(d));
  }
  const int leaves = n - d + 1;
  return BroomParams{n, d, (leaves + 1) / 2, leaves / 2};
}

LabeledBroom balanced_broom(int n, int d) { return build_double_broom(balanced_params(n, d)); }

BroomHitting broom_hitting_closed_form(const BroomParams& params, int k) {
  params.validate();
  const std::int64_t d = params.d;
  const std::int64_t ell = params.ell;
  const std::int64_t r = params.r;
  if (k < 1 || k > d) {
    throw Error(ErrorCode::BadIndex, "k=" + std::to_string(k) + " outside 1.." + std::to_string(d));
  }
  BroomHitting out;
  out.v0_to_vd = d * d + 2 * (ell - 1) * (d - 1) + 2 * (r - 1);
  if (k == d) {
    out.v0_to_vk = out.v0_to_vd;
    out.vk_to_vd = 0;
  } else {
    out.v0_to_vk = std::int64_t{k} * k + 2 * (ell - 1) * (k - 1);
    out.vk_to_vd = d * d - std::int64_t{k} * k + 2 * (ell - 1) * (d - k) + 2 * (r - 1);
  }
  return out;
}

Rat broom_pi_access_closed_form(const BroomParams& params) {
  params.validate();
  const Integer d = params.d;
  const Integer l = params.ell;
  const Integer r = params.r;
  const Integer num = 4 * d * d * d + 12 * d * d * (l - 1) + d * (12 * l * (l - 2) + 24 * r - 13) +
                      3 * (-4 * l * l + l * (8 * r - 3) + r * (4 * r - 19) + 14);
  return Rat(num, Integer(6 * (params.n - 1)));
}

Rat broom_mixing_closed_form(const BroomParams& params) {
  params.validate();
  const Integer d = params.d;
  const Integer l = params.ell;
  const Integer r = params.r;
  const Integer num = 2 * d * d * d + 6 * d * d * (l + r - 2) + d * (12 * l * (r - 2) - 24 * r + 37) +
                      l * (33 - 24 * r) + 33 * r - 42;
  return Rat(num, Integer(6 * (params.n - 1)));
}

Rat balanced_mixing_closed_form(int n, int d) {
  if (d < 3 || d > n - 1) {
    throw Error(ErrorCode::BadParams, "need 3 <= d <= n - 1, got n=" + std::to_string(n) +
                                          ", d=" + std::to_string(d));
  }
  const Integer nn = n;
  const Integer dd = d;
  const Rat lead(Integer((dd - 2) * nn - dd + 5), Integer(2));
  const Integer cubic = (n - d) % 2 != 0 ? dd * dd * dd - 6 * dd * dd + 8 * dd
                                         : dd * dd * dd - 6 * dd * dd + 11 * dd - 6;
  return lead - Rat(cubic, Integer(6 * (nn - 1)));
}

Rat balanced_mixing_gap_formula(int n, int d) {
  const Integer nn = n;
  const Integer dd = d;
  const Integer tail = (n - d) % 2 == 1 ? dd * dd - 2 * dd : dd * dd - 4 * dd + 3;
  return Rat(nn - 1, Integer(2)) - Rat(tail, Integer(2 * (nn - 1)));
}

bool balanced_mixing_monotone_check(int n) {
  if (n < 5) throw Error(ErrorCode::BadParams, "monotonicity needs n >= 5, got " + std::to_string(n));
  Rat previous = balanced_mixing_closed_form(n, 3);
  for (int d = 4; d <= n - 1; ++d) {
    const Rat current = balanced_mixing_closed_form(n, d);
    const Rat gap = current - previous;
    if (gap <= 0) return false;
    const Rat predicted = balanced_mixing_gap_formula(n, d - 1);
    if (predicted != gap || predicted <= 0) return false;
    previous = current;
  }
  return true;
}

}  // namespace mixtree
