#pragma once

#include <cstdint>

#include "mixtree/rational.hpp"
#include "mixtree/tree.hpp"

namespace mixtree {

/// Double broom shape: a path v_1..v_{d-1} with `ell` leaves on v_1 and `r`
/// leaves on v_{d-1}, one of each labelled v_0 and v_d. Normalized by
/// ell + r = n - d + 1.
struct BroomParams {
  int n = 0;
  int d = 0;
  int ell = 0;
  int r = 0;

  /// Throws BadParams unless d >= 2, ell >= 1, r >= 1, ell + r = n - d + 1.
  void validate() const;

  friend bool operator==(const BroomParams&, const BroomParams&) = default;
};

struct LabeledBroom {
  Tree tree;
  VertexPath spine;  ///< v_0..v_d
  BroomParams params;
};

/// Spine v_0..v_d gets ids 0..d; the remaining left leaves follow, then the
/// right leaves.
LabeledBroom build_double_broom(const BroomParams& params);

/// ell = ceil((n-d+1)/2), r = floor((n-d+1)/2), so v_0 sits on the heavier side.
BroomParams balanced_params(int n, int d);
LabeledBroom balanced_broom(int n, int d);

/// The three hitting times along the spine of a double broom.
struct BroomHitting {
  std::int64_t v0_to_vk = 0;  ///< H(v_0, v_k)
  std::int64_t v0_to_vd = 0;  ///< H(v_0, v_d)
  std::int64_t vk_to_vd = 0;  ///< H(v_k, v_d)
};

/// Closed forms for 1 <= k <= d (BadIndex otherwise). At k = d the first
/// entry is H(v_0, v_d) and the last is 0.
/// H(v_0, v_k) = k^2 + 2(ell-1)(k-1): the sum of the single-edge law along
/// the spine, and the only form consistent with H(v_k,v_d) = H(v_0,v_d) - H(v_0,v_k).
BroomHitting broom_hitting_closed_form(const BroomParams& params, int k);

/// H(pi, v_d) as a cubic in d over 6(n-1).
Rat broom_pi_access_closed_form(const BroomParams& params);

/// T_mix of the double broom, a cubic in d over 6(n-1).
Rat broom_mixing_closed_form(const BroomParams& params);

/// T_mix(D_{n,d}), dispatched on the parity of n - d. Needs 3 <= d <= n - 1.
Rat balanced_mixing_closed_form(int n, int d);

/// Consecutive gap T_mix(D_{n,d+1}) - T_mix(D_{n,d}) in its simplified form:
/// (n-1)/2 - (d^2-2d)/(2(n-1)) when n-d is odd (an even leaf count at d),
/// and (n-1)/2 - (d^2-4d+3)/(2(n-1)) = (n^2-2n-d^2+4d-2)/(2n-2) when n-d
/// is even.
Rat balanced_mixing_gap_formula(int n, int d);

/// True iff T_mix(D_{n,d}) strictly increases over d = 3..n-1 and every
/// consecutive gap equals balanced_mixing_gap_formula and is positive.
/// BadParams for n < 5.
bool balanced_mixing_monotone_check(int n);

}  // namespace mixtree
