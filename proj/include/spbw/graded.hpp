#pragma once

// The associated quasi-commutative extension A^sigma (same sigma and c data,
// derivations and tails dropped, variables renamed z1..zn), the top-component
// map realizing Gr(A) inside it, and the iterated one-variable tower
// decomposition of a quasi-commutative extension.

#include <utility>
#include <vector>

#include "spbw/engine.hpp"

namespace spbw {

// one layer of the tower R[z_1; theta_1][z_2; theta_2]...: theta_j acts as
// sigma_j on the ring and scales each earlier variable by c_{i,j}
struct TowerStep {
  size_t index;
  EndoSpec theta_on_ring;
  std::map<size_t, RingElem> theta_on_vars;  // i < index -> c_{i,j}
  // present when the step is certified bijective: z_i -> sigma_j^{-1}(c_{i,j}^{-1}) z_i
  std::optional<std::map<size_t, RingElem>> theta_on_vars_inverse;
};

// memoized per presentation, so top components of the same algebra compare
// and multiply against each other
PresPtr assoc_algebra(const PresPtr& p);

// (m, degree-m part of f re-expressed in assoc_algebra(f.pres())); f != 0
std::pair<int64_t, SkewPoly> top_component(const SkewPoly& f);

// whether gr(a) gr(b) = gr(ab) for homogeneous a, b: the A^sigma product of
// the top components against the top of mul(a, b), with a degree drop in the
// product meaning the graded product must vanish
bool check_gr_mult(const PresPtr& p, const SkewPoly& a, const SkewPoly& b);

// quasi-commutative flat presentations only
std::vector<TowerStep> tower(const PresPtr& p);

}  // namespace spbw
