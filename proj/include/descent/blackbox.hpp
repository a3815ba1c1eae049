#pragma once

#include "descent/theta.hpp"

namespace descent {

// Explicit trivialization of a K-algebra promised isomorphic to Mat_n(K):
// randomized idempotent refinement down to a rank-one idempotent, then the
// left-regular action on the column module. Deterministic given the seed;
// the returned isomorphism is always fully verified.
SplitIsomorphism trivialize(const AlgebraK& A, u64 seed);

}  // namespace descent
