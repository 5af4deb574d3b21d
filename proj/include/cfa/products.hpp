#pragma once

#include <vector>

#include "cfa/space.hpp"

namespace cfa {

/// A·Δ: the F_p-span of all products a·d with a a basis row of A (a subgroup
/// of the ring) and d a basis row of Δ (a subgroup of the space).
Subgroup product(const FilteredSpace& space, const Subgroup& ring_part, const Subgroup& space_part);
/// A·Δ for an explicit element list Δ.
Subgroup product(const FilteredSpace& space, const Subgroup& ring_part, const std::vector<Vector>& elements);
/// A·B inside the ring (left factor from A).
Subgroup product(const AlgebraPtr& ring, const Subgroup& a, const Subgroup& b);

/// 𝔪^n, left-nested: 𝔪^0 = R, 𝔪^{n+1} = 𝔪(𝔪^n).
Subgroup power_ideal(const AlgebraPtr& ring, int n);

/// RΔ
Subgroup span(const FilteredSpace& space, const std::vector<Vector>& elements);

struct GeneratedSubspace {
    Subgroup subspace;
    int iterations = 0;  ///< applications of S <- S + R·S after S = RΔ, the last one confirming stability
};

/// Smallest R-subspace containing Δ: S <- S + R·S from S = RΔ until stable.
GeneratedSubspace generated_subspace(const FilteredSpace& space, const std::vector<Vector>& elements);

}  // namespace cfa
