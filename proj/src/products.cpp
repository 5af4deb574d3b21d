#include "cfa/products.hpp"

namespace cfa {

namespace {

Subgroup product_rows(const FilteredSpace& space, const std::vector<Vector>& left,
                      const std::vector<Vector>& right) {
    EchelonBasis acc(space.field(), space.dim());
    for (const auto& a : left) {
        for (const auto& d : right) {
            acc.insert(space.act(a, d));
            if (acc.full()) return Subgroup::from_basis(space.coords(), acc);
        }
    }
    return Subgroup::from_basis(space.coords(), acc);
}

}  // namespace

Subgroup product(const FilteredSpace& space, const Subgroup& ring_part, const Subgroup& space_part) {
    return product_rows(space, ring_part.basis(), space_part.basis());
}

Subgroup product(const FilteredSpace& space, const Subgroup& ring_part, const std::vector<Vector>& elements) {
    return product_rows(space, ring_part.basis(), elements);
}

Subgroup product(const AlgebraPtr& ring, const Subgroup& a, const Subgroup& b) {
    return product(FilteredSpace::regular(ring), a, b);
}

Subgroup power_ideal(const AlgebraPtr& ring, int n) {
    const auto regular = FilteredSpace::regular(ring);
    const Subgroup m = Subgroup::level(ring->coords(), 1);
    Subgroup acc = Subgroup::whole(ring->coords());
    for (int k = 0; k < n; ++k) {
        acc = product(regular, m, acc);
        if (acc.dim() == 0) break;
    }
    return acc;
}

Subgroup span(const FilteredSpace& space, const std::vector<Vector>& elements) {
    return product(space, Subgroup::whole(space.ring().coords()), elements);
}

GeneratedSubspace generated_subspace(const FilteredSpace& space, const std::vector<Vector>& elements) {
    const Subgroup whole_ring = Subgroup::whole(space.ring().coords());
    Subgroup s = span(space, elements);
    int iterations = 0;
    for (;;) {
        Subgroup next = s + product(space, whole_ring, s);
        ++iterations;
        if (next.dim() == s.dim()) break;
        s = std::move(next);
    }
    return {std::move(s), iterations};
}

}  // namespace cfa
