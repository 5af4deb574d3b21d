#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cfa/algebra.hpp"

namespace cfa {

/// A filtered R-space M / F^{P+1}(M): an F_p-space with an adapted basis and
/// a bilinear, unital action of the truncated ring. The space's precision P
/// is the largest degree its gradation models faithfully; it may differ from
/// the ring's precision (shifted or re-indexed filtrations).
class FilteredSpace {
public:
    FilteredSpace(AlgebraPtr ring, CoordinatesPtr coords, BilinearTable action);

    /// R acting on itself by left multiplication.
    static FilteredSpace regular(AlgebraPtr ring);

    const TruncatedFilteredAlgebra& ring() const noexcept { return *ring_; }
    const AlgebraPtr& ring_ptr() const noexcept { return ring_; }
    const CoordinatesPtr& coords() const noexcept { return coords_; }
    const PrimeField& field() const noexcept { return coords_->field(); }
    std::size_t dim() const noexcept { return coords_->dim(); }
    int precision() const noexcept { return coords_->precision(); }
    const BilinearTable& action() const noexcept { return action_; }

    /// r . m
    Vector act(std::span<const Scalar> r, std::span<const Scalar> m) const {
        return action_.apply(field(), r, m);
    }
    /// (ring basis element i) . m
    Vector act_basis(std::size_t i, std::span<const Scalar> m) const {
        return action_.apply_left_basis(field(), i, m);
    }
    int valuation(std::span<const Scalar> m) const { return coords_->valuation(m); }

private:
    AlgebraPtr ring_;
    CoordinatesPtr coords_;
    BilinearTable action_;
};

/// Unitality, F^i(R) F^j(M) ⊆ F^{i+j}(M) on basis pairs, and that every
/// F^i(M) is an R-subspace.
ValidationReport validate_space(const FilteredSpace& space);

/// An R-subspace L ⊆ M as a filtered space in its own right.
struct SubspaceModel {
    FilteredSpace space;
    Subgroup in_ambient;
    /// basis element k of `space` expressed in ambient coordinates
    std::vector<Vector> embedding;

    Vector to_ambient(std::span<const Scalar> v) const;
    /// Coordinates of an ambient member of L.
    Vector from_ambient(std::span<const Scalar> v) const;
};

/// M / S with the quotient filtration (F^i(M) + S) / S.
struct QuotientModel {
    FilteredSpace space;
    Subgroup kernel;
    /// ambient coordinate index behind each quotient basis element
    std::vector<std::size_t> kept;

    Vector project(std::span<const Scalar> ambient) const;
    Vector lift(std::span<const Scalar> v) const;
};

/// Same space, new filtration, with the change of basis both ways.
struct RefilteredModel {
    FilteredSpace space;
    Matrix to_old;  ///< columns: new basis elements in old coordinates
    Matrix to_new;

    Vector from_old(std::span<const Scalar> v) const { return to_new.apply(v); }
    Vector to_old_coords(std::span<const Scalar> v) const { return to_old.apply(v); }
};

/// Induced filtration F^i(L) = L ∩ F^i(M). Throws NotSubspace unless S is
/// closed under the action.
SubspaceModel induced_subspace(const FilteredSpace& space, const Subgroup& sub);

/// Throws NotSubspace unless S is closed under the action.
QuotientModel quotient_space(const FilteredSpace& space, const Subgroup& sub);

/// Re-filters M by a decreasing chain G^0 = M ⊇ G^1 ⊇ ... with
/// chain.size() == precision + 2 and the last entry zero. Compatibility
/// with the ring filtration is not checked here (see validate_space).
RefilteredModel refilter(const FilteredSpace& space, const std::vector<Subgroup>& chain, int precision);

/// Valuation tags shifted by s (s may be negative if every tag stays >= 0).
FilteredSpace shifted(const FilteredSpace& space, int s);

/// The stored filtration as a chain F^0(M), ..., F^{P+1}(M).
std::vector<Subgroup> filtration_chain(const FilteredSpace& space);

}  // namespace cfa
