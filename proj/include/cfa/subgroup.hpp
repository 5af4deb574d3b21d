#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cfa/matrix.hpp"

namespace cfa {

/// A finite-dimensional F_p-space with a valuation-adapted basis: basis
/// element k carries a tag v_k, and F^i is the span of the basis elements
/// with tag >= i. Tags are sorted ascending so every F^i is a trailing block
/// of coordinates. `precision` is the largest degree the truncation models
/// faithfully; F^{precision+1} = 0.
class Coordinates {
public:
    Coordinates(PrimeField field, int precision, std::vector<std::string> names,
                std::vector<int> valuations, bool exact = false);

    const PrimeField& field() const noexcept { return field_; }
    int precision() const noexcept { return precision_; }
    /// True when the modelled object genuinely has F^{precision+1} = 0,
    /// rather than being a truncation of an infinite tower.
    bool exact() const noexcept { return exact_; }
    std::size_t dim() const noexcept { return valuations_.size(); }

    const std::vector<int>& valuations() const noexcept { return valuations_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    int valuation_of_basis(std::size_t k) const { return valuations_[k]; }
    /// Index of the first basis element with tag >= i (dim() if none).
    std::size_t level_start(int i) const;
    /// dim F^i / F^{i+1}
    std::size_t graded_dim(int i) const { return level_start(i + 1) - level_start(i); }
    /// Index of a basis name, or -1.
    long index_of(const std::string& name) const;

    /// Smallest tag among nonzero coordinates; precision+1 encodes infinity.
    int valuation(std::span<const Scalar> v) const;
    /// Keeps only the coordinates of tag exactly `degree`.
    Vector homogeneous_part(std::span<const Scalar> v, int degree) const;

    Vector zero() const { return Vector(dim(), 0); }
    Vector unit_vector(std::size_t k) const;

    std::string format(std::span<const Scalar> v) const;

    bool operator==(const Coordinates& other) const;

private:
    PrimeField field_;
    int precision_;
    std::vector<std::string> names_;
    std::vector<int> valuations_;
    std::vector<std::size_t> level_start_;
    bool exact_;
};

using CoordinatesPtr = std::shared_ptr<const Coordinates>;

/// An F_p-subspace of a Coordinates space, stored as its canonical reduced
/// row-echelon basis, so equal subgroups have equal representations.
class Subgroup {
public:
    static Subgroup zero(CoordinatesPtr coords);
    static Subgroup whole(CoordinatesPtr coords);
    /// F^i of the ambient filtration.
    static Subgroup level(CoordinatesPtr coords, int i);
    static Subgroup span(CoordinatesPtr coords, const std::vector<Vector>& generators);
    static Subgroup from_basis(CoordinatesPtr coords, const EchelonBasis& basis);

    const CoordinatesPtr& coordinates() const noexcept { return coords_; }
    std::size_t dim() const noexcept { return rows_.size(); }
    const std::vector<Vector>& basis() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    /// Valuation of basis row k (the tag of its pivot column).
    int row_valuation(std::size_t k) const { return coords_->valuation_of_basis(pivots_[k]); }
    Matrix matrix() const;

    bool contains(std::span<const Scalar> v) const;
    bool is_subset_of(const Subgroup& other) const;
    Subgroup operator+(const Subgroup& other) const;
    Subgroup intersect(const Subgroup& other) const;
    /// Coordinates of v (assumed a member) in the row basis.
    Vector coordinates_in_basis(std::span<const Scalar> v) const;
    /// v reduced modulo the subgroup (zero on every pivot column).
    Vector reduce(std::span<const Scalar> v) const;

    /// profile[i] = dim(S ∩ F^i), for i = 0 .. precision+1.
    std::vector<std::size_t> profile() const;

    bool operator==(const Subgroup& other) const { return pivots_ == other.pivots_ && rows_ == other.rows_; }

private:
    Subgroup(CoordinatesPtr coords, std::vector<Vector> rows, std::vector<std::size_t> pivots)
        : coords_(std::move(coords)), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

    CoordinatesPtr coords_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace cfa
