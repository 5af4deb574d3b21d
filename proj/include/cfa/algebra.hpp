#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfa/subgroup.hpp"

namespace cfa {

struct Term {
    std::uint32_t index;
    Scalar coeff;
    bool operator==(const Term&) const = default;
};
using SparseVector = std::vector<Term>;

SparseVector to_sparse(std::span<const Scalar> v);

/// Structure constants of a bilinear map U x V -> W on basis elements.
class BilinearTable {
public:
    BilinearTable(std::size_t left_dim, std::size_t right_dim, std::size_t out_dim)
        : left_(left_dim), right_(right_dim), out_(out_dim), entries_(left_dim * right_dim) {}

    std::size_t left_dim() const noexcept { return left_; }
    std::size_t right_dim() const noexcept { return right_; }
    std::size_t out_dim() const noexcept { return out_; }

    const SparseVector& at(std::size_t i, std::size_t j) const { return entries_[i * right_ + j]; }
    void set(std::size_t i, std::size_t j, SparseVector v) { entries_[i * right_ + j] = std::move(v); }

    /// sum_{i,j} a_i b_j (e_i . f_j)
    Vector apply(const PrimeField& field, std::span<const Scalar> a, std::span<const Scalar> b) const;
    /// e_i . b
    Vector apply_left_basis(const PrimeField& field, std::size_t i, std::span<const Scalar> b) const;

    bool operator==(const BilinearTable&) const = default;

private:
    std::size_t left_;
    std::size_t right_;
    std::size_t out_;
    std::vector<SparseVector> entries_;
};

/// R / F^{N+1}(R) for a complete filtered ring R, given by a
/// valuation-adapted basis and structure constants over F_p. No
/// associativity or commutativity is assumed.
class TruncatedFilteredAlgebra {
public:
    TruncatedFilteredAlgebra(CoordinatesPtr coords, std::size_t unit, BilinearTable mul);

    const CoordinatesPtr& coords() const noexcept { return coords_; }
    const PrimeField& field() const noexcept { return coords_->field(); }
    int precision() const noexcept { return coords_->precision(); }
    std::size_t dim() const noexcept { return coords_->dim(); }
    std::size_t unit_index() const noexcept { return unit_; }
    Vector one() const { return coords_->unit_vector(unit_); }
    const BilinearTable& table() const noexcept { return mul_; }

    Vector multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
        return mul_.apply(field(), a, b);
    }
    const SparseVector& basis_product(std::size_t i, std::size_t j) const { return mul_.at(i, j); }
    int valuation(std::span<const Scalar> v) const { return coords_->valuation(v); }

private:
    CoordinatesPtr coords_;
    std::size_t unit_;
    BilinearTable mul_;
};

using AlgebraPtr = std::shared_ptr<const TruncatedFilteredAlgebra>;

/// Collects a presentation by basis names in any order and produces an
/// algebra whose basis is sorted by valuation. Products with the declared
/// unit default to the unit laws; all other unmentioned products are zero.
class AlgebraBuilder {
public:
    AlgebraBuilder(PrimeField field, int precision, bool exact = false)
        : field_(field), precision_(precision), exact_(exact) {}

    AlgebraBuilder& basis(const std::string& name, int valuation);
    AlgebraBuilder& unit(const std::string& name);
    AlgebraBuilder& product(const std::string& left, const std::string& right,
                            std::vector<std::pair<std::string, long long>> terms);

    /// Throws BadParams on unknown names, duplicates or a missing unit.
    AlgebraPtr build() const;

private:
    struct ProductLine {
        std::string left, right;
        std::vector<std::pair<std::string, long long>> terms;
    };
    PrimeField field_;
    int precision_;
    bool exact_;
    std::vector<std::pair<std::string, int>> basis_;
    std::string unit_;
    std::vector<ProductLine> products_;
};

/// Sorts (name, valuation) pairs stably by valuation; returns the sorted
/// order as indices into the input.
std::vector<std::size_t> valuation_order(const std::vector<std::pair<std::string, int>>& basis);

struct AxiomCheck {
    std::string name;
    bool passed = true;
    std::string witness;  ///< empty when passed
};

struct ValidationReport {
    int precision = 0;
    std::vector<AxiomCheck> checks;
    bool all_passed() const;
    const AxiomCheck* find(const std::string& name) const;
};

/// Checks the type invariants of a truncated complete local-filtered ring:
/// unique valuation-0 basis element which is the unit, unit laws,
/// F^i F^j ⊆ F^{i+j} on basis pairs, and that each F^i is a two-sided
/// ideal. Associativity is deliberately not checked. The graded conditions
/// live in check_clf_graded.
ValidationReport validate(const TruncatedFilteredAlgebra& alg);

/// First basis triple (a, b, c) with (ab)c != a(bc), formatted as
/// "(a*b)*c != a*(b*c)"; nullopt when the truncation is associative.
std::optional<std::string> associativity_witness(const TruncatedFilteredAlgebra& alg);

}  // namespace cfa
