#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfa/prime_field.hpp"

namespace cfa {

/// Dense row-major matrix over F_p.
class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    /// All rows must have length `cols`.
    static Matrix from_rows(PrimeField field, std::size_t cols, const std::vector<Vector>& rows);
    static Matrix identity(PrimeField field, std::size_t n);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    Vector column(std::size_t c) const;

    /// this * x
    Vector apply(std::span<const Scalar> x) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix transpose() const;

    bool operator==(const Matrix& other) const {
        return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
               data_ == other.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

struct RowEchelon {
    Matrix reduced;                   ///< same shape as the input; zero rows at the bottom
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  ///< strictly increasing pivot columns
};

/// Canonical reduced row-echelon form (leftmost pivot, first usable row).
/// Uses a packed-bit elimination when p = 2.
RowEchelon rref(const Matrix& m);

/// Some x with a x = b; free variables are set to zero. nullopt when b is
/// not in the column space.
std::optional<Vector> solve(const Matrix& a, std::span<const Scalar> b);

/// Canonical null-space basis: one vector per non-pivot column c, with a 1
/// at c and zeros at every other non-pivot column.
std::vector<Vector> kernel(const Matrix& a);

/// Inverse of a square matrix, nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

/// Incrementally maintained row space of vectors of fixed length. Rows are
/// kept in semi-echelon form, pivots normalised to 1. Packed bit rows when
/// p = 2.
class EchelonBasis {
public:
    EchelonBasis(PrimeField field, std::size_t length);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t length() const noexcept { return length_; }
    std::size_t rank() const noexcept { return pivots_.size(); }
    bool full() const noexcept { return rank() == length_; }

    /// Adds v to the span. Returns true iff the rank increased.
    bool insert(std::span<const Scalar> v);
    bool contains(std::span<const Scalar> v) const;
    /// v minus its projection onto pivot columns (zero iff v is in the span).
    Vector reduce(std::span<const Scalar> v) const;

    /// Canonical RREF rows, sorted by pivot.
    std::vector<Vector> canonical_rows() const;
    std::vector<std::size_t> sorted_pivots() const;

private:
    using Word = std::uint64_t;
    bool binary() const noexcept { return field_.modulus() == 2; }
    std::vector<Word> pack(std::span<const Scalar> v) const;
    Vector unpack(const std::vector<Word>& w) const;
    /// Reduces in place; returns the first nonzero column or length_.
    std::size_t reduce_in_place(Vector& v) const;
    std::size_t reduce_in_place(std::vector<Word>& w) const;

    PrimeField field_;
    std::size_t length_;
    std::size_t words_;
    std::vector<std::size_t> pivots_;        // insertion order
    std::vector<std::int64_t> pivot_row_;    // column -> row index or -1
    std::vector<Vector> rows_;               // p > 2
    std::vector<std::vector<Word>> bits_;    // p = 2
};

}  // namespace cfa
