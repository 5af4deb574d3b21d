#include "cfa/subgroup.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cfa/errors.hpp"

namespace cfa {

Coordinates::Coordinates(PrimeField field, int precision, std::vector<std::string> names,
                         std::vector<int> valuations, bool exact)
    : field_(field),
      precision_(precision),
      names_(std::move(names)),
      valuations_(std::move(valuations)),
      exact_(exact) {
    if (precision_ < 0) throw BadParams("precision must be non-negative");
    if (names_.size() != valuations_.size()) throw BadParams("basis names and valuations differ in length");
    for (std::size_t k = 0; k < valuations_.size(); ++k) {
        if (valuations_[k] < 0 || valuations_[k] > precision_)
            throw BadParams("basis element '" + names_[k] + "' has valuation outside [0, precision]");
        if (k > 0 && valuations_[k] < valuations_[k - 1])
            throw BadParams("basis valuations must be sorted ascending");
    }
    level_start_.resize(static_cast<std::size_t>(precision_) + 3);
    for (int i = 0; i <= precision_ + 2; ++i) {
        auto it = std::lower_bound(valuations_.begin(), valuations_.end(), i);
        level_start_[static_cast<std::size_t>(i)] = static_cast<std::size_t>(it - valuations_.begin());
    }
}

std::size_t Coordinates::level_start(int i) const {
    if (i <= 0) return 0;
    if (i > precision_ + 1) return dim();
    return level_start_[static_cast<std::size_t>(i)];
}

long Coordinates::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<long>(it - names_.begin());
}

int Coordinates::valuation(std::span<const Scalar> v) const {
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) return valuations_[k];
    return precision_ + 1;
}

Vector Coordinates::homogeneous_part(std::span<const Scalar> v, int degree) const {
    Vector out(dim(), 0);
    for (std::size_t k = level_start(degree); k < level_start(degree + 1); ++k) out[k] = v[k];
    return out;
}

Vector Coordinates::unit_vector(std::size_t k) const {
    Vector v(dim(), 0);
    v[k] = 1;
    return v;
}

std::string Coordinates::format(std::span<const Scalar> v) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (v[k] != 1) os << v[k] << "*";
        os << names_[k];
    }
    if (first) os << "0";
    return os.str();
}

bool Coordinates::operator==(const Coordinates& other) const {
    return field_ == other.field_ && precision_ == other.precision_ && names_ == other.names_ &&
           valuations_ == other.valuations_ && exact_ == other.exact_;
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::zero(CoordinatesPtr coords) { return Subgroup(std::move(coords), {}, {}); }

Subgroup Subgroup::whole(CoordinatesPtr coords) { return level(std::move(coords), 0); }

Subgroup Subgroup::level(CoordinatesPtr coords, int i) {
    std::vector<Vector> rows;
    std::vector<std::size_t> pivots;
    for (std::size_t k = coords->level_start(i); k < coords->dim(); ++k) {
        rows.push_back(coords->unit_vector(k));
        pivots.push_back(k);
    }
    return Subgroup(std::move(coords), std::move(rows), std::move(pivots));
}

Subgroup Subgroup::span(CoordinatesPtr coords, const std::vector<Vector>& generators) {
    EchelonBasis basis(coords->field(), coords->dim());
    for (const auto& g : generators) {
        basis.insert(g);
        if (basis.full()) break;
    }
    return from_basis(std::move(coords), basis);
}

Subgroup Subgroup::from_basis(CoordinatesPtr coords, const EchelonBasis& basis) {
    if (basis.length() != coords->dim()) throw std::invalid_argument("Subgroup::from_basis: length mismatch");
    return Subgroup(std::move(coords), basis.canonical_rows(), basis.sorted_pivots());
}

Matrix Subgroup::matrix() const { return Matrix::from_rows(coords_->field(), coords_->dim(), rows_); }

Vector Subgroup::reduce(std::span<const Scalar> v) const {
    const PrimeField& f = coords_->field();
    Vector x(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Scalar a = x[pivots_[k]];
        if (a == 0) continue;
        Scalar factor = f.neg(a);
        const Vector& row = rows_[k];
        for (std::size_t c = pivots_[k]; c < x.size(); ++c)
            if (row[c] != 0) x[c] = f.fma(factor, row[c], x[c]);
    }
    return x;
}

bool Subgroup::contains(std::span<const Scalar> v) const {
    Vector r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Scalar s) { return s == 0; });
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
    if (dim() > other.dim()) return false;
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vector& r) { return other.contains(r); });
}

Subgroup Subgroup::operator+(const Subgroup& other) const {
    EchelonBasis basis(coords_->field(), coords_->dim());
    for (const auto& r : rows_) basis.insert(r);
    for (const auto& r : other.rows_) {
        if (basis.full()) break;
        basis.insert(r);
    }
    return from_basis(coords_, basis);
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
    // Zassenhaus: rows (a | a) and (b | 0); the echelon rows (0 | w) span A ∩ B.
    const std::size_t n = coords_->dim();
    EchelonBasis basis(coords_->field(), 2 * n);
    Vector buf(2 * n);
    for (const auto& a : rows_) {
        std::copy(a.begin(), a.end(), buf.begin());
        std::copy(a.begin(), a.end(), buf.begin() + static_cast<long>(n));
        basis.insert(buf);
    }
    for (const auto& b : other.rows_) {
        std::copy(b.begin(), b.end(), buf.begin());
        std::fill(buf.begin() + static_cast<long>(n), buf.end(), 0);
        basis.insert(buf);
    }
    std::vector<Vector> gens;
    for (const auto& row : basis.canonical_rows()) {
        if (std::all_of(row.begin(), row.begin() + static_cast<long>(n), [](Scalar s) { return s == 0; }))
            gens.emplace_back(row.begin() + static_cast<long>(n), row.end());
    }
    return span(coords_, gens);
}

Vector Subgroup::coordinates_in_basis(std::span<const Scalar> v) const {
    Vector c(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
    return c;
}

std::vector<std::size_t> Subgroup::profile() const {
    const int top = coords_->precision() + 1;
    std::vector<std::size_t> prof(static_cast<std::size_t>(top) + 1, 0);
    for (int i = 0; i <= top; ++i) {
        const std::size_t start = coords_->level_start(i);
        prof[static_cast<std::size_t>(i)] = static_cast<std::size_t>(
            std::count_if(pivots_.begin(), pivots_.end(), [&](std::size_t p) { return p >= start; }));
    }
    return prof;
}

}  // namespace cfa
