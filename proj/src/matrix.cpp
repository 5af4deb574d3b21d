#include "cfa/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cfa {

Matrix Matrix::from_rows(PrimeField field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return Vector(s.begin(), s.end());
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vector Matrix::apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const Scalar* row_ptr = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (row_ptr[c] != 0 && x[c] != 0) {
                acc = (acc + static_cast<std::uint64_t>(row_ptr[c]) * x[c]) % field_.modulus();
            }
        }
        out[r] = static_cast<Scalar>(acc);
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            Scalar a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                if (rhs(k, c) != 0) out(r, c) = field_.fma(a, rhs(k, c), out(r, c));
            }
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

namespace {

RowEchelon rref_generic(const Matrix& m) {
    const PrimeField& f = m.field();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
        std::size_t pr = lead_row;
        while (pr < a.rows() && a(pr, c) == 0) ++pr;
        if (pr == a.rows()) continue;
        if (pr != lead_row) {
            auto x = a.row(pr);
            auto y = a.row(lead_row);
            std::swap_ranges(x.begin(), x.end(), y.begin());
        }
        Scalar inv = f.inv(a(lead_row, c));
        for (std::size_t k = c; k < a.cols(); ++k) a(lead_row, k) = f.mul(a(lead_row, k), inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row || a(r, c) == 0) continue;
            Scalar factor = f.neg(a(r, c));
            for (std::size_t k = c; k < a.cols(); ++k) {
                if (a(lead_row, k) != 0) a(r, k) = f.fma(factor, a(lead_row, k), a(r, k));
            }
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return RowEchelon{std::move(a), pivots.size(), std::move(pivots)};
}

RowEchelon rref_binary(const Matrix& m) {
    using Word = std::uint64_t;
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<Word>> rows(m.rows(), std::vector<Word>(words, 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) & 1u) rows[r][c / 64] |= Word{1} << (c % 64);

    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        const std::size_t w = c / 64;
        const Word bit = Word{1} << (c % 64);
        std::size_t pr = lead_row;
        while (pr < m.rows() && !(rows[pr][w] & bit)) ++pr;
        if (pr == m.rows()) continue;
        std::swap(rows[pr], rows[lead_row]);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != lead_row && (rows[r][w] & bit)) {
                for (std::size_t k = w; k < words; ++k) rows[r][k] ^= rows[lead_row][k];
            }
        }
        pivots.push_back(c);
        ++lead_row;
    }
    Matrix out(m.field(), m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = (rows[r][c / 64] >> (c % 64)) & 1u;
    return RowEchelon{std::move(out), pivots.size(), std::move(pivots)};
}

}  // namespace

RowEchelon rref(const Matrix& m) {
    return m.field().modulus() == 2 ? rref_binary(m) : rref_generic(m);
}

std::optional<Vector> solve(const Matrix& a, std::span<const Scalar> b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: a.rows != b.length");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    RowEchelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    Vector x(a.cols(), 0);
    for (std::size_t i = 0; i < e.rank; ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
    return x;
}

std::vector<Vector> kernel(const Matrix& a) {
    RowEchelon e = rref(a);
    const PrimeField& f = a.field();
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vector v(a.cols(), 0);
        v[c] = 1;
        for (std::size_t i = 0; i < e.rank; ++i) v[e.pivots[i]] = f.neg(e.reduced(i, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
    const std::size_t n = a.rows();
    Matrix aug(a.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    RowEchelon e = rref(aug);
    if (e.rank < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(a.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(PrimeField field, std::size_t length)
    : field_(field), length_(length), words_((length + 63) / 64), pivot_row_(length, -1) {}

std::vector<EchelonBasis::Word> EchelonBasis::pack(std::span<const Scalar> v) const {
    std::vector<Word> w(words_, 0);
    for (std::size_t c = 0; c < length_; ++c)
        if (v[c] & 1u) w[c / 64] |= Word{1} << (c % 64);
    return w;
}

Vector EchelonBasis::unpack(const std::vector<Word>& w) const {
    Vector v(length_, 0);
    for (std::size_t c = 0; c < length_; ++c) v[c] = (w[c / 64] >> (c % 64)) & 1u;
    return v;
}

std::size_t EchelonBasis::reduce_in_place(Vector& v) const {
    std::size_t first = length_;
    for (std::size_t c = 0; c < length_; ++c) {
        if (v[c] == 0) continue;
        std::int64_t r = pivot_row_[c];
        if (r < 0) {
            if (first == length_) first = c;
            continue;
        }
        const Vector& row = rows_[static_cast<std::size_t>(r)];
        Scalar factor = field_.neg(v[c]);
        for (std::size_t k = c; k < length_; ++k) {
            if (row[k] != 0) v[k] = field_.fma(factor, row[k], v[k]);
        }
    }
    return first;
}

std::size_t EchelonBasis::reduce_in_place(std::vector<Word>& w) const {
    std::size_t first = length_;
    for (std::size_t wi = 0; wi < words_; ++wi) {
        Word pending = w[wi];
        while (pending != 0) {
            const std::size_t bit = static_cast<std::size_t>(std::countr_zero(pending));
            const std::size_t c = wi * 64 + bit;
            pending &= pending - 1;
            std::int64_t r = pivot_row_[c];
            if (r < 0) {
                if (first == length_) first = c;
                continue;
            }
            const auto& row = bits_[static_cast<std::size_t>(r)];
            for (std::size_t k = wi; k < words_; ++k) w[k] ^= row[k];
            // bits above c in the current word may have changed
            pending = w[wi] & ~((bit == 63) ? ~Word{0} : ((Word{1} << (bit + 1)) - 1));
        }
    }
    return first;
}

bool EchelonBasis::insert(std::span<const Scalar> v) {
    if (v.size() != length_) throw std::invalid_argument("EchelonBasis::insert: length mismatch");
    if (full()) return false;
    if (binary()) {
        auto w = pack(v);
        std::size_t first = reduce_in_place(w);
        if (first == length_) return false;
        pivot_row_[first] = static_cast<std::int64_t>(bits_.size());
        bits_.push_back(std::move(w));
        pivots_.push_back(first);
        return true;
    }
    Vector x(v.begin(), v.end());
    for (auto& s : x) s %= field_.modulus();
    std::size_t first = reduce_in_place(x);
    if (first == length_) return false;
    Scalar inv = field_.inv(x[first]);
    for (std::size_t k = first; k < length_; ++k) x[k] = field_.mul(x[k], inv);
    pivot_row_[first] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(x));
    pivots_.push_back(first);
    return true;
}

Vector EchelonBasis::reduce(std::span<const Scalar> v) const {
    if (v.size() != length_) throw std::invalid_argument("EchelonBasis::reduce: length mismatch");
    if (binary()) {
        auto w = pack(v);
        reduce_in_place(w);
        return unpack(w);
    }
    Vector x(v.begin(), v.end());
    for (auto& s : x) s %= field_.modulus();
    reduce_in_place(x);
    return x;
}

bool EchelonBasis::contains(std::span<const Scalar> v) const {
    if (binary()) {
        auto w = pack(v);
        return reduce_in_place(w) == length_;
    }
    Vector x(v.begin(), v.end());
    for (auto& s : x) s %= field_.modulus();
    return reduce_in_place(x) == length_;
}

std::vector<std::size_t> EchelonBasis::sorted_pivots() const {
    auto p = pivots_;
    std::sort(p.begin(), p.end());
    return p;
}

std::vector<Vector> EchelonBasis::canonical_rows() const {
    std::vector<std::size_t> order(pivots_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });

    if (binary()) {
        std::vector<std::vector<Word>> rows;
        for (auto i : order) rows.push_back(bits_[i]);
        // back substitution: clear each pivot column from the rows above it
        for (std::size_t i = rows.size(); i-- > 0;) {
            const std::size_t c = pivots_[order[i]];
            const Word bit = Word{1} << (c % 64);
            for (std::size_t j = 0; j < i; ++j) {
                if (rows[j][c / 64] & bit)
                    for (std::size_t k = c / 64; k < words_; ++k) rows[j][k] ^= rows[i][k];
            }
        }
        std::vector<Vector> out;
        for (auto& r : rows) out.push_back(unpack(r));
        return out;
    }
    std::vector<Vector> rows;
    for (auto i : order) rows.push_back(rows_[i]);
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::size_t c = pivots_[order[i]];
        for (std::size_t j = 0; j < i; ++j) {
            Scalar a = rows[j][c];
            if (a == 0) continue;
            Scalar factor = field_.neg(a);
            for (std::size_t k = c; k < length_; ++k)
                if (rows[i][k] != 0) rows[j][k] = field_.fma(factor, rows[i][k], rows[j][k]);
        }
    }
    return rows;
}

}  // namespace cfa
