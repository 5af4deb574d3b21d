#include "cfa/graded.hpp"

#include <algorithm>

#include "cfa/errors.hpp"

namespace cfa {

std::vector<long long> GradedView::h() const {
    std::vector<long long> out;
    for (int i = 0; i <= precision(); ++i) out.push_back(static_cast<long long>(component_dim(i)));
    return out;
}

Vector GradedView::product(const Vector& r, int a, const Vector& m, int b) const {
    return space_.coords()->homogeneous_part(space_.act(r, m), a + b);
}

Vector GradedView::basis_product(std::size_t ring_index, std::size_t space_index) const {
    const int a = space_.ring().coords()->valuation_of_basis(ring_index);
    const int b = space_.coords()->valuation_of_basis(space_index);
    return space_.coords()->homogeneous_part(space_.act_basis(ring_index, space_.coords()->unit_vector(space_index)),
                                             a + b);
}

// ---------------------------------------------------------------------------

ValidationReport check_clf_graded(const AlgebraPtr& ring) {
    const GradedView view = GradedView::of_ring(ring);
    const Coordinates& co = *ring->coords();
    const PrimeField& f = ring->field();
    const int N = ring->precision();
    const std::size_t n = ring->dim();
    ValidationReport report;
    report.precision = N;

    std::vector<Vector> gp(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (co.valuation_of_basis(i) + co.valuation_of_basis(j) <= N) gp[i * n + j] = view.basis_product(i, j);

    AxiomCheck comm{"graded-commutativity", true, {}};
    for (std::size_t i = 0; i < n && comm.passed; ++i) {
        for (std::size_t j = i + 1; j < n && comm.passed; ++j) {
            if (co.valuation_of_basis(i) + co.valuation_of_basis(j) > N) continue;
            if (gp[i * n + j] != gp[j * n + i]) {
                comm.passed = false;
                comm.witness = "σ(" + co.names()[i] + ")σ(" + co.names()[j] + ") != σ(" + co.names()[j] + ")σ(" +
                               co.names()[i] + ")";
            }
        }
    }
    report.checks.push_back(comm);

    AxiomCheck assoc{"graded-associativity", true, {}};
    for (std::size_t i = 0; i < n && assoc.passed; ++i) {
        const int vi = co.valuation_of_basis(i);
        for (std::size_t j = 0; j < n && assoc.passed; ++j) {
            const int vj = co.valuation_of_basis(j);
            if (vi + vj > N) break;
            const Vector& ij = gp[i * n + j];
            for (std::size_t k = 0; k < n && assoc.passed; ++k) {
                const int vk = co.valuation_of_basis(k);
                if (vi + vj + vk > N) break;
                const Vector& jk = gp[j * n + k];
                Vector left = view.product(ij, vi + vj, co.unit_vector(k), vk);
                Vector right = view.product(co.unit_vector(i), vi, jk, vj + vk);
                if (left != right) {
                    assoc.passed = false;
                    assoc.witness = "(" + co.names()[i] + ", " + co.names()[j] + ", " + co.names()[k] + ")";
                }
            }
        }
    }
    report.checks.push_back(assoc);

    AxiomCheck gen{"degree-one-generation", true, {}};
    for (int d = 1; d + 1 <= N && gen.passed; ++d) {
        EchelonBasis acc(f, n);
        for (std::size_t i = co.level_start(1); i < co.level_start(2); ++i)
            for (std::size_t j = co.level_start(d); j < co.level_start(d + 1); ++j) acc.insert(gp[i * n + j]);
        if (acc.rank() != co.graded_dim(d + 1)) {
            gen.passed = false;
            gen.witness = "gr_1 * gr_" + std::to_string(d) + " spans " + std::to_string(acc.rank()) + " of " +
                          std::to_string(co.graded_dim(d + 1)) + " dimensions in degree " + std::to_string(d + 1);
        }
    }
    report.checks.push_back(gen);
    return report;
}

// ---------------------------------------------------------------------------

HilbertReport hilbert_from_lengths(std::vector<long long> ell, int precision, int window, bool exact) {
    HilbertReport r;
    r.precision = precision;
    r.window = window;
    r.exact = exact;
    for (std::size_t k = 0; k + 1 < ell.size(); ++k) r.h.push_back(ell[k + 1] - ell[k]);
    r.ell = std::move(ell);
    try {
        r.fit = fit_sequence(r.ell, window, exact);
        r.stable = true;
    } catch (const PrecisionTooLow&) {
        r.stable = false;
    }
    return r;
}

HilbertReport hilbert_unchecked(const GradedView& view, int window) {
    std::vector<long long> ell{0};
    for (long long x : view.h()) ell.push_back(ell.back() + x);
    return hilbert_from_lengths(std::move(ell), view.precision(), window, view.space().coords()->exact());
}

HilbertReport hilbert(const GradedView& view, int window) {
    HilbertReport r = hilbert_unchecked(view, window);
    if (!r.stable)
        throw PrecisionTooLow("Hilbert function not stable at precision " + std::to_string(r.precision) +
                              " with window " + std::to_string(window));
    return r;
}

int krull_dim(const GradedView& view, int window) { return hilbert(view, window).delta(); }

bool pseudo_null_test(int ring_dim, int module_dim) { return ring_dim - module_dim >= 2; }

// ---------------------------------------------------------------------------

namespace {

// Nonzero vectors of a component, normalised (first nonzero entry 1), or
// just its basis when the component is too large to enumerate.
std::vector<Vector> component_samples(const Coordinates& co, int degree) {
    const std::size_t lo = co.level_start(degree);
    const std::size_t dim = co.graded_dim(degree);
    const std::uint64_t p = co.field().modulus();
    std::vector<Vector> out;
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < dim && small; ++i) {
        total *= p;
        small = total <= 4096;
    }
    if (!small) {
        for (std::size_t k = 0; k < dim; ++k) out.push_back(co.unit_vector(lo + k));
        return out;
    }
    for (std::uint64_t code = 1; code < total; ++code) {
        Vector v(co.dim(), 0);
        std::uint64_t c = code;
        for (std::size_t k = 0; k < dim; ++k) {
            v[lo + k] = static_cast<Scalar>(c % p);
            c /= p;
        }
        auto first = std::find_if(v.begin(), v.end(), [](Scalar s) { return s != 0; });
        if (*first == 1) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::optional<ZeroDivisorWitness> domain_refute(const AlgebraPtr& ring, int degree_bound) {
    const GradedView view = GradedView::of_ring(ring);
    const Coordinates& co = *ring->coords();
    const int top = std::min(degree_bound, ring->precision());
    for (int s = 2; s <= top; ++s) {
        for (int i = 1; i < s; ++i) {
            const int j = s - i;
            const std::size_t lo = co.level_start(j);
            const std::size_t dim_j = co.graded_dim(j);
            if (co.graded_dim(i) == 0 || dim_j == 0) continue;
            const std::size_t out_lo = co.level_start(s);
            const std::size_t out_dim = co.graded_dim(s);
            for (const Vector& a : component_samples(co, i)) {
                for (int side = 0; side < 2; ++side) {
                    Matrix m(co.field(), out_dim, dim_j);
                    for (std::size_t c = 0; c < dim_j; ++c) {
                        const Vector b = co.unit_vector(lo + c);
                        const Vector prod = side == 0 ? view.product(a, i, b, j) : view.product(b, j, a, i);
                        for (std::size_t r = 0; r < out_dim; ++r) m(r, c) = prod[out_lo + r];
                    }
                    auto ker = kernel(m);
                    if (ker.empty()) continue;
                    Vector b(co.dim(), 0);
                    for (std::size_t c = 0; c < dim_j; ++c) b[lo + c] = ker.front()[c];
                    if (side == 0) return ZeroDivisorWitness{a, i, b, j};
                    return ZeroDivisorWitness{b, j, a, i};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace cfa
