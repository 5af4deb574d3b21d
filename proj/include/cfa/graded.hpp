#pragma once

#include <optional>
#include <vector>

#include "cfa/rational_fit.hpp"
#include "cfa/space.hpp"

namespace cfa {

/// gr(M) = ⊕ F^i(M)/F^{i+1}(M) over gr(R), read off the valuation slices of
/// the adapted bases. Degree-i components are coordinate blocks.
class GradedView {
public:
    explicit GradedView(FilteredSpace space) : space_(std::move(space)) {}
    static GradedView of_ring(const AlgebraPtr& ring) { return GradedView(FilteredSpace::regular(ring)); }

    const FilteredSpace& space() const noexcept { return space_; }
    int precision() const noexcept { return space_.precision(); }
    std::size_t component_dim(int i) const { return space_.coords()->graded_dim(i); }
    std::vector<long long> h() const;

    /// σ(r)σ(m) for homogeneous r of degree a and m of degree b: the degree
    /// a+b part of r·m.
    Vector product(const Vector& r, int a, const Vector& m, int b) const;
    /// σ(b_i)σ(m_k) on basis elements.
    Vector basis_product(std::size_t ring_index, std::size_t space_index) const;

private:
    FilteredSpace space_;
};

/// Graded commutativity and associativity on basis pairs/triples with degree
/// sum <= N, and gr_1·gr_i = gr_{i+1} for i+1 <= N.
ValidationReport check_clf_graded(const AlgebraPtr& ring);

struct HilbertReport {
    int precision = 0;
    int window = 0;
    bool exact = false;
    std::vector<long long> h;    ///< h(0..P)
    std::vector<long long> ell;  ///< ℓ(0..P+1)
    bool stable = false;
    std::optional<PolynomialFit> fit;

    int delta() const { return fit->degree; }
    Rational alpha() const { return fit->leading; }
};

/// Hilbert function and Hilbert–Samuel fit of an ℓ-sequence.
HilbertReport hilbert_from_lengths(std::vector<long long> ell, int precision, int window, bool exact);
/// Never throws on instability; `stable` records the outcome.
HilbertReport hilbert_unchecked(const GradedView& view, int window);
/// Throws PrecisionTooLow when the fit does not stabilize.
HilbertReport hilbert(const GradedView& view, int window);

/// δ of the stabilized fit (PrecisionTooLow otherwise).
int krull_dim(const GradedView& view, int window);

/// dim A - dim N >= 2
bool pseudo_null_test(int ring_dim, int module_dim);

struct ZeroDivisorWitness {
    Vector left;
    int left_degree;
    Vector right;
    int right_degree;
};

/// Searches homogeneous pairs of degrees i, j >= 1 with i + j <= bound for a
/// zero product in gr(R). nullopt means none was found, which is not a proof
/// that gr(R) is a domain.
std::optional<ZeroDivisorWitness> domain_refute(const AlgebraPtr& ring, int degree_bound);

}  // namespace cfa
