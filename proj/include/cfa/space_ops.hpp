#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfa/graded.hpp"
#include "cfa/products.hpp"

namespace cfa {

struct InducedFiltration {
    SubspaceModel sub;
    QuotientModel quotient;
    std::vector<std::size_t> sub_profile;       ///< dim(L ∩ F^i), i = 0..P+1
    std::vector<std::size_t> quotient_profile;  ///< dim((F^i + L)/L)
    std::vector<long long> h_ambient, h_sub, h_quotient;
    bool exact_sequence = true;  ///< h_M = h_L + h_{M/L} in every degree
};

/// Throws NotSubspace unless `sub` is closed under the action.
InducedFiltration induced_filtration(const FilteredSpace& space, const Subgroup& sub);

struct GradedGenerator {
    int degree;
    Vector element;  ///< a basis element of the space of that valuation
};

struct PermissibilityReport {
    int precision = 0;
    int window = 0;
    bool module_check = true;
    std::string module_witness;
    std::vector<GradedGenerator> generators;
    bool stable = true;  ///< no new generators in the last `window` degrees
    bool permissible = false;
    HilbertReport hilbert;
    std::string filtration = "stored";

    int delta() const { return hilbert.delta(); }
};

/// gr(M) must be a gr(R)-module, (σrσs)σm = σr(σsσm) on basis triples, and
/// finitely generated: generators are found greedily degree by degree as
/// complements of sum_{k>=1} gr_k(R)·gr_{i-k}(M). A failed module check is
/// returned as a non-permissible report. Otherwise throws PrecisionTooLow
/// when generators still appear in the last `window` degrees of a
/// truncated (non-exact) space, or when the Hilbert fit does not stabilize.
PermissibilityReport permissible(const FilteredSpace& space, int window);

/// Homogeneous generators only (no stability verdict, no throw).
std::vector<GradedGenerator> graded_generators(const FilteredSpace& space);

/// Default cap N - v(x) - 2 (N when x = 0).
int default_annihilator_cap(const FilteredSpace& space, const Vector& x);

/// Canonical basis rows of {r : r·x = 0} with v(r) <= tau. Empty means no
/// witness at this precision and cap.
std::vector<Vector> annihilator(const FilteredSpace& space, const Vector& x, int tau);
/// The full kernel of r -> r·x as a subgroup of the ring.
Subgroup annihilator_subgroup(const FilteredSpace& space, const Vector& x);

enum class DistinguishedMode { Plain, MAdic };

struct DistinguishedResult {
    bool holds = true;
    int i = -1;  ///< first failing index (plain) or pair (i, j) (𝔪-adic)
    int j = -1;
};

/// plain: F^i(R)·(Rx) = F^i(R)·x for i <= N.
/// 𝔪-adic: F^i(R)·(F^j(R)·x) = F^{i+j}(R)·x for i+j <= N, scanned by i+j
/// then i.
DistinguishedResult distinguished(const FilteredSpace& space, const Vector& x, DistinguishedMode mode);

/// A filtration given as an explicit chain G^0 ⊇ G^1 ⊇ ... of subgroups of
/// the space, trusted as the true G^n for n < levels.size(). When `exact`,
/// the last level is final (G^n = G^{last} for all larger n).
struct ChainFiltration {
    std::string name;
    std::vector<Subgroup> levels;
    bool exact = false;
};

ChainFiltration stored_filtration(const FilteredSpace& space);
/// G^n = F^{max(n-1, 0)}(M)
ChainFiltration shifted_filtration(const FilteredSpace& space);
/// G^n = 𝔪^n M = F^n(R)·M, trusted for n <= P + 1 - D.
ChainFiltration madic_filtration(const FilteredSpace& space, int ar_constant);
ChainFiltration intersect_filtrations(const ChainFiltration& a, const ChainFiltration& b);

/// F^i(R)·G^n ⊆ G^{n+i} wherever both sides are trusted; returns the first
/// failure "(i, n)" or nullopt.
std::optional<std::string> check_compatible(const FilteredSpace& space, const ChainFiltration& chain);

/// ℓ(n) = dim M - dim G^n and its fit.
HilbertReport chain_hilbert(const FilteredSpace& space, const ChainFiltration& chain, int window);

struct DimensionReport {
    int delta = 0;
    Rational alpha;
    int precision = 0;
    int window = 0;
    std::string provenance;
    /// (filtration name, δ, stable) for every alternative compared
    struct Alternative {
        std::string name;
        bool stable = false;
        bool compatible = true;
        int delta = 0;
    };
    std::vector<Alternative> alternatives;
    bool invariant = true;  ///< every stable, compatible alternative gave the same δ
};

/// δ from the stored filtration. With `ar_constant` set, also compares the
/// shifted, 𝔪-adic and intersection filtrations.
DimensionReport dimension(const FilteredSpace& space, int window, std::optional<int> ar_constant = std::nullopt);

}  // namespace cfa
