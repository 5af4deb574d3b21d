#pragma once

#include <optional>
#include <vector>

#include "cfa/space_ops.hpp"

namespace cfa {

struct SizeSeries {
    int precision = 0;
    int window = 0;
    int ar_constant = 0;
    bool exact = false;
    /// L(n) = dim M / 𝔪^n M for n = 0..trusted (exactly the truncation-honest range)
    std::vector<long long> L;
    bool stable = false;
    std::optional<PolynomialFit> fit;
    /// comparison with the Hilbert–Samuel fit of the stored filtration
    bool graded_stable = false;
    int graded_delta = 0;
    Rational graded_alpha;
    bool match_graded = false;
};

/// 𝔪^n M is computed as the single product F^n(R)·M, trusted while
/// F^{P+1}(M) ⊆ 𝔪^n M, i.e. n <= P + 1 - D with D the Artin–Rees constant.
SizeSeries size_series(const FilteredSpace& space, int ar_constant, int window);

struct SandwichRow {
    int n;
    long long ell_n;        ///< ℓ(M/F^n M)
    long long L_n;          ///< dim M/𝔪^n M
    long long ell_n_plus_D; ///< ℓ(M/F^{n+D} M)
    bool inclusions;        ///< F^{n+D}(M) ⊆ 𝔪^n M ⊆ F^n(M) as subgroups
    bool ok;
};

struct SandwichReport {
    int D = 0;
    std::vector<SandwichRow> rows;
    bool all_ok = true;
    std::optional<int> first_failure;
};

/// ℓ(n) <= L(n) <= ℓ(n+D) and the underlying inclusions, for n + D <= P + 1.
/// Throws HypothesisNotMet when `permissibility` says the space is not
/// permissible.
SandwichReport sandwich_check(const FilteredSpace& space, int ar_constant, const PermissibilityReport& permissibility);

/// F^a(R)·(F^b(R)·M) = F^{a+b}(R)·M for a + b <= P.
bool parenthesization_check(const FilteredSpace& space, int a, int b);

}  // namespace cfa
