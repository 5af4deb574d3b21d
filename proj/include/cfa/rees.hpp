#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfa/space_ops.hpp"

namespace cfa {

/// α = a_0 + a_1 X + ... + a_n X^n with coefficients in the space. Members
/// of the Rees space satisfy a_j ∈ F^j(M).
struct ReesPolynomial {
    std::vector<Vector> coeffs;

    int degree() const;  ///< -1 for the zero polynomial
};

bool satisfies_rees_condition(const FilteredSpace& space, const ReesPolynomial& alpha);

/// (Σ r_i X^i)(Σ m_j X^j) with X central, truncated at X-degree `cap`.
ReesPolynomial rees_multiply(const FilteredSpace& space, const ReesPolynomial& r, const ReesPolynomial& m, int cap);

struct LeadingData {
    int degree = -1;      ///< n, or -1 when α = 0
    Vector coefficient;   ///< a_n
    int valuation = 0;    ///< v(a_n)
    Vector principal;     ///< σ(a_n): the degree-v(a_n) part of a_n
    bool is_zero() const { return degree < 0; }
};

/// φ(α) = σ(a_n) X^n; φ(0) = 0.
LeadingData leading_monomial(const FilteredSpace& space, const ReesPolynomial& alpha);

/// Every product of slices (i, j) · (i', j') lands in (>= i + i', j + j'),
/// checked on ring-basis × space-basis pairs with X-degrees up to `cap`.
/// Returns the first violating pair or nullopt.
std::optional<std::string> check_rees_bigrading(const FilteredSpace& space, int cap);

struct LeadingCoefficientSpaces {
    std::vector<Subgroup> spaces;  ///< N(0) .. N(K)
    int stabilization_index = 0;   ///< smallest k with N(k) = ... = N(K)
};

/// Closure of the generators inside M[X] (degrees <= K) under multiplication
/// by r X^i for ring basis elements r (with v(r) >= i when `rees` is set),
/// then N(j) = leading coefficients of closure members of degree j.
/// Without `rees`, throws CapTooLow when N(K-1) != N(K). In Rees mode
/// N(j) ⊆ F^j(M) keeps shrinking, so no stabilization is demanded.
LeadingCoefficientSpaces leading_coefficient_spaces(const FilteredSpace& space,
                                                    const std::vector<ReesPolynomial>& generators, int cap,
                                                    bool rees = false);

struct SpanningSet {
    std::vector<GradedGenerator> generators;  ///< m_i with X-degree d_i
    bool stable = true;  ///< no generator in the last `window` slices
};

/// Given the slices S_n (n = 0..P) of a Rees subspace of 𝐑(M), returns
/// m_i ∈ S_{d_i} with S_n = Σ_i F^{n-d_i}(R)·m_i for every n. Greedy by
/// slice, lowest valuation first. Throws VerificationFailed when the final
/// slice-by-slice check fails.
SpanningSet extract_spanning_set(const FilteredSpace& space, const std::vector<Subgroup>& slices, int window);

/// Slices of 𝐑(L) for the induced filtration on an R-subspace L of M.
std::vector<Subgroup> rees_slices(const FilteredSpace& space, const Subgroup& sub);

struct ArtinReesReport {
    int precision = 0;
    int window = 0;
    bool exact = false;
    /// pass[d][n]: F^{n+d}(M) = F^n(R)·F^d(M), for n + d <= P
    std::vector<std::vector<bool>> pass;
    int D = 0;  ///< smallest D such that every d >= D passes for every n
    bool found = false;  ///< exact, or D + window <= P
    int verified_pairs = 0;
};

ArtinReesReport artin_rees_constant(const FilteredSpace& space, int window);

}  // namespace cfa
