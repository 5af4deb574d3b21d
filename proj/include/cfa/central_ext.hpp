#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfa/asymptotics.hpp"
#include "cfa/graded.hpp"

namespace cfa {

/// M with a central operator T, making it an R[[T]]-space. t_op column k is
/// T(m_k).
struct CentralExtension {
    FilteredSpace space;
    Matrix t_op;
    /// k_table[j] = min{k >= 1 : T^k M ⊆ 𝔪^j M} for j = 1..P (index 0 unused)
    std::vector<int> k_table;

    Vector apply_t(const Vector& m) const { return t_op.apply(m); }
    Subgroup image(const Subgroup& s) const;
};

/// T(m) = r·m for a fixed ring element r.
Matrix multiplication_operator(const FilteredSpace& space, const Vector& r);

/// Checks T(b·m) = b·T(m) on basis pairs (NotCentral) and that T induces a
/// nilpotent map on M/𝔪M (NotNilpotentModM), then tabulates k_j.
CentralExtension build_extension(const FilteredSpace& space, Matrix t_op);

/// 𝔫^k M for k = 0..count-1, left-nested: 𝔫S = 𝔪S + T(S).
std::vector<Subgroup> n_adic_levels(const CentralExtension& ext, int count);

struct ExtensionDimension {
    int trusted = 0;               ///< L_𝔫(k) trusted for k <= trusted
    std::vector<long long> L;      ///< dim M/𝔫^k M
    bool stable = false;
    std::optional<PolynomialFit> fit;
    int delta_R = 0;               ///< dimension over R (stored filtration)
    bool invariant = false;        ///< δ_𝔫 = δ_R
    bool reassociation_ok = true;  ///< 𝔫^k M = Σ_j T^j(𝔪^{k-j} M)
    bool nilpotence_bound_ok = true;  ///< 𝔫^{k·k_1} M ⊆ 𝔪^k M where computed
    bool inversion_ok = true;      ///< 1 - T^n bijective for n = 1..3
};

/// Throws PrecisionTooLow when either fit is unstable.
ExtensionDimension dim_over_extension(const CentralExtension& ext, int ar_constant, int window);

/// θ^n = Σ_{i+j>=n} T^j F^i(M): a second R[[T]]-filtration.
ChainFiltration theta_filtration(const CentralExtension& ext);

struct TorsionOptions {
    int window = 3;
    std::uint64_t seed = 0;
    int samples = 16;
    bool exhaustive = false;   ///< enumerate every element when p^dim <= 4096
    bool domain_asserted = false;
    std::optional<int> tau;    ///< annihilator cap; default N - v(x) - 2
    /// user-supplied spanning set; verified, HypothesisNotMet on failure
    std::optional<std::vector<Vector>> spanners;
};

struct TorsionReport {
    int delta_R = 0;
    int delta_M = 0;
    bool zero_space = false;
    bool S1 = false, S2 = false, S3 = false;
    bool agree = false;
    int sample_size = 0;           ///< distinguished elements examined
    std::optional<Vector> witness_free;  ///< a distinguished element with no annihilator witness
    bool hypothesis_met = false;   ///< spanned by 𝔪-adically distinguished elements with witnesses
    std::optional<ZeroDivisorWitness> zero_divisor;
};

/// (S1) dim M <= dim R - 1, (S2) sampled distinguished elements have
/// annihilator witnesses, (S3) a spanning set of 𝔪-adically distinguished
/// elements with witnesses exists. Computed independently.
TorsionReport torsion_equivalence_check(const FilteredSpace& space, const TorsionOptions& opt);

struct PseudoNullReport {
    int delta_R = 0;
    int delta_n = 0;       ///< 𝔫-adic dimension of M
    int delta_theta = 0;   ///< θ-filtration dimension of M
    bool T1 = false, T2 = false, T3 = false;
    bool agree = false;
    bool verdict = false;  ///< dim R - dim M >= 1
    int sample_size = 0;
};

/// Throws DomainNotAsserted unless opt.domain_asserted, or when the
/// zero-divisor search refutes the assertion.
PseudoNullReport pseudo_null_filtration_test(const CentralExtension& ext, int ar_constant, const TorsionOptions& opt);

}  // namespace cfa
