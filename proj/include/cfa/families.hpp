#pragma once

#include <functional>

#include <optional>
#include <string>
#include <vector>

#include "cfa/algebra.hpp"
#include "cfa/space.hpp"

namespace cfa {

/// Exponent vector of a monomial.
using Monomial = std::vector<int>;

/// Variable names: t for one variable, x y z for two or three, x1.. beyond.
std::vector<std::string> variable_names(int vars);
std::string monomial_name(const Monomial& m, const std::vector<std::string>& names);

/// F_p[[x_1..x_k]] / (monomials) truncated at total degree N. The result is
/// flagged exact when no monomial of degree N+1 survives the quotient.
AlgebraPtr powerseries(const PrimeField& field, int vars, const std::vector<Monomial>& killed, int precision);

/// Nonassociative deformation of F_p[[x_1..x_k]]: for the basis monomial
/// x_1 and any monomial m with x_1-degree >= 1,
///   x_1 * m = x_1 m + λ x_1 m x_k,
/// every other product of basis monomials is the commutative one. The
/// correction raises degree by 2 so gr is the polynomial ring.
AlgebraPtr deformation(const PrimeField& field, int vars, long long lambda, int precision);

/// Parsed "name[:arg[:arg...]]" family specification, e.g.
/// "powerseries:2", "powerseries:2:x*y", "deformation:2:1".
struct FamilySpec {
    std::string id;
    int vars = 1;
    std::vector<Monomial> killed;
    long long lambda = 1;
};

/// Throws BadParams on unknown ids or malformed arguments.
FamilySpec parse_family(const std::string& text);
std::string format_family(const FamilySpec& spec);
AlgebraPtr build_family(const FamilySpec& spec, const PrimeField& field, int precision);

struct CoherenceReport {
    bool coherent = true;
    std::string witness;
};

/// Truncating R_N to degree N-1 commutes with multiplication: for every
/// pair of basis elements of R_{N-1}, the product in R_N with the
/// valuation-N part dropped equals the product in R_{N-1}. Names are
/// matched between the two presentations.
CoherenceReport tower_coherence(const TruncatedFilteredAlgebra& upper, const TruncatedFilteredAlgebra& lower);

/// A space derived from the ring together with the map sending a ring
/// element into it (projection, or membership coordinates for subspaces).
struct DerivedSpace {
    FilteredSpace space;
    std::function<Vector(const Vector&)> from_ring;  ///< BadParams when not a member
};

/// how = regular | ideal | quotient | cyclic
DerivedSpace derive_space(const AlgebraPtr& ring, const std::string& how, const std::vector<Vector>& gens);

/// The ideal generated by `gens` with the induced filtration.
FilteredSpace ideal_space(const AlgebraPtr& ring, const std::vector<Vector>& gens);
/// R / (gens) with the quotient filtration.
FilteredSpace quotient_by_ideal(const AlgebraPtr& ring, const std::vector<Vector>& gens);
/// The R-subspace generated by x, re-indexed so x has valuation 0 and
/// precision N - v(x). Throws BadParams unless gr(M) = gr(R)·σ(x).
FilteredSpace cyclic_space(const AlgebraPtr& ring, const Vector& x);

/// R = F_p[[t]] at precision 3 acting on m0..m3 (v = 0..3) by
/// t·m0 = m1, t²·m0 = m2, t³·m0 = m3, t·m2 = m3, other products zero.
/// Plainly distinguished at m0 but not 𝔪-adically, and gr(M) is not a
/// gr(R)-module.
FilteredSpace skew_chain_space(const PrimeField& field);

}  // namespace cfa
