#include <doctest.h>

#include <random>
#include <set>

#include "cfa/errors.hpp"
#include "cfa/products.hpp"
#include "cfa/rees.hpp"
#include "cfa/space_ops.hpp"
#include "support.hpp"

using namespace cfa;
using cfa::test::el;
using cfa::test::family;

namespace {

ReesPolynomial random_rees(const FilteredSpace& s, std::mt19937_64& rng, int degree) {
    ReesPolynomial a;
    for (int j = 0; j <= degree; ++j) {
        Vector v = s.coords()->zero();
        for (std::size_t k = s.coords()->level_start(j); k < v.size(); ++k)
            v[k] = static_cast<Scalar>(rng() % s.field().modulus());
        a.coeffs.push_back(v);
    }
    return a;
}

}  // namespace

TEST_SUITE("rees-artinrees") {
    TEST_CASE("Rees condition and leading monomials") {
        const auto r = family("powerseries:2", 2, 6);
        const auto reg = FilteredSpace::regular(r);
        const ReesPolynomial alpha{{el(r, "x"), el(r, "x^2")}};
        CHECK(satisfies_rees_condition(reg, alpha));
        CHECK_FALSE(satisfies_rees_condition(reg, ReesPolynomial{{el(r, "x"), el(r, "1")}}));
        const auto lead = leading_monomial(reg, alpha);
        CHECK(lead.degree == 1);
        CHECK(lead.valuation == 2);
        CHECK(lead.principal == el(r, "x^2"));
        CHECK(leading_monomial(reg, ReesPolynomial{}).is_zero());
        CHECK(leading_monomial(reg, ReesPolynomial{{r->coords()->zero()}}).is_zero());
    }

    TEST_CASE("bigrading") {
        for (auto spec : {"powerseries:2", "deformation:2:1"}) {
            const auto r = family(spec, 2, 5);
            CHECK_FALSE(check_rees_bigrading(FilteredSpace::regular(r), 3).has_value());
            CHECK_FALSE(check_rees_bigrading(ideal_space(r, {el(r, "x")}), 3).has_value());
        }
    }

    TEST_CASE("leading monomial map is multiplicative") {
        const auto r = family("deformation:2:1", 3, 6);
        const auto reg = FilteredSpace::regular(r);
        const auto& co = *r->coords();
        std::mt19937_64 rng(17);
        int tested = 0;
        for (int t = 0; t < 100; ++t) {
            const auto a = random_rees(reg, rng, static_cast<int>(rng() % 3));
            const auto b = random_rees(reg, rng, static_cast<int>(rng() % 3));
            const auto la = leading_monomial(reg, a), lb = leading_monomial(reg, b);
            if (la.is_zero() || lb.is_zero()) continue;
            const int v = la.valuation + lb.valuation;
            if (v > r->precision()) continue;
            const Vector pp = co.homogeneous_part(r->multiply(la.principal, lb.principal), v);
            if (pp == co.zero()) continue;
            const auto lab = leading_monomial(reg, rees_multiply(reg, a, b, 8));
            CHECK(lab.degree == la.degree + lb.degree);
            CHECK(lab.principal == pp);
            ++tested;
        }
        CHECK(tested > 20);
    }

    TEST_CASE("leading coefficient spaces") {
        const auto r = family("powerseries:2", 2, 5);
        const auto reg = FilteredSpace::regular(r);
        const Vector z = r->coords()->zero();
        const auto xs = span(reg, {el(r, "x")});

        const auto nx = leading_coefficient_spaces(reg, {ReesPolynomial{{z, el(r, "x")}}}, 4);
        CHECK(nx.spaces[0].dim() == 0);
        for (std::size_t j = 1; j < nx.spaces.size(); ++j) CHECK(xs.is_subset_of(nx.spaces[j]));

        const Vector m = el(r, "x+y");
        const auto nm = leading_coefficient_spaces(reg, {ReesPolynomial{{m}}}, 3);
        for (const auto& s : nm.spaces) CHECK(s == generated_subspace(reg, {m}).subspace);

        const auto n0 = leading_coefficient_spaces(reg, {}, 3);
        for (const auto& s : n0.spaces) CHECK(s.dim() == 0);

        // Rees mode only allows r X^i with v(r) >= i
        const auto rees = leading_coefficient_spaces(reg, {ReesPolynomial{{m}}}, 3, true);
        CHECK(rees.spaces[0] == generated_subspace(reg, {m}).subspace);
        CHECK(rees.spaces[2].is_subset_of(Subgroup::level(r->coords(), 2)));
    }

    TEST_CASE("spanning sets") {
        const auto r = family("powerseries:2", 2, 6);
        const auto reg = FilteredSpace::regular(r);
        auto slices = filtration_chain(reg);
        slices.pop_back();
        const auto one = extract_spanning_set(reg, slices, 3);
        REQUIRE(one.generators.size() == 1);
        CHECK(one.generators[0].degree == 0);
        CHECK(one.generators[0].element == r->one());

        const auto ix = extract_spanning_set(reg, rees_slices(reg, span(reg, {el(r, "x")})), 3);
        bool has_x1 = false;
        for (const auto& g : ix.generators) has_x1 = has_x1 || (g.degree == 1 && g.element == el(r, "x"));
        CHECK(has_x1);
        for (const auto& g : ix.generators) CHECK(g.element == el(r, "x"));

        const auto ixy = extract_spanning_set(reg, rees_slices(reg, span(reg, {el(r, "x"), el(r, "y")})), 3);
        std::set<std::string> deg1;
        for (const auto& g : ixy.generators)
            if (g.degree == 1) deg1.insert(reg.coords()->format(g.element));
        CHECK(deg1.size() == 2);
        // slice identity F^n((x)) = F^{n-1}(R) x for n >= 1
        const auto sl = rees_slices(reg, span(reg, {el(r, "x")}));
        for (int n = 1; n <= 6; ++n)
            CHECK(sl[static_cast<std::size_t>(n)] == product(reg, Subgroup::level(r->coords(), n - 1), std::vector<Vector>{el(r, "x")}));
    }

    TEST_CASE("Artin-Rees constants") {
        for (auto spec : {"powerseries:2", "deformation:2:1", "powerseries:1"}) {
            const auto ar = artin_rees_constant(FilteredSpace::regular(family(spec, 2, 6)), 3);
            CHECK(ar.found);
            CHECK(ar.D == 0);
        }
        const auto r = family("powerseries:2", 2, 8);
        const auto ar = artin_rees_constant(ideal_space(r, {el(r, "x")}), 3);
        CHECK(ar.found);
        CHECK(ar.D == 1);
        CHECK_FALSE(ar.pass[0][1]);

        const auto cyc = cyclic_space(r, el(r, "x+y^2"));
        const auto arc = artin_rees_constant(cyc, 3);
        CHECK(arc.D == 0);

        // ideal form: m^{n+d} ∩ I = m^n (m^d ∩ I)
        const auto reg = FilteredSpace::regular(r);
        const auto I = span(reg, {el(r, "x^2"), el(r, "x*y")});
        const auto ari = artin_rees_constant(ideal_space(r, {el(r, "x^2"), el(r, "x*y")}), 3);
        REQUIRE(ari.found);
        for (int d = ari.D; d <= 8; ++d)
            for (int n = 0; n + d <= 8; ++n) {
                const Subgroup lhs = Subgroup::level(r->coords(), n + d).intersect(I);
                const Subgroup rhs = product(reg, Subgroup::level(r->coords(), n), Subgroup::level(r->coords(), d).intersect(I));
                CHECK(lhs == rhs);
            }
    }

    TEST_CASE("too little precision for Artin-Rees") {
        const auto r = family("powerseries:2", 2, 3);
        const auto ar = artin_rees_constant(ideal_space(r, {el(r, "x^3")}), 3);
        CHECK_FALSE(ar.found);
    }
}
