#include <doctest.h>

#include <random>

#include "cfa/errors.hpp"
#include "cfa/graded.hpp"
#include "cfa/products.hpp"
#include "cfa/space_ops.hpp"
#include "support.hpp"

using namespace cfa;
using cfa::test::el;
using cfa::test::family;

namespace {

// t·(t·m0) = m2 but t^2·m0 = 0, so gr(M) is not a module over gr(R) = F_2[t].
FilteredSpace broken_module() {
    const auto r = family("powerseries:1", 2, 3);
    auto co = std::make_shared<const Coordinates>(PrimeField(2), 3, std::vector<std::string>{"m0", "m1", "m2", "m3"},
                                                  std::vector<int>{0, 1, 2, 3});
    BilinearTable act(r->dim(), 4, 4);
    for (std::uint32_t k = 0; k < 4; ++k) act.set(0, k, {{k, 1}});
    act.set(1, 0, {{1, 1}});
    act.set(1, 1, {{2, 1}});
    act.set(2, 1, {{3, 1}});
    return FilteredSpace(r, co, std::move(act));
}

}  // namespace

TEST_SUITE("spaces") {
    TEST_CASE("space validation") {
        const auto r = family("powerseries:2", 2, 4);
        CHECK(validate_space(FilteredSpace::regular(r)).all_passed());
        CHECK(validate_space(skew_chain_space(PrimeField(2))).all_passed());
        auto co = std::make_shared<const Coordinates>(PrimeField(2), 4, std::vector<std::string>{"a", "b"},
                                                      std::vector<int>{0, 1});
        BilinearTable act(r->dim(), 2, 2);
        act.set(0, 0, {{0, 1}});
        act.set(1, 1, {{0, 1}});  // x.b = a lowers valuation
        const auto rep = validate_space(FilteredSpace(r, co, std::move(act)));
        CHECK_FALSE(rep.find("unital-action")->passed);
        CHECK_FALSE(rep.find("filtration-compatibility")->passed);
    }

    TEST_CASE("span examples") {
        const auto r = family("powerseries:2", 2, 4);
        const auto reg = FilteredSpace::regular(r);
        CHECK(span(reg, {r->one()}) == Subgroup::whole(r->coords()));
        CHECK(span(reg, {}).dim() == 0);
        // xR: every monomial divisible by x
        std::vector<Vector> xs;
        for (std::size_t k = 0; k < r->dim(); ++k)
            if (r->coords()->names()[k].find('x') != std::string::npos) xs.push_back(r->coords()->unit_vector(k));
        CHECK(span(reg, {el(r, "x")}) == Subgroup::span(r->coords(), xs));
    }

    TEST_CASE("induced filtrations") {
        const auto r = family("powerseries:2", 2, 6);
        const auto reg = FilteredSpace::regular(r);
        const auto& co = r->coords();
        const auto zero = induced_filtration(reg, Subgroup::zero(co));
        CHECK(zero.h_quotient == zero.h_ambient);
        const auto whole = induced_filtration(reg, Subgroup::whole(co));
        CHECK(whole.quotient.space.dim() == 0);

        const auto ix = induced_filtration(reg, span(reg, {el(r, "x")}));
        for (int i = 0; i <= 6; ++i) {
            CHECK(ix.h_sub[static_cast<std::size_t>(i)] == i);
            CHECK(ix.h_quotient[static_cast<std::size_t>(i)] == 1);
        }
        CHECK(ix.exact_sequence);
        CHECK_THROWS_AS(induced_filtration(reg, Subgroup::span(co, {el(r, "x+y")})), NotSubspace);
    }

    TEST_CASE("permissibility") {
        const auto r = family("powerseries:2", 2, 8);
        const auto reg = FilteredSpace::regular(r);
        const auto pr = permissible(reg, 3);
        CHECK(pr.permissible);
        REQUIRE(pr.generators.size() == 1);
        CHECK(pr.generators[0].degree == 0);
        CHECK(pr.delta() == 2);

        const auto ideal = ideal_space(r, {el(r, "x")});
        const auto pi = permissible(ideal, 3);
        REQUIRE(pi.generators.size() == 1);
        CHECK(pi.generators[0].degree == 1);
        CHECK(pi.delta() == 2);

        const auto bad = permissible(broken_module(), 1);
        CHECK_FALSE(bad.module_check);
        CHECK_FALSE(bad.permissible);
        CHECK_FALSE(permissible(skew_chain_space(PrimeField(2)), 1).module_check);
    }

    TEST_CASE("annihilators") {
        const auto r = family("powerseries:2", 2, 6);
        const auto reg = FilteredSpace::regular(r);
        const auto zero_rows = annihilator(reg, r->coords()->zero(), 6);
        CHECK(zero_rows.size() == r->dim());
        CHECK(default_annihilator_cap(reg, r->coords()->zero()) == 6);
        CHECK(annihilator(reg, r->one(), 5).empty());

        const auto q = quotient_by_ideal(r, {el(r, "x")});
        const Vector one_bar = q.coords()->unit_vector(0);
        const auto rows = annihilator(q, one_bar, 1);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0] == el(r, "x"));
    }

    TEST_CASE("distinguished elements") {
        const auto r = family("powerseries:2", 2, 5);
        const auto reg = FilteredSpace::regular(r);
        std::mt19937_64 rng(2);
        for (int t = 0; t < 10; ++t) {
            Vector x = r->coords()->zero();
            for (auto& c : x) c = rng() & 1U;
            CHECK(distinguished(reg, x, DistinguishedMode::Plain).holds);
            CHECK(distinguished(reg, x, DistinguishedMode::MAdic).holds);
        }
        CHECK(distinguished(reg, r->coords()->zero(), DistinguishedMode::MAdic).holds);

        const auto skew = skew_chain_space(PrimeField(2));
        const Vector m0 = skew.coords()->unit_vector(0);
        CHECK(distinguished(skew, m0, DistinguishedMode::Plain).holds);
        const auto m = distinguished(skew, m0, DistinguishedMode::MAdic);
        CHECK_FALSE(m.holds);
        CHECK(m.i == 1);
        CHECK(m.j == 1);
    }

    TEST_CASE("m-adic distinguished implies plain") {
        const auto d = family("deformation:2:1", 2, 4);
        const auto spaces = {FilteredSpace::regular(d), quotient_by_ideal(d, {el(d, "x")}), skew_chain_space(PrimeField(2))};
        std::mt19937_64 rng(8);
        for (const auto& s : spaces) {
            for (int t = 0; t < 15; ++t) {
                Vector x = s.coords()->zero();
                for (auto& c : x) c = rng() & 1U;
                if (distinguished(s, x, DistinguishedMode::MAdic).holds)
                    CHECK(distinguished(s, x, DistinguishedMode::Plain).holds);
            }
        }
    }

    TEST_CASE("dimension and its invariance") {
        const auto r = family("powerseries:2", 2, 8);
        CHECK(dimension(FilteredSpace::regular(r), 3).delta == 2);
        const auto rep = dimension(FilteredSpace::regular(r), 3, 0);
        CHECK(rep.invariant);
        CHECK(rep.alternatives.size() >= 2);

        const auto l = ideal_space(r, {el(r, "x")});
        const auto q = quotient_by_ideal(r, {el(r, "x")});
        const int dl = dimension(l, 3).delta, dq = dimension(q, 3).delta;
        CHECK(dl == 2);
        CHECK(dq == 1);
        CHECK(std::max(dl, dq) == 2);

        const auto exact = family("powerseries:2:x^2,x*y,y^2", 2, 3);
        CHECK(exact->coords()->exact());
        CHECK(dimension(FilteredSpace::regular(exact), 3).delta == 0);
    }

    TEST_CASE("filtration chains") {
        const auto r = family("powerseries:2", 2, 6);
        const auto reg = FilteredSpace::regular(r);
        const auto stored = stored_filtration(reg);
        const auto shifted = shifted_filtration(reg);
        CHECK_FALSE(check_compatible(reg, stored).has_value());
        CHECK_FALSE(check_compatible(reg, shifted).has_value());
        const auto inter = intersect_filtrations(stored, shifted);
        for (std::size_t n = 0; n < inter.levels.size(); ++n) CHECK(inter.levels[n] == stored.levels[n]);
        CHECK(chain_hilbert(reg, shifted, 3).delta() == 2);
    }
}
