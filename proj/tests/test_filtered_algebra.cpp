#include <doctest.h>

#include <random>

#include "cfa/errors.hpp"
#include "cfa/lifting.hpp"
#include "cfa/products.hpp"
#include "support.hpp"

using namespace cfa;
using cfa::test::el;
using cfa::test::family;

namespace {

Vector random_element(const AlgebraPtr& r, std::mt19937_64& rng, int min_valuation = 0) {
    Vector v = r->coords()->zero();
    for (std::size_t k = r->coords()->level_start(min_valuation); k < v.size(); ++k)
        v[k] = static_cast<Scalar>(rng() % r->field().modulus());
    return v;
}

}  // namespace

TEST_SUITE("filtered-algebra") {
    TEST_CASE("validation of standard families") {
        for (auto spec : {"powerseries:1", "powerseries:2", "powerseries:2:x*y", "deformation:2:1"}) {
            for (std::uint32_t p : {2U, 3U}) {
                const auto r = family(spec, p, 5);
                CAPTURE(spec);
                CHECK(validate(*r).all_passed());
            }
        }
    }

    TEST_CASE("retagging t to valuation 0 breaks the residue condition") {
        AlgebraBuilder b(PrimeField(2), 5);
        b.basis("1", 0).basis("t", 0).unit("1");
        const auto r = b.build();
        const auto rep = validate(*r);
        CHECK_FALSE(rep.find("unique-valuation-zero")->passed);
    }

    TEST_CASE("builder errors") {
        AlgebraBuilder b(PrimeField(2), 1);
        b.basis("e", 0).basis("t", 1);
        CHECK_THROWS_AS(b.build(), BadParams);  // no unit
        b.unit("e").product("t", "u", {{"t", 1}});
        CHECK_THROWS_AS(b.build(), BadParams);  // unknown name
    }

    TEST_CASE("filtration compatibility failure is witnessed") {
        AlgebraBuilder b(PrimeField(2), 2);
        b.basis("1", 0).basis("t", 1).basis("u", 2).unit("1").product("u", "u", {{"t", 1}});
        const auto rep = validate(*b.build());
        CHECK_FALSE(rep.find("filtration-compatibility")->passed);
        CHECK(rep.find("filtration-compatibility")->witness == "(u, u) -> t");
    }

    TEST_CASE("D_p is nonassociative") {
        const auto r = family("deformation:2:1", 2, 4);
        const Vector x = el(r, "x");
        const Vector lhs = r->multiply(r->multiply(x, x), x);
        const Vector rhs = r->multiply(x, r->multiply(x, x));
        CHECK(lhs != rhs);
        CHECK(associativity_witness(*r).has_value());
        CHECK_FALSE(associativity_witness(*family("powerseries:2", 2, 4)).has_value());
    }

    TEST_CASE("F^1 F^1 = F^2 in F_2[[t]] at N=5") {
        const auto r = family("powerseries:1", 2, 5);
        const auto& co = r->coords();
        const Subgroup p = product(r, Subgroup::level(co, 1), Subgroup::level(co, 1));
        CHECK(p == Subgroup::level(co, 2));
        CHECK(p.dim() == 4);
    }

    TEST_CASE("F^i F^j = F^{i+j} in validated families") {
        for (auto spec : {"powerseries:2", "deformation:2:1", "powerseries:3"}) {
            const auto r = family(spec, 3, 4);
            const auto& co = r->coords();
            for (int i = 0; i <= 4; ++i)
                for (int j = 0; i + j <= 4; ++j)
                    CHECK(product(r, Subgroup::level(co, i), Subgroup::level(co, j)) == Subgroup::level(co, i + j));
        }
    }

    TEST_CASE("m^n") {
        const auto r = family("powerseries:2", 2, 4);
        CHECK(power_ideal(r, 0) == Subgroup::whole(r->coords()));
        CHECK(power_ideal(r, 2) == Subgroup::level(r->coords(), 2));
        CHECK(power_ideal(r, 2).dim() == 12);
        const auto d = family("deformation:2:1", 2, 5);
        for (int n = 0; n <= 5; ++n) {
            CHECK(power_ideal(d, n) == Subgroup::level(d->coords(), n));
            // right-nested parenthesization
            Subgroup right = Subgroup::whole(d->coords());
            for (int k = 0; k < n; ++k) right = product(d, right, Subgroup::level(d->coords(), 1));
            CHECK(right == Subgroup::level(d->coords(), n));
        }
    }

    TEST_CASE("R.{x} is the span of basis multiples") {
        const auto r = family("deformation:2:1", 2, 4);
        const auto regular = FilteredSpace::regular(r);
        const Vector x = el(r, "x+y^2");
        std::vector<Vector> rows;
        for (std::size_t k = 0; k < r->dim(); ++k) rows.push_back(r->multiply(r->coords()->unit_vector(k), x));
        CHECK(span(regular, {x}) == Subgroup::span(r->coords(), rows));
    }

    TEST_CASE("product monotonicity") {
        const auto r = family("powerseries:2", 3, 4);
        const auto& co = r->coords();
        const auto regular = FilteredSpace::regular(r);
        std::mt19937_64 rng(9);
        for (int t = 0; t < 10; ++t) {
            const Vector a = random_element(r, rng, 1), b = random_element(r, rng, 1), c = random_element(r, rng);
            const Subgroup A = Subgroup::span(co, {a});
            const Subgroup A2 = Subgroup::span(co, {a, b});
            const Subgroup D = Subgroup::span(co, {c});
            const Subgroup D2 = Subgroup::span(co, {c, b});
            CHECK(product(regular, A, D).is_subset_of(product(regular, A2, D2)));
        }
    }

    TEST_CASE("generated subspace") {
        const auto assoc = family("powerseries:2", 2, 4);
        const auto reg = FilteredSpace::regular(assoc);
        const auto g = generated_subspace(reg, {el(assoc, "x")});
        CHECK(g.subspace == span(reg, {el(assoc, "x")}));
        CHECK(g.iterations == 1);
        const auto zero = generated_subspace(reg, {assoc->coords()->zero()});
        CHECK(zero.subspace.dim() == 0);
        CHECK(zero.iterations == 1);
        CHECK(generated_subspace(reg, {}).subspace.dim() == 0);
        CHECK(generated_subspace(reg, {assoc->one()}).subspace.dim() == assoc->dim());

        const auto d = family("deformation:2:1", 2, 5);
        const auto dreg = FilteredSpace::regular(d);
        const auto gd = generated_subspace(dreg, {el(d, "x")});
        CHECK(span(dreg, {el(d, "x")}).is_subset_of(gd.subspace));
        CHECK(gd.iterations <= static_cast<int>(d->dim()));
    }

    TEST_CASE("valuation of products") {
        const auto r = family("deformation:2:1", 3, 6);
        std::mt19937_64 rng(21);
        const auto& co = *r->coords();
        for (int t = 0; t < 200; ++t) {
            const Vector a = random_element(r, rng, static_cast<int>(rng() % 3));
            const Vector b = random_element(r, rng, static_cast<int>(rng() % 3));
            const int va = r->valuation(a), vb = r->valuation(b);
            const Vector ab = r->multiply(a, b);
            CHECK(r->valuation(ab) >= std::min(va + vb, r->precision() + 1));
            if (va + vb > r->precision()) continue;
            // gr is a domain here: σ(a)σ(b) ≠ 0, so v(ab) = v(a) + v(b) and σ(ab) = σ(a)σ(b)
            const Vector sa = co.homogeneous_part(a, va), sb = co.homogeneous_part(b, vb);
            const Vector prod = co.homogeneous_part(r->multiply(sa, sb), va + vb);
            CHECK(r->valuation(ab) == va + vb);
            CHECK(co.homogeneous_part(ab, va + vb) == prod);
        }
    }

    TEST_CASE("lift_solve") {
        const auto r = family("powerseries:2", 2, 6);
        const auto reg = FilteredSpace::regular(r);
        const auto one = lift_solve(reg, el(r, "x"), {el(r, "x"), el(r, "y")});
        CHECK(one.coefficients[0] == r->one());
        CHECK(one.coefficients[1] == r->coords()->zero());

        const Vector target = el(r, "x^2+x*y");
        const auto res = lift_solve(reg, target, {el(r, "x"), el(r, "y")});
        Vector sum = r->coords()->zero();
        for (std::size_t i = 0; i < 2; ++i) {
            const Vector t = reg.act(res.coefficients[i], i == 0 ? el(r, "x") : el(r, "y"));
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] ^= t[k];
        }
        CHECK(sum == target);
        for (std::size_t k = 1; k < res.residual_valuations.size(); ++k)
            CHECK(res.residual_valuations[k] > res.residual_valuations[k - 1]);

        CHECK_THROWS_AS(lift_solve(reg, el(r, "y"), {el(r, "x")}), NotSpanned);
    }

    TEST_CASE("inversion") {
        const auto t3 = family("powerseries:1", 3, 5);
        const auto inv = invert(t3, el(t3, "1+t"));
        CHECK(inv.inverse == el(t3, "1+2*t+t^2+2*t^3+t^4+2*t^5"));
        CHECK(inv.two_sided);
        CHECK(invert(t3, t3->one()).inverse == t3->one());
        const auto t2 = family("powerseries:1", 2, 5);
        CHECK_THROWS_AS(invert(t2, el(t2, "t")), NotUnit);

        const auto d = family("deformation:2:1", 5, 5);
        std::mt19937_64 rng(1);
        for (int k = 0; k < 30; ++k) {
            Vector a = random_element(d, rng);
            if (a[0] == 0) a[0] = 1;
            CHECK(d->multiply(invert(d, a).inverse, a) == d->one());
        }
    }

    TEST_CASE("proper left ideals lie in F^1") {
        const auto d = family("deformation:2:1", 3, 4);
        const auto reg = FilteredSpace::regular(d);
        std::mt19937_64 rng(4);
        for (int k = 0; k < 10; ++k) {
            const auto s = generated_subspace(reg, {random_element(d, rng, 1), random_element(d, rng, 1)}).subspace;
            CHECK(s.is_subset_of(Subgroup::level(d->coords(), 1)));
        }
    }
}
