#include "cfa/lifting.hpp"

#include <algorithm>

#include "cfa/errors.hpp"

namespace cfa {

LiftResult lift_solve(const FilteredSpace& space, const Vector& target, const std::vector<Vector>& spanners) {
    const PrimeField& f = space.field();
    const Coordinates& mc = *space.coords();
    const Coordinates& rc = *space.ring().coords();
    const int P = space.precision();
    if (target.size() != space.dim()) throw BadParams("lift_solve: target has the wrong length");
    for (const auto& y : spanners)
        if (y.size() != space.dim()) throw BadParams("lift_solve: spanner has the wrong length");

    LiftResult out;
    out.coefficients.assign(spanners.size(), rc.zero());
    std::vector<int> vy;
    for (const auto& y : spanners) {
        vy.push_back(mc.valuation(y));
        if (vy.back() <= P) out.K = std::max(out.K, vy.back());
    }

    Vector residual = target;
    for (int v = mc.valuation(residual); v <= P; v = mc.valuation(residual)) {
        out.residual_valuations.push_back(v);
        const std::size_t lo = mc.level_start(v);
        const std::size_t hi = mc.level_start(v + 1);

        // unknowns: (spanner i, ring basis b) with v(b) = v - v(y_i)
        struct Unknown {
            std::size_t spanner;
            std::size_t ring_basis;
            Vector product;
        };
        std::vector<Unknown> unknowns;
        for (std::size_t i = 0; i < spanners.size(); ++i) {
            const int need = v - vy[i];
            if (vy[i] > P || need < 0 || need > rc.precision()) continue;
            for (std::size_t b = rc.level_start(need); b < rc.level_start(need + 1); ++b)
                unknowns.push_back({i, b, space.act_basis(b, spanners[i])});
        }

        Matrix system(f, hi - lo, unknowns.size());
        for (std::size_t c = 0; c < unknowns.size(); ++c)
            for (std::size_t r = lo; r < hi; ++r) system(r - lo, c) = unknowns[c].product[r];
        Vector rhs(residual.begin() + static_cast<long>(lo), residual.begin() + static_cast<long>(hi));
        auto x = solve(system, rhs);
        if (!x) {
            throw NotSpanned(v, "principal parts of the spanners do not span degree " + std::to_string(v) +
                                    " of the residual " + mc.format(residual));
        }
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            const Scalar k = (*x)[c];
            if (k == 0) continue;
            const auto& u = unknowns[c];
            Vector& r = out.coefficients[u.spanner];
            r[u.ring_basis] = f.add(r[u.ring_basis], k);
            const Scalar neg = f.neg(k);
            for (std::size_t t = 0; t < residual.size(); ++t)
                if (u.product[t] != 0) residual[t] = f.fma(neg, u.product[t], residual[t]);
        }
        ++out.steps;
    }
    return out;
}

InverseResult invert(const AlgebraPtr& ring, const Vector& a) {
    if (ring->valuation(a) >= 1)
        throw NotUnit("element " + ring->coords()->format(a) + " has positive valuation");
    const auto regular = FilteredSpace::regular(ring);
    LiftResult lifted = lift_solve(regular, ring->one(), {a});
    InverseResult out;
    out.inverse = std::move(lifted.coefficients[0]);
    out.two_sided = ring->multiply(a, out.inverse) == ring->one();
    return out;
}

}  // namespace cfa
