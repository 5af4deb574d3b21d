#include "cfa/asymptotics.hpp"

#include "cfa/errors.hpp"

namespace cfa {

namespace {

Subgroup madic_level(const FilteredSpace& space, int n) {
    return product(space, Subgroup::level(space.ring().coords(), n), Subgroup::whole(space.coords()));
}

}  // namespace

SizeSeries size_series(const FilteredSpace& space, int ar_constant, int window) {
    SizeSeries s;
    s.precision = space.precision();
    s.window = window;
    s.ar_constant = ar_constant;
    s.exact = space.coords()->exact();
    const ChainFiltration madic = madic_filtration(space, ar_constant);
    for (const auto& g : madic.levels) s.L.push_back(static_cast<long long>(space.dim() - g.dim()));
    try {
        s.fit = fit_sequence(s.L, window, madic.exact);
        s.stable = true;
    } catch (const PrecisionTooLow&) {
        s.stable = false;
    }
    const HilbertReport h = hilbert_unchecked(GradedView(space), window);
    s.graded_stable = h.stable;
    if (h.stable) {
        s.graded_delta = h.delta();
        s.graded_alpha = h.alpha();
    }
    s.match_graded = s.stable && s.graded_stable && s.fit->degree == s.graded_delta && s.fit->leading == s.graded_alpha;
    return s;
}

SandwichReport sandwich_check(const FilteredSpace& space, int ar_constant, const PermissibilityReport& permissibility) {
    if (!permissibility.permissible) throw HypothesisNotMet("sandwich check requires a permissible space");
    const int P = space.precision();
    const auto& mc = space.coords();
    SandwichReport rep;
    rep.D = ar_constant;
    const long long dim = static_cast<long long>(space.dim());
    for (int n = 0; n + ar_constant <= P + 1; ++n) {
        const Subgroup mn = madic_level(space, n);
        const Subgroup fn = Subgroup::level(mc, n);
        const Subgroup fnd = Subgroup::level(mc, n + ar_constant);
        SandwichRow row{n,
                        dim - static_cast<long long>(fn.dim()),
                        dim - static_cast<long long>(mn.dim()),
                        dim - static_cast<long long>(fnd.dim()),
                        fnd.is_subset_of(mn) && mn.is_subset_of(fn),
                        false};
        row.ok = row.inclusions && row.ell_n <= row.L_n && row.L_n <= row.ell_n_plus_D;
        if (!row.ok && !rep.first_failure) rep.first_failure = n;
        rep.all_ok = rep.all_ok && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

bool parenthesization_check(const FilteredSpace& space, int a, int b) {
    const auto& rc = space.ring().coords();
    const Subgroup inner = madic_level(space, b);
    return product(space, Subgroup::level(rc, a), inner) == madic_level(space, a + b);
}

}  // namespace cfa
