#include "cfa/space_ops.hpp"

#include <algorithm>

#include "cfa/errors.hpp"

namespace cfa {

InducedFiltration induced_filtration(const FilteredSpace& space, const Subgroup& sub) {
    InducedFiltration out{induced_subspace(space, sub), quotient_space(space, sub), {}, {}, {}, {}, {}, true};
    out.sub_profile = sub.profile();
    const Coordinates& qc = *out.quotient.space.coords();
    for (int i = 0; i <= space.precision() + 1; ++i) out.quotient_profile.push_back(qc.dim() - qc.level_start(i));
    out.h_ambient = GradedView(space).h();
    out.h_sub = GradedView(out.sub.space).h();
    out.h_quotient = GradedView(out.quotient.space).h();
    for (std::size_t i = 0; i < out.h_ambient.size(); ++i)
        out.exact_sequence = out.exact_sequence && out.h_ambient[i] == out.h_sub[i] + out.h_quotient[i];
    return out;
}

// ---------------------------------------------------------------------------

std::vector<GradedGenerator> graded_generators(const FilteredSpace& space) {
    const GradedView view(space);
    const Coordinates& rc = *space.ring().coords();
    const Coordinates& mc = *space.coords();
    std::vector<GradedGenerator> gens;
    for (int d = 0; d <= space.precision(); ++d) {
        EchelonBasis acc(space.field(), space.dim());
        for (int k = 1; k <= d && k <= rc.precision(); ++k)
            for (std::size_t i = rc.level_start(k); i < rc.level_start(k + 1); ++i)
                for (std::size_t m = mc.level_start(d - k); m < mc.level_start(d - k + 1); ++m)
                    acc.insert(view.basis_product(i, m));
        for (std::size_t m = mc.level_start(d); m < mc.level_start(d + 1); ++m) {
            Vector e = mc.unit_vector(m);
            if (acc.insert(e)) gens.push_back({d, std::move(e)});
        }
    }
    return gens;
}

PermissibilityReport permissible(const FilteredSpace& space, int window) {
    const GradedView view(space);
    const GradedView ring_view = GradedView::of_ring(space.ring_ptr());
    const Coordinates& rc = *space.ring().coords();
    const Coordinates& mc = *space.coords();
    const int P = space.precision();
    const int N = rc.precision();

    PermissibilityReport rep;
    rep.precision = P;
    rep.window = window;

    for (std::size_t i = 0; i < rc.dim() && rep.module_check; ++i) {
        const int vi = rc.valuation_of_basis(i);
        for (std::size_t j = 0; j < rc.dim() && rep.module_check; ++j) {
            const int vj = rc.valuation_of_basis(j);
            if (vi + vj > N || vi + vj > P) break;
            const Vector rs = ring_view.basis_product(i, j);
            for (std::size_t k = 0; k < mc.dim(); ++k) {
                const int vk = mc.valuation_of_basis(k);
                if (vi + vj + vk > P) break;
                const Vector left = view.product(rs, vi + vj, mc.unit_vector(k), vk);
                const Vector right = view.product(rc.unit_vector(i), vi, view.basis_product(j, k), vj + vk);
                if (left != right) {
                    rep.module_check = false;
                    rep.module_witness = "(σ" + rc.names()[i] + "·σ" + rc.names()[j] + ")·σ" + mc.names()[k] +
                                         " != σ" + rc.names()[i] + "·(σ" + rc.names()[j] + "·σ" + mc.names()[k] + ")";
                    break;
                }
            }
        }
    }

    rep.generators = graded_generators(space);
    if (!rep.module_check) {
        rep.stable = false;
        rep.hilbert = hilbert_unchecked(view, window);
        return rep;
    }
    if (!mc.exact()) {
        for (const auto& g : rep.generators) {
            if (g.degree > P - window) {
                throw PrecisionTooLow("a graded generator appears in degree " + std::to_string(g.degree) +
                                      ", within the last " + std::to_string(window) + " degrees of precision " +
                                      std::to_string(P));
            }
        }
    }
    rep.stable = true;
    rep.hilbert = hilbert(view, window);
    rep.permissible = rep.module_check && rep.stable;
    return rep;
}

// ---------------------------------------------------------------------------

int default_annihilator_cap(const FilteredSpace& space, const Vector& x) {
    const int N = space.ring().precision();
    const int v = space.valuation(x);
    if (v > space.precision()) return N;
    return N - v - 2;
}

Subgroup annihilator_subgroup(const FilteredSpace& space, const Vector& x) {
    const std::size_t n = space.ring().dim();
    Matrix a(space.field(), space.dim(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector col = space.act_basis(i, x);
        for (std::size_t r = 0; r < space.dim(); ++r) a(r, i) = col[r];
    }
    return Subgroup::span(space.ring().coords(), kernel(a));
}

std::vector<Vector> annihilator(const FilteredSpace& space, const Vector& x, int tau) {
    const Subgroup k = annihilator_subgroup(space, x);
    std::vector<Vector> out;
    for (std::size_t r = 0; r < k.dim(); ++r)
        if (k.row_valuation(r) <= tau) out.push_back(k.basis()[r]);
    return out;
}

// ---------------------------------------------------------------------------

DistinguishedResult distinguished(const FilteredSpace& space, const Vector& x, DistinguishedMode mode) {
    const auto& rcoords = space.ring().coords();
    const int N = space.ring().precision();
    const std::vector<Vector> single{x};
    DistinguishedResult out;
    if (mode == DistinguishedMode::Plain) {
        const Subgroup rx = span(space, single);
        for (int i = 0; i <= N; ++i) {
            const Subgroup fi = Subgroup::level(rcoords, i);
            if (!(product(space, fi, rx) == product(space, fi, single))) {
                out.holds = false;
                out.i = i;
                return out;
            }
        }
        return out;
    }
    std::vector<Subgroup> fx;
    for (int j = 0; j <= N; ++j) fx.push_back(product(space, Subgroup::level(rcoords, j), single));
    for (int s = 0; s <= N; ++s) {
        for (int i = 0; i <= s; ++i) {
            const int j = s - i;
            if (!(product(space, Subgroup::level(rcoords, i), fx[static_cast<std::size_t>(j)]) ==
                  fx[static_cast<std::size_t>(s)])) {
                out.holds = false;
                out.i = i;
                out.j = j;
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

ChainFiltration stored_filtration(const FilteredSpace& space) {
    return {"stored", filtration_chain(space), space.coords()->exact()};
}

ChainFiltration shifted_filtration(const FilteredSpace& space) {
    ChainFiltration c{"shifted", {Subgroup::whole(space.coords())}, space.coords()->exact()};
    for (int n = 1; n <= space.precision() + 2; ++n) c.levels.push_back(Subgroup::level(space.coords(), n - 1));
    return c;
}

ChainFiltration madic_filtration(const FilteredSpace& space, int ar_constant) {
    const int P = space.precision();
    const int N = space.ring().precision();
    const bool exact = space.coords()->exact();
    const int top = exact ? P + 1 : P + 1 - ar_constant;
    const Subgroup whole = Subgroup::whole(space.coords());
    ChainFiltration c{"m-adic", {}, exact};
    for (int n = 0; n <= top; ++n) {
        if (n > N && P > N) break;
        c.levels.push_back(product(space, Subgroup::level(space.ring().coords(), n), whole));
    }
    return c;
}

ChainFiltration intersect_filtrations(const ChainFiltration& a, const ChainFiltration& b) {
    ChainFiltration c{a.name + "∩" + b.name, {}, a.exact && b.exact};
    const std::size_t len = c.exact ? std::max(a.levels.size(), b.levels.size())
                                    : std::min(a.levels.size(), b.levels.size());
    for (std::size_t n = 0; n < len; ++n) {
        const Subgroup& x = a.levels[std::min(n, a.levels.size() - 1)];
        const Subgroup& y = b.levels[std::min(n, b.levels.size() - 1)];
        c.levels.push_back(x.intersect(y));
    }
    return c;
}

std::optional<std::string> check_compatible(const FilteredSpace& space, const ChainFiltration& chain) {
    if (chain.levels.empty() || chain.levels.front().dim() != space.dim()) return std::string("G^0 != M");
    const int N = space.ring().precision();
    const auto len = static_cast<int>(chain.levels.size());
    for (int n = 0; n < len; ++n) {
        if (n > 0 && !chain.levels[static_cast<std::size_t>(n)].is_subset_of(chain.levels[static_cast<std::size_t>(n - 1)]))
            return "(0, " + std::to_string(n) + ")";
        for (int i = 1; i <= N && n + i < len; ++i) {
            const Subgroup lhs = product(space, Subgroup::level(space.ring().coords(), i),
                                         chain.levels[static_cast<std::size_t>(n)]);
            if (!lhs.is_subset_of(chain.levels[static_cast<std::size_t>(n + i)]))
                return "(" + std::to_string(i) + ", " + std::to_string(n) + ")";
        }
    }
    return std::nullopt;
}

HilbertReport chain_hilbert(const FilteredSpace& space, const ChainFiltration& chain, int window) {
    std::vector<long long> ell;
    for (const auto& g : chain.levels) ell.push_back(static_cast<long long>(space.dim() - g.dim()));
    const int precision = static_cast<int>(chain.levels.size()) - 2;
    return hilbert_from_lengths(std::move(ell), precision, window, chain.exact);
}

DimensionReport dimension(const FilteredSpace& space, int window, std::optional<int> ar_constant) {
    const HilbertReport h = hilbert(GradedView(space), window);
    DimensionReport rep;
    rep.delta = h.delta();
    rep.alpha = h.alpha();
    rep.precision = space.precision();
    rep.window = window;
    rep.provenance = std::string("stored filtration, precision ") + std::to_string(rep.precision) + ", window " +
                     std::to_string(window) + (space.coords()->exact() ? ", exact" : ", truncated");
    if (!ar_constant) return rep;

    const ChainFiltration stored = stored_filtration(space);
    const ChainFiltration madic = madic_filtration(space, *ar_constant);
    for (const ChainFiltration& alt :
         {shifted_filtration(space), madic, intersect_filtrations(stored, madic)}) {
        DimensionReport::Alternative a;
        a.name = alt.name;
        a.compatible = !check_compatible(space, alt).has_value();
        const HilbertReport ah = chain_hilbert(space, alt, window);
        a.stable = ah.stable;
        if (ah.stable) a.delta = ah.delta();
        if (a.stable && a.compatible && a.delta != rep.delta) rep.invariant = false;
        rep.alternatives.push_back(a);
    }
    return rep;
}

}  // namespace cfa
