#include "cfa/central_ext.hpp"

#include <algorithm>
#include <random>

#include "cfa/errors.hpp"

namespace cfa {

Subgroup CentralExtension::image(const Subgroup& s) const {
    std::vector<Vector> rows;
    for (const auto& r : s.basis()) rows.push_back(t_op.apply(r));
    return Subgroup::span(space.coords(), rows);
}

Matrix multiplication_operator(const FilteredSpace& space, const Vector& r) {
    Matrix t(space.field(), space.dim(), space.dim());
    for (std::size_t k = 0; k < space.dim(); ++k) {
        const Vector col = space.act(r, space.coords()->unit_vector(k));
        for (std::size_t i = 0; i < space.dim(); ++i) t(i, k) = col[i];
    }
    return t;
}

namespace {

Subgroup madic(const FilteredSpace& space, int n) {
    return product(space, Subgroup::level(space.ring().coords(), n), Subgroup::whole(space.coords()));
}

}  // namespace

CentralExtension build_extension(const FilteredSpace& space, Matrix t_op) {
    const Coordinates& mc = *space.coords();
    const Coordinates& rc = *space.ring().coords();
    if (t_op.rows() != space.dim() || t_op.cols() != space.dim())
        throw BadParams("T operator must be a square matrix on the space");
    CentralExtension ext{space, std::move(t_op), {}};

    for (std::size_t i = 0; i < rc.dim(); ++i) {
        for (std::size_t k = 0; k < mc.dim(); ++k) {
            const Vector m = mc.unit_vector(k);
            if (ext.apply_t(space.act_basis(i, m)) != space.act_basis(i, ext.apply_t(m)))
                throw NotCentral("T(" + rc.names()[i] + "·" + mc.names()[k] + ") != " + rc.names()[i] + "·T(" +
                                 mc.names()[k] + ")");
        }
    }

    const Subgroup mM = madic(space, 1);
    const std::size_t top = space.dim() - mM.dim();
    for (std::size_t k = 0; k < mc.dim(); ++k) {
        Vector v = mc.unit_vector(k);
        for (std::size_t s = 0; s < top; ++s) v = ext.apply_t(v);
        if (!mM.contains(v))
            throw NotNilpotentModM("T^" + std::to_string(top) + "(" + mc.names()[k] + ") is not in 𝔪M");
    }

    // T^k M until the image sequence stabilizes
    std::vector<Subgroup> powers{Subgroup::whole(space.coords())};
    for (;;) {
        Subgroup next = ext.image(powers.back());
        const bool same = next == powers.back();
        powers.push_back(std::move(next));
        if (same) break;
    }
    ext.k_table.assign(static_cast<std::size_t>(space.precision()) + 1, 0);
    for (int j = 1; j <= space.precision(); ++j) {
        const Subgroup target = madic(space, j);
        int found = 0;
        for (std::size_t k = 1; k < powers.size() && found == 0; ++k)
            if (powers[k].is_subset_of(target)) found = static_cast<int>(k);
        if (found == 0)
            throw PropertyViolation("no power of T maps M into 𝔪^" + std::to_string(j) + "M");
        ext.k_table[static_cast<std::size_t>(j)] = found;
    }
    return ext;
}

std::vector<Subgroup> n_adic_levels(const CentralExtension& ext, int count) {
    const Subgroup m = Subgroup::level(ext.space.ring().coords(), 1);
    std::vector<Subgroup> out{Subgroup::whole(ext.space.coords())};
    while (static_cast<int>(out.size()) < count) {
        const Subgroup& s = out.back();
        out.push_back(product(ext.space, m, s) + ext.image(s));
    }
    return out;
}

ExtensionDimension dim_over_extension(const CentralExtension& ext, int ar_constant, int window) {
    const FilteredSpace& space = ext.space;
    const int P = space.precision();
    const bool exact = space.coords()->exact();
    ExtensionDimension out;
    out.trusted = exact ? P + 1 : P + 1 - ar_constant;
    if (out.trusted < 0) out.trusted = 0;

    std::vector<Subgroup> levels = n_adic_levels(ext, out.trusted + 1);
    if (exact) {
        // known exactly; run on until the chain stops moving
        const Subgroup m = Subgroup::level(space.ring().coords(), 1);
        while (levels.size() < 2 || !(levels[levels.size() - 1] == levels[levels.size() - 2])) {
            const Subgroup& s = levels.back();
            levels.push_back(product(space, m, s) + ext.image(s));
        }
        out.trusted = static_cast<int>(levels.size()) - 1;
    }
    for (const auto& s : levels) out.L.push_back(static_cast<long long>(space.dim() - s.dim()));

    // Σ_j T^j(𝔪^{k-j} M)
    for (int k = 0; k <= out.trusted && out.reassociation_ok; ++k) {
        Subgroup acc = Subgroup::zero(space.coords());
        for (int j = 0; j <= k; ++j) {
            Subgroup piece = madic(space, k - j);
            for (int s = 0; s < j; ++s) piece = ext.image(piece);
            acc = acc + piece;
        }
        out.reassociation_ok = acc == levels[static_cast<std::size_t>(k)];
    }

    const int k1 = ext.k_table.size() > 1 ? ext.k_table[1] : 1;
    for (int k = 1; k * k1 < static_cast<int>(levels.size()) && out.nilpotence_bound_ok; ++k)
        out.nilpotence_bound_ok = levels[static_cast<std::size_t>(k * k1)].is_subset_of(madic(space, k));

    Matrix tn = Matrix::identity(space.field(), space.dim());
    for (int n = 1; n <= 3 && out.inversion_ok; ++n) {
        tn = ext.t_op * tn;
        Matrix a = Matrix::identity(space.field(), space.dim());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = space.field().sub(a(r, c), tn(r, c));
        out.inversion_ok = kernel(a).empty();
    }

    out.fit = fit_sequence(out.L, window, exact);
    out.stable = true;
    out.delta_R = hilbert(GradedView(space), window).delta();
    out.invariant = out.fit->degree == out.delta_R;
    return out;
}

ChainFiltration theta_filtration(const CentralExtension& ext) {
    const FilteredSpace& space = ext.space;
    const int P = space.precision();
    std::vector<Subgroup> tm{Subgroup::whole(space.coords())};
    for (int j = 1; j <= P + 1; ++j) tm.push_back(ext.image(tm.back()));
    ChainFiltration c{"theta", {}, space.coords()->exact()};
    for (int n = 0; n <= P + 1; ++n) {
        Subgroup acc = tm[static_cast<std::size_t>(n)];
        for (int j = 0; j < n; ++j) {
            Subgroup piece = Subgroup::level(space.coords(), n - j);
            for (int s = 0; s < j; ++s) piece = ext.image(piece);
            acc = acc + piece;
        }
        c.levels.push_back(std::move(acc));
    }
    return c;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vector> default_spanners(const FilteredSpace& space) {
    std::vector<Vector> out;
    for (const auto& g : graded_generators(space)) out.push_back(g.element);
    return out;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

std::vector<Vector> candidate_elements(const FilteredSpace& space, const std::vector<Vector>& spanners,
                                       std::mt19937_64& rng, const TorsionOptions& opt) {
    const PrimeField& f = space.field();
    const int vmax = space.precision() / 2;
    std::vector<Vector> out;
    for (const auto& s : spanners)
        if (!is_zero(s) && space.valuation(s) <= vmax) out.push_back(s);

    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < space.dim() && small; ++i) {
        total *= f.modulus();
        small = total <= 4096;
    }
    if (opt.exhaustive && small) {
        for (std::uint64_t code = 1; code < total; ++code) {
            Vector v(space.dim(), 0);
            std::uint64_t c = code;
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] = static_cast<Scalar>(c % f.modulus());
                c /= f.modulus();
            }
            if (space.valuation(v) <= vmax) out.push_back(std::move(v));
        }
        return out;
    }
    if (spanners.empty()) return out;
    std::uniform_int_distribution<std::uint32_t> coeff(0, f.modulus() - 1);
    const int wanted = opt.samples;
    for (int attempt = 0; attempt < 20 * wanted && static_cast<int>(out.size()) < wanted + static_cast<int>(spanners.size());
         ++attempt) {
        Vector acc(space.dim(), 0);
        for (const auto& s : spanners) {
            Vector r(space.ring().dim());
            for (auto& x : r) x = coeff(rng);
            const Vector rs = space.act(r, s);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = f.add(acc[k], rs[k]);
        }
        if (!is_zero(acc) && space.valuation(acc) <= vmax) out.push_back(std::move(acc));
    }
    return out;
}

int cap_for(const FilteredSpace& space, const Vector& x, const TorsionOptions& opt) {
    return opt.tau ? *opt.tau : default_annihilator_cap(space, x);
}

bool has_witness(const FilteredSpace& space, const Vector& x, const TorsionOptions& opt) {
    return !annihilator(space, x, cap_for(space, x, opt)).empty();
}

struct DistinguishedSample {
    int examined = 0;
    bool all_have_witness = true;
    std::optional<Vector> witness_free;
};

DistinguishedSample sample_distinguished(const FilteredSpace& space, const std::vector<Vector>& spanners,
                                         std::uint64_t seed, const TorsionOptions& opt) {
    std::mt19937_64 rng(seed);
    DistinguishedSample out;
    for (const auto& x : candidate_elements(space, spanners, rng, opt)) {
        if (!distinguished(space, x, DistinguishedMode::Plain).holds) continue;
        ++out.examined;
        if (!has_witness(space, x, opt)) {
            out.all_have_witness = false;
            if (!out.witness_free) out.witness_free = x;
        }
    }
    return out;
}

void require_domain(const FilteredSpace& space, const TorsionOptions& opt, std::optional<ZeroDivisorWitness>* found) {
    if (!opt.domain_asserted) throw DomainNotAsserted("gr(R) must be asserted to be a domain (--domain)");
    auto w = domain_refute(space.ring_ptr(), std::min(space.ring().precision(), 6));
    if (w) {
        const auto& co = *space.ring().coords();
        throw DomainNotAsserted("gr(R) has zero divisors: σ(" + co.format(w->left) + ")·σ(" + co.format(w->right) +
                                ") = 0");
    }
    if (found) *found = w;
}

}  // namespace

TorsionReport torsion_equivalence_check(const FilteredSpace& space, const TorsionOptions& opt) {
    TorsionReport rep;
    require_domain(space, opt, &rep.zero_divisor);
    rep.delta_R = krull_dim(GradedView::of_ring(space.ring_ptr()), opt.window);
    rep.zero_space = space.dim() == 0;

    std::vector<Vector> spanners = opt.spanners ? *opt.spanners : default_spanners(space);
    auto spanning_ok = [&](const std::vector<Vector>& xs) {
        Subgroup acc = Subgroup::zero(space.coords());
        for (const auto& x : xs) acc = acc + span(space, {x});
        return acc.dim() == space.dim();
    };
    auto good = [&](const Vector& x) {
        return distinguished(space, x, DistinguishedMode::MAdic).holds && has_witness(space, x, opt);
    };
    rep.hypothesis_met = spanning_ok(spanners) && std::all_of(spanners.begin(), spanners.end(), good);
    if (opt.spanners && !rep.hypothesis_met)
        throw HypothesisNotMet("the given spanning set is not made of 𝔪-adically distinguished elements with "
                               "annihilator witnesses spanning M");

    if (rep.zero_space) {
        rep.S1 = rep.S2 = rep.S3 = rep.agree = true;
        return rep;
    }
    rep.delta_M = krull_dim(GradedView(space), opt.window);
    rep.S1 = rep.delta_M <= rep.delta_R - 1;

    const DistinguishedSample sample = sample_distinguished(space, spanners, opt.seed, opt);
    rep.sample_size = sample.examined;
    rep.S2 = sample.all_have_witness;
    rep.witness_free = sample.witness_free;

    // greedy search for a spanning set of good elements
    std::mt19937_64 rng(opt.seed ^ 0x5eedULL);
    std::vector<Vector> candidates = candidate_elements(space, spanners, rng, opt);
    for (std::size_t k = 0; k < space.dim(); ++k) candidates.push_back(space.coords()->unit_vector(k));
    Subgroup acc = Subgroup::zero(space.coords());
    for (const auto& x : candidates) {
        if (acc.dim() == space.dim()) break;
        if (acc.contains(x) || !good(x)) continue;
        acc = acc + span(space, {x});
    }
    rep.S3 = acc.dim() == space.dim();
    rep.agree = rep.S1 == rep.S2 && rep.S2 == rep.S3;
    return rep;
}

PseudoNullReport pseudo_null_filtration_test(const CentralExtension& ext, int ar_constant, const TorsionOptions& opt) {
    const FilteredSpace& space = ext.space;
    require_domain(space, opt, nullptr);
    PseudoNullReport rep;
    rep.delta_R = krull_dim(GradedView::of_ring(space.ring_ptr()), opt.window);
    const int ring_ext_dim = rep.delta_R + 1;

    if (space.dim() == 0) {
        rep.T1 = rep.T2 = rep.T3 = rep.agree = rep.verdict = true;
        return rep;
    }
    const ExtensionDimension nd = dim_over_extension(ext, ar_constant, opt.window);
    rep.delta_n = nd.fit->degree;
    const HilbertReport th = chain_hilbert(space, theta_filtration(ext), opt.window);
    if (!th.stable) throw PrecisionTooLow("theta filtration fit did not stabilize");
    rep.delta_theta = th.delta();

    const bool pn_n = pseudo_null_test(ring_ext_dim, rep.delta_n);
    const bool pn_theta = pseudo_null_test(ring_ext_dim, rep.delta_theta);
    rep.T2 = pn_n || pn_theta;
    rep.T3 = pn_n && pn_theta;

    const DistinguishedSample sample = sample_distinguished(space, default_spanners(space), opt.seed + 1, opt);
    rep.sample_size = sample.examined;
    rep.T1 = sample.all_have_witness;
    rep.verdict = rep.delta_R - nd.delta_R >= 1;
    rep.agree = rep.T1 == rep.T2 && rep.T2 == rep.T3;
    return rep;
}

}  // namespace cfa
