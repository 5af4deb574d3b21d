#include "cfa/rees.hpp"

#include <algorithm>

#include "cfa/errors.hpp"

namespace cfa {

namespace {

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

void add_into(const PrimeField& f, Vector& acc, const Vector& v) {
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (v[k] != 0) acc[k] = f.add(acc[k], v[k]);
}

}  // namespace

int ReesPolynomial::degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        if (!is_zero(coeffs[static_cast<std::size_t>(j)])) return j;
    return -1;
}

bool satisfies_rees_condition(const FilteredSpace& space, const ReesPolynomial& alpha) {
    for (std::size_t j = 0; j < alpha.coeffs.size(); ++j)
        if (space.valuation(alpha.coeffs[j]) < static_cast<int>(j)) return false;
    return true;
}

ReesPolynomial rees_multiply(const FilteredSpace& space, const ReesPolynomial& r, const ReesPolynomial& m, int cap) {
    ReesPolynomial out;
    const int top = std::min(cap, std::max(0, r.degree()) + std::max(0, m.degree()));
    out.coeffs.assign(static_cast<std::size_t>(top) + 1, space.coords()->zero());
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
        if (is_zero(r.coeffs[i])) continue;
        for (std::size_t j = 0; j < m.coeffs.size(); ++j) {
            if (static_cast<int>(i + j) > top || is_zero(m.coeffs[j])) continue;
            add_into(space.field(), out.coeffs[i + j], space.act(r.coeffs[i], m.coeffs[j]));
        }
    }
    return out;
}

LeadingData leading_monomial(const FilteredSpace& space, const ReesPolynomial& alpha) {
    LeadingData out;
    out.degree = alpha.degree();
    if (out.degree < 0) {
        out.valuation = space.precision() + 1;
        return out;
    }
    out.coefficient = alpha.coeffs[static_cast<std::size_t>(out.degree)];
    out.valuation = space.valuation(out.coefficient);
    out.principal = space.coords()->homogeneous_part(out.coefficient, out.valuation);
    return out;
}

std::optional<std::string> check_rees_bigrading(const FilteredSpace& space, int cap) {
    const Coordinates& rc = *space.ring().coords();
    const Coordinates& mc = *space.coords();
    for (std::size_t i = 0; i < rc.dim(); ++i) {
        const int vi = rc.valuation_of_basis(i);
        for (std::size_t k = 0; k < mc.dim(); ++k) {
            const int vk = mc.valuation_of_basis(k);
            const int v = space.valuation(space.act_basis(i, mc.unit_vector(k)));
            const int need = std::min(vi + vk, mc.precision() + 1);
            for (int a = 0; a <= std::min(vi, cap); ++a) {
                for (int b = 0; b <= std::min(vk, cap - a); ++b) {
                    // slice (vi, a) times slice (vk, b) must land in (>= vi + vk, a + b)
                    if (v < need || v < std::min(a + b, mc.precision() + 1)) {
                        return "(" + std::to_string(vi) + "," + std::to_string(a) + ")·(" + std::to_string(vk) + "," +
                               std::to_string(b) + ") via " + rc.names()[i] + "·" + mc.names()[k];
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

LeadingCoefficientSpaces leading_coefficient_spaces(const FilteredSpace& space,
                                                    const std::vector<ReesPolynomial>& generators, int cap,
                                                    bool rees) {
    if (cap < 0) throw BadParams("degree cap must be non-negative");
    const std::size_t dim = space.dim();
    const std::size_t K = static_cast<std::size_t>(cap);
    const Coordinates& rc = *space.ring().coords();
    // block K - j holds the X^j coefficient, so echelon pivots see the top degree first
    auto flatten = [&](const ReesPolynomial& p) {
        Vector v((K + 1) * dim, 0);
        for (std::size_t j = 0; j < p.coeffs.size() && j <= K; ++j)
            std::copy(p.coeffs[j].begin(), p.coeffs[j].end(), v.begin() + static_cast<long>((K - j) * dim));
        return v;
    };
    auto unflatten = [&](const Vector& v) {
        ReesPolynomial p;
        for (std::size_t j = 0; j <= K; ++j)
            p.coeffs.emplace_back(v.begin() + static_cast<long>((K - j) * dim),
                                  v.begin() + static_cast<long>((K - j + 1) * dim));
        return p;
    };

    EchelonBasis closure(space.field(), (K + 1) * dim);
    std::vector<Vector> queue;
    for (const auto& g : generators) {
        Vector v = flatten(g);
        if (closure.insert(v)) queue.push_back(std::move(v));
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const ReesPolynomial f = unflatten(queue[q]);
        for (std::size_t b = 0; b < rc.dim(); ++b) {
            const int vb = rc.valuation_of_basis(b);
            for (std::size_t i = 0; i <= K; ++i) {
                if (rees && static_cast<int>(i) > vb) break;
                ReesPolynomial prod;
                prod.coeffs.assign(K + 1, space.coords()->zero());
                bool nonzero = false;
                for (std::size_t j = 0; j + i <= K; ++j) {
                    prod.coeffs[i + j] = space.act_basis(b, f.coeffs[j]);
                    nonzero = nonzero || !is_zero(prod.coeffs[i + j]);
                }
                if (!nonzero) continue;
                Vector v = flatten(prod);
                if (closure.insert(v)) queue.push_back(std::move(v));
            }
        }
    }

    std::vector<std::vector<Vector>> lead(K + 1);
    const auto rows = closure.canonical_rows();
    const auto pivots = closure.sorted_pivots();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t block = pivots[r] / dim;
        const std::size_t j = K - block;
        lead[j].emplace_back(rows[r].begin() + static_cast<long>(block * dim),
                             rows[r].begin() + static_cast<long>((block + 1) * dim));
    }
    LeadingCoefficientSpaces out;
    for (std::size_t j = 0; j <= K; ++j) out.spaces.push_back(Subgroup::span(space.coords(), lead[j]));
    if (!rees && K >= 1 && !(out.spaces[K - 1] == out.spaces[K]))
        throw CapTooLow("leading-coefficient chain still growing at cap " + std::to_string(cap));
    out.stabilization_index = cap;
    while (out.stabilization_index > 0 &&
           out.spaces[static_cast<std::size_t>(out.stabilization_index - 1)] == out.spaces[K])
        --out.stabilization_index;
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Subgroup> rees_slices(const FilteredSpace& space, const Subgroup& sub) {
    std::vector<Subgroup> out;
    for (int n = 0; n <= space.precision(); ++n) out.push_back(sub.intersect(Subgroup::level(space.coords(), n)));
    return out;
}

namespace {

void add_generator_span(const FilteredSpace& space, EchelonBasis& acc, int n, const GradedGenerator& g) {
    if (g.degree > n) return;
    const Subgroup fr = Subgroup::level(space.ring().coords(), n - g.degree);
    for (const auto& r : fr.basis()) {
        if (acc.full()) return;
        acc.insert(space.act(r, g.element));
    }
}

}  // namespace

SpanningSet extract_spanning_set(const FilteredSpace& space, const std::vector<Subgroup>& slices, int window) {
    const int P = space.precision();
    if (slices.size() != static_cast<std::size_t>(P) + 1)
        throw BadParams("expected one slice per degree 0.." + std::to_string(P));
    SpanningSet out;
    for (int n = 0; n <= P; ++n) {
        EchelonBasis acc(space.field(), space.dim());
        for (const auto& g : out.generators) add_generator_span(space, acc, n, g);
        for (const auto& row : slices[static_cast<std::size_t>(n)].basis()) {
            if (acc.contains(row)) continue;
            GradedGenerator g{n, row};
            add_generator_span(space, acc, n, g);
            out.generators.push_back(std::move(g));
        }
    }
    for (int n = 0; n <= P; ++n) {
        EchelonBasis acc(space.field(), space.dim());
        for (const auto& g : out.generators) add_generator_span(space, acc, n, g);
        if (!(Subgroup::from_basis(space.coords(), acc) == slices[static_cast<std::size_t>(n)]))
            throw VerificationFailed("slice " + std::to_string(n) + " is not spanned by the extracted generators");
    }
    if (!space.coords()->exact())
        for (const auto& g : out.generators) out.stable = out.stable && g.degree <= P - window;
    return out;
}

// ---------------------------------------------------------------------------

ArtinReesReport artin_rees_constant(const FilteredSpace& space, int window) {
    const int P = space.precision();
    const auto& rc = space.ring().coords();
    ArtinReesReport rep;
    rep.precision = P;
    rep.window = window;
    rep.exact = space.coords()->exact();
    rep.pass.resize(static_cast<std::size_t>(P) + 1);
    for (int d = 0; d <= P; ++d) {
        const Subgroup fd = Subgroup::level(space.coords(), d);
        for (int n = 0; n + d <= P; ++n) {
            const bool ok = product(space, Subgroup::level(rc, n), fd) == Subgroup::level(space.coords(), n + d);
            rep.pass[static_cast<std::size_t>(d)].push_back(ok);
        }
    }
    rep.D = P;
    for (int d = P; d >= 0; --d) {
        const auto& row = rep.pass[static_cast<std::size_t>(d)];
        if (!std::all_of(row.begin(), row.end(), [](bool b) { return b; })) break;
        rep.D = d;
    }
    for (int d = rep.D; d <= P; ++d) rep.verified_pairs += static_cast<int>(rep.pass[static_cast<std::size_t>(d)].size());
    rep.found = rep.exact || rep.D + window <= P;
    return rep;
}

}  // namespace cfa
