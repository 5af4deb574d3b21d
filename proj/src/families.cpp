#include "cfa/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "cfa/errors.hpp"
#include "cfa/products.hpp"
#include "cfa/space_ops.hpp"

namespace cfa {

std::vector<std::string> variable_names(int vars) {
    if (vars == 1) return {"t"};
    if (vars == 2) return {"x", "y"};
    if (vars == 3) return {"x", "y", "z"};
    std::vector<std::string> out;
    for (int i = 1; i <= vars; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

std::string monomial_name(const Monomial& m, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[i];
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

namespace {

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// all exponent vectors of total degree d, x_1 exponent descending first
void monomials_of_degree(int vars, int d, std::vector<Monomial>& out) {
    Monomial cur(static_cast<std::size_t>(vars), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == vars - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, d);
}

struct MonomialBasis {
    std::vector<Monomial> monos;
    std::map<Monomial, std::size_t> index;
    std::vector<std::string> names;
};

MonomialBasis surviving_monomials(int vars, const std::vector<Monomial>& killed, int precision) {
    MonomialBasis b;
    const auto vnames = variable_names(vars);
    for (int d = 0; d <= precision; ++d) {
        std::vector<Monomial> layer;
        monomials_of_degree(vars, d, layer);
        for (auto& m : layer) {
            if (std::any_of(killed.begin(), killed.end(), [&](const Monomial& k) { return divides(k, m); })) continue;
            b.index[m] = b.monos.size();
            b.names.push_back(monomial_name(m, vnames));
            b.monos.push_back(std::move(m));
        }
    }
    return b;
}

bool top_layer_dies(int vars, const std::vector<Monomial>& killed, int precision) {
    std::vector<Monomial> layer;
    monomials_of_degree(vars, precision + 1, layer);
    return std::all_of(layer.begin(), layer.end(), [&](const Monomial& m) {
        return std::any_of(killed.begin(), killed.end(), [&](const Monomial& k) { return divides(k, m); });
    });
}

Monomial add(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

void check_family_args(const PrimeField&, int vars, int precision) {
    if (vars < 1 || vars > 8) throw BadParams("number of variables must be in 1..8");
    if (precision < 0) throw BadParams("precision must be non-negative");
}

}  // namespace

AlgebraPtr powerseries(const PrimeField& field, int vars, const std::vector<Monomial>& killed, int precision) {
    check_family_args(field, vars, precision);
    for (const auto& k : killed) {
        if (static_cast<int>(k.size()) != vars) throw BadParams("killed monomial has the wrong number of exponents");
        if (degree(k) < 1) throw BadParams("cannot kill the unit monomial");
    }
    const MonomialBasis b = surviving_monomials(vars, killed, precision);
    AlgebraBuilder builder(field, precision, top_layer_dies(vars, killed, precision));
    for (std::size_t i = 0; i < b.monos.size(); ++i) builder.basis(b.names[i], degree(b.monos[i]));
    builder.unit("1");
    for (std::size_t i = 1; i < b.monos.size(); ++i) {
        for (std::size_t j = 1; j < b.monos.size(); ++j) {
            auto it = b.index.find(add(b.monos[i], b.monos[j]));
            if (it != b.index.end()) builder.product(b.names[i], b.names[j], {{b.names[it->second], 1}});
        }
    }
    return builder.build();
}

AlgebraPtr deformation(const PrimeField& field, int vars, long long lambda, int precision) {
    check_family_args(field, vars, precision);
    const MonomialBasis b = surviving_monomials(vars, {}, precision);
    Monomial x1(static_cast<std::size_t>(vars), 0), xk(static_cast<std::size_t>(vars), 0);
    x1[0] = 1;
    xk[static_cast<std::size_t>(vars - 1)] += 1;
    AlgebraBuilder builder(field, precision, false);
    for (std::size_t i = 0; i < b.monos.size(); ++i) builder.basis(b.names[i], degree(b.monos[i]));
    builder.unit("1");
    for (std::size_t i = 1; i < b.monos.size(); ++i) {
        for (std::size_t j = 1; j < b.monos.size(); ++j) {
            std::vector<std::pair<std::string, long long>> terms;
            const Monomial prod = add(b.monos[i], b.monos[j]);
            if (auto it = b.index.find(prod); it != b.index.end()) terms.push_back({b.names[it->second], 1});
            if (b.monos[i] == x1 && b.monos[j][0] >= 1) {
                if (auto it = b.index.find(add(prod, xk)); it != b.index.end())
                    terms.push_back({b.names[it->second], lambda});
            }
            if (!terms.empty()) builder.product(b.names[i], b.names[j], std::move(terms));
        }
    }
    return builder.build();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw BadParams("expected an integer for " + what + ", got '" + s + "'");
    }
}

Monomial parse_monomial(const std::string& text, int vars) {
    const auto names = variable_names(vars);
    Monomial m(static_cast<std::size_t>(vars), 0);
    for (const auto& factor : split(text, '*')) {
        auto caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        const int e = caret == std::string::npos ? 1 : parse_int(factor.substr(caret + 1), "exponent");
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end() || e < 1) throw BadParams("bad monomial factor '" + factor + "'");
        m[static_cast<std::size_t>(it - names.begin())] += e;
    }
    return m;
}

}  // namespace

FamilySpec parse_family(const std::string& text) {
    const auto parts = split(text, ':');
    FamilySpec spec;
    if (parts.empty()) throw BadParams("empty family specification");
    spec.id = parts[0];
    if (spec.id != "powerseries" && spec.id != "deformation")
        throw BadParams("unknown family '" + spec.id + "' (expected powerseries or deformation)");
    if (parts.size() >= 2) spec.vars = parse_int(parts[1], "number of variables");
    if (spec.vars < 1 || spec.vars > 8) throw BadParams("number of variables must be in 1..8");
    if (spec.id == "deformation") {
        if (parts.size() < 2) spec.vars = 2;
        if (parts.size() >= 3) spec.lambda = parse_int(parts[2], "lambda");
        if (parts.size() > 3) throw BadParams("deformation takes at most two arguments");
    } else {
        if (parts.size() >= 3 && !parts[2].empty())
            for (const auto& m : split(parts[2], ',')) spec.killed.push_back(parse_monomial(m, spec.vars));
        if (parts.size() > 3) throw BadParams("powerseries takes at most two arguments");
    }
    return spec;
}

std::string format_family(const FamilySpec& spec) {
    std::string out = spec.id + ":" + std::to_string(spec.vars);
    if (spec.id == "deformation") return out + ":" + std::to_string(spec.lambda);
    if (!spec.killed.empty()) {
        out += ":";
        const auto names = variable_names(spec.vars);
        for (std::size_t i = 0; i < spec.killed.size(); ++i)
            out += (i ? "," : "") + monomial_name(spec.killed[i], names);
    }
    return out;
}

AlgebraPtr build_family(const FamilySpec& spec, const PrimeField& field, int precision) {
    if (spec.id == "powerseries") return powerseries(field, spec.vars, spec.killed, precision);
    if (spec.id == "deformation") return deformation(field, spec.vars, spec.lambda, precision);
    throw BadParams("unknown family '" + spec.id + "'");
}

// ---------------------------------------------------------------------------

CoherenceReport tower_coherence(const TruncatedFilteredAlgebra& upper, const TruncatedFilteredAlgebra& lower) {
    const Coordinates& uc = *upper.coords();
    const Coordinates& lc = *lower.coords();
    CoherenceReport rep;
    std::vector<long> to_upper(lc.dim());
    for (std::size_t k = 0; k < lc.dim(); ++k) {
        to_upper[k] = uc.index_of(lc.names()[k]);
        if (to_upper[k] < 0 || uc.valuation_of_basis(static_cast<std::size_t>(to_upper[k])) != lc.valuation_of_basis(k)) {
            rep.coherent = false;
            rep.witness = "basis element " + lc.names()[k] + " has no counterpart one level up";
            return rep;
        }
    }
    for (std::size_t i = 0; i < lc.dim(); ++i) {
        for (std::size_t j = 0; j < lc.dim(); ++j) {
            std::map<std::string, Scalar> lo, up;
            for (const Term& t : lower.basis_product(i, j)) lo[lc.names()[t.index]] = t.coeff;
            for (const Term& t : upper.basis_product(static_cast<std::size_t>(to_upper[i]), static_cast<std::size_t>(to_upper[j])))
                if (uc.valuation_of_basis(t.index) <= lc.precision()) up[uc.names()[t.index]] = t.coeff;
            if (lo != up) {
                rep.coherent = false;
                rep.witness = lc.names()[i] + "*" + lc.names()[j];
                return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

FilteredSpace ideal_space(const AlgebraPtr& ring, const std::vector<Vector>& gens) {
    const auto regular = FilteredSpace::regular(ring);
    return induced_subspace(regular, generated_subspace(regular, gens).subspace).space;
}

FilteredSpace quotient_by_ideal(const AlgebraPtr& ring, const std::vector<Vector>& gens) {
    const auto regular = FilteredSpace::regular(ring);
    return quotient_space(regular, generated_subspace(regular, gens).subspace).space;
}

FilteredSpace cyclic_space(const AlgebraPtr& ring, const Vector& x) {
    const int v = ring->valuation(x);
    if (v > ring->precision()) throw BadParams("cyclic space of the zero element");
    const auto regular = FilteredSpace::regular(ring);
    const FilteredSpace l = induced_subspace(regular, generated_subspace(regular, {x}).subspace).space;
    FilteredSpace m = shifted(l, -v);
    const auto gens = graded_generators(m);
    if (gens.size() != 1 || gens.front().degree != 0)
        throw BadParams("gr of the generated subspace is not cyclic on the principal part of " +
                        ring->coords()->format(x));
    return m;
}

DerivedSpace derive_space(const AlgebraPtr& ring, const std::string& how, const std::vector<Vector>& gens) {
    auto regular = FilteredSpace::regular(ring);
    if (how == "regular") {
        if (!gens.empty()) throw BadParams("the regular space takes no generators");
        return {regular, [](const Vector& r) { return r; }};
    }
    if (gens.empty()) throw BadParams(how + " needs at least one generator");
    if (how == "quotient") {
        auto model = std::make_shared<QuotientModel>(quotient_space(regular, generated_subspace(regular, gens).subspace));
        return {model->space, [model](const Vector& r) { return model->project(r); }};
    }
    if (how != "ideal" && how != "cyclic") throw BadParams("unknown space derivation '" + how + "'");
    if (how == "cyclic" && gens.size() != 1) throw BadParams("cyclic takes exactly one generator");
    auto model = std::make_shared<SubspaceModel>(induced_subspace(regular, generated_subspace(regular, gens).subspace));
    FilteredSpace space = how == "ideal" ? model->space : cyclic_space(ring, gens.front());
    return {space, [model](const Vector& r) { return model->from_ambient(r); }};
}

FilteredSpace skew_chain_space(const PrimeField& field) {
    const AlgebraPtr ring = powerseries(field, 1, {}, 3);
    auto coords = std::make_shared<const Coordinates>(field, 3, std::vector<std::string>{"m0", "m1", "m2", "m3"},
                                                      std::vector<int>{0, 1, 2, 3}, false);
    BilinearTable act(ring->dim(), 4, 4);
    for (std::uint32_t k = 0; k < 4; ++k) act.set(ring->unit_index(), k, {{k, 1}});
    const auto idx = [&](const char* name) { return static_cast<std::size_t>(ring->coords()->index_of(name)); };
    act.set(idx("t"), 0, {{1, 1}});
    act.set(idx("t^2"), 0, {{2, 1}});
    act.set(idx("t^3"), 0, {{3, 1}});
    act.set(idx("t"), 2, {{3, 1}});
    return FilteredSpace(ring, coords, std::move(act));
}

}  // namespace cfa
