#include "cfa/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cfa/asymptotics.hpp"
#include "cfa/central_ext.hpp"
#include "cfa/families.hpp"
#include "cfa/graded.hpp"
#include "cfa/lifting.hpp"
#include "cfa/presentation.hpp"
#include "cfa/products.hpp"
#include "cfa/rees.hpp"
#include "cfa/report.hpp"
#include "cfa/space_ops.hpp"

namespace cfa {

namespace {

struct Options {
    std::string file;
    std::string family;
    std::uint32_t prime = 2;
    int precision = -1;
    int window = 3;
    std::uint64_t seed = 0;
    int tau = -1;
    bool slow_exhaustive = false;
    std::string out_dir;
    std::string ideal, quotient, cyclic;
    std::string element, target, spanners;
    std::string t_op;
    bool domain = false;
    std::string mode = "both";
    int samples = 16;
    int count = 20;
};

struct Context {
    Options opt;
    Presentation pres;
    LoadedObject obj;
    bool from_family = false;

    const FilteredSpace& space() const { return *obj.space; }
    const AlgebraPtr& ring() const { return obj.ring; }
    std::string object_kind() const { return space().coords()->exact() ? "exact" : "tower"; }
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        const auto b = cur.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(cur.substr(b, cur.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw BadParams("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Context load(const Options& o) {
    Context ctx;
    ctx.opt = o;
    Presentation& p = ctx.pres;
    if (!o.file.empty() && !o.family.empty()) throw BadParams("give either a presentation file or --family, not both");
    if (!o.file.empty()) {
        p = parse_presentation(read_file(o.file));
        if (o.precision >= 0 && o.precision != p.precision) {
            if (!p.family) throw BadParams("--precision can only re-truncate family-based presentations");
            p.precision = o.precision;
        }
    } else if (!o.family.empty()) {
        ctx.from_family = true;
        p.prime = o.prime;
        p.precision = o.precision >= 0 ? o.precision : 6;
        p.kind = "space";
        p.family = o.family;
        p.derive = std::make_pair(std::string("regular"), std::vector<std::string>{});
    } else {
        throw BadParams("no input: give a presentation file or --family SPEC");
    }
    if (o.window < 1) throw BadParams("--window must be at least 1");

    const int derivations = !o.ideal.empty() + !o.quotient.empty() + !o.cyclic.empty();
    if (derivations > 1) throw BadParams("use at most one of --ideal, --quotient, --cyclic");
    if (derivations == 1) {
        if (!p.space_basis.empty()) throw BadParams("--ideal/--quotient/--cyclic need a derived or absent space");
        if (!o.ideal.empty()) p.derive = std::make_pair(std::string("ideal"), split_list(o.ideal));
        if (!o.quotient.empty()) p.derive = std::make_pair(std::string("quotient"), split_list(o.quotient));
        if (!o.cyclic.empty()) p.derive = std::make_pair(std::string("cyclic"), split_list(o.cyclic));
        if (p.kind == "algebra") p.kind = "space";
    }
    if (!o.t_op.empty()) {
        if (p.kind == "algebra") {
            p.kind = "space";
            p.derive = std::make_pair(std::string("regular"), std::vector<std::string>{});
        }
        p.kind = "extension";
        p.t_columns.clear();
        p.t_multiply = o.t_op;
    }
    ctx.obj = build_presentation(p);
    if (!ctx.obj.space) {
        ctx.obj.space = FilteredSpace::regular(ctx.obj.ring);
        ctx.obj.from_ring = [](const Vector& r) { return r; };
    }
    return ctx;
}

Vector space_element(const Context& ctx, const std::string& text) {
    if (ctx.obj.from_ring) return ctx.obj.from_ring(parse_ring_element(*ctx.ring(), text));
    return parse_space_element(*ctx.space().coords(), text);
}

std::vector<Vector> space_elements(const Context& ctx, const std::string& list) {
    std::vector<Vector> out;
    for (const auto& e : split_list(list)) out.push_back(space_element(ctx, e));
    return out;
}

std::string join(const std::vector<long long>& v, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::string polynomial_string(const PolynomialFit& fit) {
    std::string out;
    for (int k = static_cast<int>(fit.power.size()) - 1; k >= 0; --k) {
        const Rational c = fit.power[static_cast<std::size_t>(k)];
        if (c == Rational(0)) continue;
        const std::string mono = k == 0 ? "" : (k == 1 ? "n" : "n^" + std::to_string(k));
        std::string coeff = to_string(c < Rational(0) ? -c : c);
        if (k > 0 && coeff == "1") coeff.clear();
        else if (k > 0) coeff = "(" + coeff + ")";
        if (out.empty()) out += c < Rational(0) ? "-" : "";
        else out += c < Rational(0) ? " - " : " + ";
        out += coeff + mono;
    }
    return out.empty() ? "0" : out;
}

void header(Report& r, const Context& ctx) {
    r.values.set("command", r.name);
    r.values.set("prime", static_cast<long long>(ctx.space().field().modulus()));
    r.values.set("precision", ctx.space().precision());
    r.values.set("ring_precision", ctx.ring()->precision());
    r.values.set("object", ctx.object_kind());
    r.values.set("window", ctx.opt.window);
    r.values.set("seed", std::to_string(ctx.opt.seed));
    r.values.set("ring_dim", ctx.ring()->dim());
    r.values.set("space_dim", ctx.space().dim());
    if (ctx.pres.family) r.values.set("family", *ctx.pres.family);
}

std::string banner(const Context& ctx, const std::string& what) {
    std::ostringstream os;
    os << what << ": p=" << ctx.space().field().modulus() << " N=" << ctx.space().precision()
       << " dim=" << ctx.space().dim() << " W=" << ctx.opt.window << " ("
       << (ctx.space().coords()->exact() ? "exact object" : "truncation of a tower; verdicts hold at this precision")
       << ")\n";
    return os.str();
}

void hilbert_values(KeyValues& kv, const std::string& prefix, const HilbertReport& h) {
    kv.set(prefix + "stable", h.stable);
    if (h.fit) {
        kv.set(prefix + "delta", h.fit->degree);
        kv.set(prefix + "alpha", h.fit->leading);
        kv.set(prefix + "fit_start", h.fit->start);
        kv.set(prefix + "polynomial", polynomial_string(*h.fit));
    }
}

// ---------------------------------------------------------------------------

int cmd_validate(const Context& ctx, std::ostream& out, Report& r) {
    const TruncatedFilteredAlgebra& ring = *ctx.ring();
    std::vector<AxiomCheck> checks;
    for (auto& c : validate(ring).checks) checks.push_back(c);
    for (auto& c : check_clf_graded(ctx.ring()).checks) checks.push_back(c);

    AxiomCheck mult{"filtration-multiplicativity", true, {}};
    const auto& co = ring.coords();
    for (int s = 0; s <= ring.precision() && mult.passed; ++s) {
        for (int i = 0; i <= s && mult.passed; ++i) {
            const Subgroup lhs = product(ctx.ring(), Subgroup::level(co, i), Subgroup::level(co, s - i));
            if (!(lhs == Subgroup::level(co, s))) {
                mult.passed = false;
                mult.witness = "F^" + std::to_string(i) + " F^" + std::to_string(s - i) + " != F^" + std::to_string(s);
            }
        }
    }
    checks.push_back(mult);

    if (ctx.pres.family && ring.precision() >= 1) {
        const auto lower = build_family(parse_family(*ctx.pres.family), ring.field(), ring.precision() - 1);
        const auto coh = tower_coherence(ring, *lower);
        checks.push_back({"tower-coherence", coh.coherent, coh.witness});
    }
    if (ctx.pres.kind != "algebra") {
        for (auto c : validate_space(ctx.space()).checks) {
            c.name = "space-" + c.name;
            checks.push_back(c);
        }
    }
    if (ctx.obj.t_op) {
        AxiomCheck ext{"extension-central-nilpotent", true, {}};
        try {
            build_extension(ctx.space(), *ctx.obj.t_op);
        } catch (const Error& e) {
            ext.passed = false;
            ext.witness = e.code() + ": " + e.what();
        }
        checks.push_back(ext);
    }

    bool all = true;
    out << banner(ctx, "validate");
    for (const auto& c : checks) {
        all = all && c.passed;
        out << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name;
        if (!c.passed) out << "  [" << c.witness << "]";
        out << "\n";
        r.values.set("check." + c.name, c.passed ? "pass" : "fail");
        if (!c.passed) r.values.set("witness." + c.name, c.witness);
    }
    const auto assoc = associativity_witness(ring);
    out << "  associative: " << (assoc ? "no, " + *assoc : std::string("yes (on basis triples)")) << "\n";
    r.values.set("associative", !assoc.has_value());
    if (assoc) r.values.set("associativity_witness", *assoc);
    r.values.set("all_passed", all);
    return all ? 0 : 4;
}

int cmd_gr(const Context& ctx, std::ostream& out, Report& r) {
    const GradedView view(ctx.space());
    const auto h = view.h();
    const auto graded = check_clf_graded(ctx.ring());
    out << banner(ctx, "gr");
    CsvTable t{{"degree", "h"}, {}};
    for (std::size_t i = 0; i < h.size(); ++i) t.rows.push_back({std::to_string(i), std::to_string(h[i])});
    out << "  h: " << join(h) << "\n";
    for (const auto& c : graded.checks) {
        out << "  " << (c.passed ? "pass" : "FAIL") << "  gr(R) " << c.name << (c.passed ? "" : "  [" + c.witness + "]")
            << "\n";
        r.values.set("check." + c.name, c.passed ? "pass" : "fail");
        if (!c.passed) r.values.set("witness." + c.name, c.witness);
    }
    const auto gens = graded_generators(ctx.space());
    out << "  homogeneous generators of gr(M):";
    std::vector<long long> degs;
    for (const auto& g : gens) degs.push_back(g.degree);
    out << (degs.empty() ? " none" : " degrees " + join(degs)) << "\n";
    r.values.set("generator_degrees", join(degs, ";"));
    r.values.set("h", join(h, ";"));
    r.tables.emplace_back("h", std::move(t));
    return graded.all_passed() ? 0 : 4;
}

int cmd_hilbert(const Context& ctx, std::ostream& out, Report& r) {
    const auto rep = hilbert_unchecked(GradedView(ctx.space()), ctx.opt.window);
    out << banner(ctx, "hilbert");
    CsvTable t{{"n", "h", "ell"}, {}};
    for (std::size_t n = 0; n < rep.ell.size(); ++n)
        t.rows.push_back({std::to_string(n), n < rep.h.size() ? std::to_string(rep.h[n]) : "", std::to_string(rep.ell[n])});
    out << "  h(n):   " << join(rep.h) << "\n  ell(n): " << join(rep.ell) << "\n";
    hilbert_values(r.values, "", rep);
    r.tables.emplace_back("series", std::move(t));
    if (!rep.stable) {
        out << "  fit not stable within the last " << ctx.opt.window << " values: raise --precision\n";
        return 3;
    }
    out << "  delta = " << rep.delta() << ", alpha = " << to_string(rep.alpha())
        << ", ell(n) = " << polynomial_string(*rep.fit) << " for n >= " << rep.fit->start << "\n";
    return 0;
}

std::optional<int> ar_constant_if_found(const Context& ctx) {
    const auto ar = artin_rees_constant(ctx.space(), ctx.opt.window);
    if (ar.found) return ar.D;
    return std::nullopt;
}

int cmd_dim(const Context& ctx, std::ostream& out, Report& r) {
    const auto perm = permissible(ctx.space(), ctx.opt.window);
    out << banner(ctx, "dim");
    out << "  permissible: " << (perm.permissible ? "yes" : "no");
    if (!perm.module_check) out << " (gr(M) is not a gr(R)-module: " << perm.module_witness << ")";
    r.values.set("permissible", perm.permissible);
    r.values.set("module_check", perm.module_check);
    if (!perm.permissible) {
        out << "\n";
        return 4;
    }
    const auto D = ar_constant_if_found(ctx);
    const auto rep = dimension(ctx.space(), ctx.opt.window, D);
    out << "\n  delta = " << rep.delta << ", alpha = " << to_string(rep.alpha) << " via " << rep.provenance << "\n";
    CsvTable t{{"filtration", "stable", "compatible", "delta"}, {}};
    for (const auto& a : rep.alternatives) {
        out << "  " << a.name << ": " << (a.stable ? "delta " + std::to_string(a.delta) : std::string("unstable"))
            << (a.compatible ? "" : " (not compatible)") << "\n";
        t.rows.push_back({a.name, a.stable ? "true" : "false", a.compatible ? "true" : "false", std::to_string(a.delta)});
    }
    out << "  invariant across filtrations: " << (rep.invariant ? "yes" : "NO") << "\n";
    r.values.set("delta", rep.delta);
    r.values.set("alpha", rep.alpha);
    r.values.set("provenance", rep.provenance);
    r.values.set("invariant", rep.invariant);
    r.values.set("ar_constant", D ? std::to_string(*D) : std::string("not-found"));
    r.tables.emplace_back("filtrations", std::move(t));
    return rep.invariant ? 0 : 4;
}

int cmd_span(const Context& ctx, std::ostream& out, Report& r) {
    if (ctx.opt.element.empty()) throw BadParams("span needs --element e1,e2,...");
    const auto elems = space_elements(ctx, ctx.opt.element);
    const Subgroup once = span(ctx.space(), elems);
    const auto gen = generated_subspace(ctx.space(), elems);
    const Coordinates& co = *ctx.space().coords();
    out << banner(ctx, "span");
    out << "  dim R.Delta = " << once.dim() << ", generated R-subspace dim = " << gen.subspace.dim() << " after "
        << gen.iterations << " closure iteration(s)\n";
    CsvTable t{{"row", "valuation", "element"}, {}};
    for (std::size_t k = 0; k < gen.subspace.dim(); ++k) {
        out << "    " << co.format(gen.subspace.basis()[k]) << "  (v=" << gen.subspace.row_valuation(k) << ")\n";
        t.rows.push_back({std::to_string(k), std::to_string(gen.subspace.row_valuation(k)), co.format(gen.subspace.basis()[k])});
    }
    r.values.set("span_dim", once.dim());
    r.values.set("generated_dim", gen.subspace.dim());
    r.values.set("iterations", gen.iterations);
    r.values.set("closed_after_one_step", once == gen.subspace);
    r.tables.emplace_back("basis", std::move(t));
    return 0;
}

int cmd_artin_rees(const Context& ctx, std::ostream& out, Report& r) {
    const auto ar = artin_rees_constant(ctx.space(), ctx.opt.window);
    out << banner(ctx, "artin-rees");
    CsvTable grid{{"d", "n", "pass"}, {}};
    for (std::size_t d = 0; d < ar.pass.size(); ++d)
        for (std::size_t n = 0; n < ar.pass[d].size(); ++n)
            grid.rows.push_back({std::to_string(d), std::to_string(n), ar.pass[d][n] ? "true" : "false"});
    r.values.set("D", ar.D);
    r.values.set("found", ar.found);
    r.values.set("verified_pairs", ar.verified_pairs);
    r.tables.emplace_back("grid", std::move(grid));
    if (!ar.found) {
        out << "  no constant D with D + W <= N: raise --precision\n";
        return 3;
    }
    out << "  D = " << ar.D << " (F^{n+d}(M) = F^n(R) F^d(M) for all d >= D, " << ar.verified_pairs
        << " pairs verified)\n";
    std::vector<Subgroup> slices = filtration_chain(ctx.space());
    slices.pop_back();
    const auto spanning = extract_spanning_set(ctx.space(), slices, ctx.opt.window);
    CsvTable gens{{"degree", "element"}, {}};
    out << "  spanning set m_i in degree d_i:\n";
    for (const auto& g : spanning.generators) {
        const std::string e = ctx.space().coords()->format(g.element);
        out << "    d=" << g.degree << "  " << e << "\n";
        gens.rows.push_back({std::to_string(g.degree), e});
    }
    r.values.set("spanning_stable", spanning.stable);
    r.values.set("spanning_size", spanning.generators.size());
    r.tables.emplace_back("spanning", std::move(gens));
    return 0;
}

int cmd_asymptotics(const Context& ctx, std::ostream& out, Report& r) {
    const auto ar = artin_rees_constant(ctx.space(), ctx.opt.window);
    if (!ar.found) throw PrecisionTooLow("no Artin-Rees constant at this precision");
    const auto series = size_series(ctx.space(), ar.D, ctx.opt.window);
    const auto perm = permissible(ctx.space(), ctx.opt.window);
    const auto sandwich = sandwich_check(ctx.space(), ar.D, perm);
    out << banner(ctx, "asymptotics");
    CsvTable t{{"n", "L"}, {}};
    for (std::size_t n = 0; n < series.L.size(); ++n) t.rows.push_back({std::to_string(n), std::to_string(series.L[n])});
    CsvTable s{{"n", "ell_n", "L_n", "ell_n_plus_D", "inclusions", "ok"}, {}};
    for (const auto& row : sandwich.rows)
        s.rows.push_back({std::to_string(row.n), std::to_string(row.ell_n), std::to_string(row.L_n),
                          std::to_string(row.ell_n_plus_D), row.inclusions ? "true" : "false", row.ok ? "true" : "false"});
    out << "  D = " << ar.D << ", L(n) = dim M/m^n M: " << join(series.L) << "\n";
    r.values.set("D", ar.D);
    r.values.set("stable", series.stable);
    r.values.set("sandwich_ok", sandwich.all_ok);
    r.values.set("graded_stable", series.graded_stable);
    r.values.set("match_graded", series.match_graded);
    if (series.fit) {
        r.values.set("delta", series.fit->degree);
        r.values.set("alpha", series.fit->leading);
        r.values.set("polynomial", polynomial_string(*series.fit));
    }
    if (series.graded_stable) {
        r.values.set("graded_delta", series.graded_delta);
        r.values.set("graded_alpha", series.graded_alpha);
    }
    r.tables.emplace_back("series", std::move(t));
    r.tables.emplace_back("sandwich", std::move(s));
    out << "  sandwich ell(n) <= L(n) <= ell(n+D): " << (sandwich.all_ok ? "holds" : "FAILS");
    if (sandwich.first_failure) out << " (first failure at n=" << *sandwich.first_failure << ")";
    out << "\n";
    if (!series.stable || !series.graded_stable) {
        out << "  fit not stable: raise --precision\n";
        return sandwich.all_ok ? 3 : 4;
    }
    out << "  delta = " << series.fit->degree << ", alpha = " << to_string(series.fit->leading)
        << "; gr(M) gives delta = " << series.graded_delta << ", alpha = " << to_string(series.graded_alpha) << " ("
        << (series.match_graded ? "match" : "MISMATCH") << ")\n";
    return series.match_graded && sandwich.all_ok ? 0 : 4;
}

int cmd_lift(const Context& ctx, std::ostream& out, Report& r) {
    if (ctx.opt.target.empty() || ctx.opt.spanners.empty()) throw BadParams("lift needs --target and --spanners");
    const Vector target = space_element(ctx, ctx.opt.target);
    const auto ys = space_elements(ctx, ctx.opt.spanners);
    const auto res = lift_solve(ctx.space(), target, ys);
    const PrimeField& f = ctx.space().field();
    Vector check = ctx.space().coords()->zero();
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const Vector term = ctx.space().act(res.coefficients[i], ys[i]);
        for (std::size_t k = 0; k < check.size(); ++k) check[k] = f.add(check[k], term[k]);
    }
    const bool exact = check == target;
    const Coordinates& rc = *ctx.ring()->coords();
    out << banner(ctx, "lift");
    CsvTable t{{"i", "coefficient"}, {}};
    for (std::size_t i = 0; i < ys.size(); ++i) {
        out << "  r_" << i + 1 << " = " << rc.format(res.coefficients[i]) << "\n";
        t.rows.push_back({std::to_string(i + 1), rc.format(res.coefficients[i])});
    }
    std::vector<long long> vals(res.residual_valuations.begin(), res.residual_valuations.end());
    out << "  steps = " << res.steps << ", K = " << res.K << ", residual valuations: " << join(vals) << "\n";
    out << "  substitution check: " << (exact ? "exact" : "FAILED") << "\n";
    r.values.set("steps", res.steps);
    r.values.set("K", res.K);
    r.values.set("residual_valuations", join(vals, ";"));
    r.values.set("final_residual_valuation", ctx.space().precision() + 1);
    r.values.set("substitution_exact", exact);
    r.tables.emplace_back("coefficients", std::move(t));
    return exact ? 0 : 4;
}

int cmd_invert(const Context& ctx, std::ostream& out, Report& r) {
    if (ctx.opt.element.empty()) throw BadParams("invert needs --element");
    const Vector a = parse_ring_element(*ctx.ring(), ctx.opt.element);
    const auto inv = invert(ctx.ring(), a);
    const bool ok = ctx.ring()->multiply(inv.inverse, a) == ctx.ring()->one();
    const Coordinates& rc = *ctx.ring()->coords();
    out << banner(ctx, "invert");
    out << "  (" << rc.format(a) << ")^-1 = " << rc.format(inv.inverse) << "\n";
    out << "  left inverse check: " << (ok ? "exact" : "FAILED") << ", two-sided: " << (inv.two_sided ? "yes" : "no")
        << "\n";
    r.values.set("element", rc.format(a));
    r.values.set("inverse", rc.format(inv.inverse));
    r.values.set("left_inverse_exact", ok);
    r.values.set("two_sided", inv.two_sided);
    return ok ? 0 : 4;
}

int cmd_distinguished(const Context& ctx, std::ostream& out, Report& r) {
    if (ctx.opt.element.empty()) throw BadParams("distinguished needs --element");
    if (ctx.opt.mode != "plain" && ctx.opt.mode != "madic" && ctx.opt.mode != "both")
        throw BadParams("--mode must be plain, madic or both");
    const Vector x = space_element(ctx, ctx.opt.element);
    out << banner(ctx, "distinguished");
    bool all = true;
    auto run = [&](DistinguishedMode m, const std::string& name) {
        const auto d = distinguished(ctx.space(), x, m);
        all = all && d.holds;
        r.values.set(name, d.holds);
        out << "  " << name << ": " << (d.holds ? "yes" : "no");
        if (!d.holds) {
            const std::string at = m == DistinguishedMode::Plain ? std::to_string(d.i)
                                                                : std::to_string(d.i) + "," + std::to_string(d.j);
            out << " (first failure at " << at << ")";
            r.values.set(name + "_failure", at);
        }
        out << "\n";
    };
    r.values.set("element", ctx.space().coords()->format(x));
    if (ctx.opt.mode != "madic") run(DistinguishedMode::Plain, "plain");
    if (ctx.opt.mode != "plain") run(DistinguishedMode::MAdic, "madic");
    return all ? 0 : 4;
}

int cmd_annihilator(const Context& ctx, std::ostream& out, Report& r) {
    if (ctx.opt.element.empty()) throw BadParams("annihilator needs --element");
    const Vector x = space_element(ctx, ctx.opt.element);
    const int tau = ctx.opt.tau >= 0 ? ctx.opt.tau : default_annihilator_cap(ctx.space(), x);
    const auto rows = annihilator(ctx.space(), x, tau);
    const Coordinates& rc = *ctx.ring()->coords();
    out << banner(ctx, "annihilator");
    out << "  x = " << ctx.space().coords()->format(x) << ", cap tau = " << tau << ", " << rows.size()
        << " witness row(s)\n";
    CsvTable t{{"valuation", "element"}, {}};
    for (const auto& row : rows) {
        out << "    " << rc.format(row) << "  (v=" << rc.valuation(row) << ")\n";
        t.rows.push_back({std::to_string(rc.valuation(row)), rc.format(row)});
    }
    r.values.set("element", ctx.space().coords()->format(x));
    r.values.set("tau", tau);
    r.values.set("witnesses", rows.size());
    r.values.set("has_witness", !rows.empty());
    r.tables.emplace_back("annihilator", std::move(t));
    return 0;
}

const Matrix& require_t(const Context& ctx) {
    if (!ctx.obj.t_op) throw BadParams("this command needs an operator T: use --t-op EXPR or an [extension] section");
    return *ctx.obj.t_op;
}

int cmd_extend(const Context& ctx, std::ostream& out, Report& r) {
    const auto ext = build_extension(ctx.space(), require_t(ctx));
    const auto ar = artin_rees_constant(ctx.space(), ctx.opt.window);
    if (!ar.found) throw PrecisionTooLow("no Artin-Rees constant at this precision");
    const auto d = dim_over_extension(ext, ar.D, ctx.opt.window);
    out << banner(ctx, "extend");
    CsvTable t{{"k", "L"}, {}};
    for (std::size_t k = 0; k < d.L.size(); ++k) t.rows.push_back({std::to_string(k), std::to_string(d.L[k])});
    std::vector<long long> kt(ext.k_table.begin() + (ext.k_table.empty() ? 0 : 1), ext.k_table.end());
    out << "  k_j = min{k : T^k M in m^j M}: " << join(kt) << "\n";
    out << "  dim M/n^k M: " << join(d.L) << "\n";
    out << "  delta over R = " << d.delta_R << ", delta over R[[T]] = " << (d.fit ? d.fit->degree : -1) << " ("
        << (d.invariant ? "equal" : "DIFFERENT") << ")\n";
    out << "  reassociation " << (d.reassociation_ok ? "ok" : "FAILS") << ", nilpotence bound "
        << (d.nilpotence_bound_ok ? "ok" : "FAILS") << ", 1 - T^n invertible " << (d.inversion_ok ? "ok" : "FAILS")
        << "\n";
    r.values.set("D", ar.D);
    r.values.set("k_table", join(kt, ";"));
    r.values.set("delta_R", d.delta_R);
    if (d.fit) {
        r.values.set("delta_n", d.fit->degree);
        r.values.set("alpha_n", d.fit->leading);
    }
    r.values.set("trusted", d.trusted);
    r.values.set("invariant", d.invariant);
    r.values.set("reassociation_ok", d.reassociation_ok);
    r.values.set("nilpotence_bound_ok", d.nilpotence_bound_ok);
    r.values.set("inversion_ok", d.inversion_ok);
    r.tables.emplace_back("series", std::move(t));
    const bool ok = d.invariant && d.reassociation_ok && d.nilpotence_bound_ok && d.inversion_ok;
    return ok ? 0 : 4;
}

TorsionOptions torsion_options(const Context& ctx) {
    TorsionOptions t;
    t.window = ctx.opt.window;
    t.seed = ctx.opt.seed;
    t.samples = ctx.opt.samples;
    t.exhaustive = ctx.opt.slow_exhaustive;
    t.domain_asserted = ctx.opt.domain;
    if (ctx.opt.tau >= 0) t.tau = ctx.opt.tau;
    if (!ctx.opt.spanners.empty()) t.spanners = space_elements(ctx, ctx.opt.spanners);
    return t;
}

int cmd_torsion(const Context& ctx, std::ostream& out, Report& r) {
    const auto opt = torsion_options(ctx);
    const auto rep = torsion_equivalence_check(ctx.space(), opt);
    out << banner(ctx, "torsion");
    out << "  dim R = " << rep.delta_R << ", dim M = " << rep.delta_M << (rep.zero_space ? " (M = 0)" : "") << "\n";
    out << "  S1 " << (rep.S1 ? "true" : "false") << ", S2 " << (rep.S2 ? "true" : "false") << " (" << rep.sample_size
        << " sampled), S3 " << (rep.S3 ? "true" : "false") << ": " << (rep.agree ? "agree" : "DISAGREE") << "\n";
    if (rep.witness_free) out << "  distinguished element without witness: " << ctx.space().coords()->format(*rep.witness_free) << "\n";
    if (rep.zero_divisor) out << "  note: gr(R) has a zero divisor; the equivalence is not asserted for this ring\n";
    r.values.set("delta_R", rep.delta_R);
    r.values.set("delta_M", rep.delta_M);
    r.values.set("S1", rep.S1);
    r.values.set("S2", rep.S2);
    r.values.set("S3", rep.S3);
    r.values.set("agree", rep.agree);
    r.values.set("sample_size", rep.sample_size);
    r.values.set("hypothesis_met", rep.hypothesis_met);
    r.values.set("zero_divisor_found", rep.zero_divisor.has_value());
    if (rep.witness_free) r.values.set("witness_free", ctx.space().coords()->format(*rep.witness_free));
    bool ok = rep.agree;
    if (ctx.obj.t_op) {
        const auto ext = build_extension(ctx.space(), *ctx.obj.t_op);
        const auto ar = artin_rees_constant(ctx.space(), ctx.opt.window);
        if (!ar.found) throw PrecisionTooLow("no Artin-Rees constant at this precision");
        const auto pn = pseudo_null_filtration_test(ext, ar.D, opt);
        out << "  over R[[T]]: dim_n M = " << pn.delta_n << ", dim_theta M = " << pn.delta_theta << "; T1 "
            << (pn.T1 ? "true" : "false") << ", T2 " << (pn.T2 ? "true" : "false") << ", T3 "
            << (pn.T3 ? "true" : "false") << ": " << (pn.agree ? "agree" : "DISAGREE") << "\n";
        r.values.set("T1", pn.T1);
        r.values.set("T2", pn.T2);
        r.values.set("T3", pn.T3);
        r.values.set("T_agree", pn.agree);
        r.values.set("delta_n", pn.delta_n);
        r.values.set("delta_theta", pn.delta_theta);
        r.values.set("pseudo_null", pn.verdict);
        r.values.set("T1_sample_size", pn.sample_size);
        ok = ok && pn.agree;
    }
    return ok ? 0 : 4;
}

int cmd_fuzz(const Options& o, std::ostream& out, Report& r) {
    const PrimeField field(o.prime);
    const int N = o.precision >= 0 ? o.precision : 10;
    std::mt19937_64 rng(o.seed);
    auto ring = powerseries(field, 2, {}, N);
    const auto names = variable_names(2);
    CsvTable t{{"case", "generators", "D", "found", "verified_pairs"}, {}};
    int failures = 0;
    out << "fuzz: p=" << o.prime << " N=" << N << " W=" << o.window << " seed=" << o.seed << " cases=" << o.count << "\n";
    for (int c = 0; c < o.count; ++c) {
        const int k = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<Vector> gens;
        std::vector<std::string> labels;
        for (int g = 0; g < k; ++g) {
            const int deg = std::uniform_int_distribution<int>(1, 3)(rng);
            const int a = std::uniform_int_distribution<int>(0, deg)(rng);
            const std::string name = monomial_name({a, deg - a}, names);
            labels.push_back(name);
            gens.push_back(ring->coords()->unit_vector(static_cast<std::size_t>(ring->coords()->index_of(name))));
        }
        const auto ar = artin_rees_constant(ideal_space(ring, gens), o.window);
        std::string label;
        for (const auto& l : labels) label += (label.empty() ? "" : ",") + l;
        out << "  case " << c << ": (" << label << ") D=" << ar.D << (ar.found ? "" : " NOT FOUND") << "\n";
        t.rows.push_back({std::to_string(c), label, std::to_string(ar.D), ar.found ? "true" : "false",
                          std::to_string(ar.verified_pairs)});
        if (!ar.found) ++failures;
    }
    r.values.set("command", "fuzz");
    r.values.set("prime", static_cast<long long>(o.prime));
    r.values.set("precision", N);
    r.values.set("seed", std::to_string(o.seed));
    r.values.set("window", o.window);
    r.values.set("cases", o.count);
    r.values.set("failures", failures);
    r.tables.emplace_back("cases", std::move(t));
    return failures == 0 ? 0 : 4;
}

// ---------------------------------------------------------------------------

struct Command {
    const char* name;
    const char* help;
    std::function<int(const Context&, std::ostream&, Report&)> run;
    enum Needs { Element = 1, Target = 2, TOp = 4, Tau = 8, Mode = 16, Torsion = 32 };
    int needs;
};

const std::vector<Command>& commands() {
    static const std::vector<Command> list = {
        {"validate",
         "Check the axioms of a truncated complete local-filtered ring: the residue ring is a field, "
         "F^i(R)F^j(R) = F^{i+j}(R), gr(R) is \"finitely generated commutative ... and generated in degree 1\", "
         "and family towers truncate coherently. Exit 4 on any failed check.",
         cmd_validate, 0},
        {"gr", "Associated graded data: \"gr(R) := F^0(R)/F^1(R) (+) F^1(R)/F^2(R) (+) ...\", its graded axioms and "
               "homogeneous generators of gr(M).",
         cmd_gr, 0},
        {"hilbert",
         "Hilbert function h(n) and Hilbert-Samuel fit: \"l(M/F^n(M)) = P(n) for all but finitely many n\" and "
         "\"the degree of P is the Krull dimension\". Exit 3 when the fit has not stabilized.",
         cmd_hilbert, 0},
        {"dim",
         "Dimension of a permissible space and its independence of the filtration: permissible filtrations "
         "\"have the same Krull dimension\". Exit 4 if two filtrations disagree.",
         cmd_dim, 0},
        {"span", "R-span and generated R-subspace \"RD + R(RD) + R(R(RD)) + ...\" of --element e1,e2,...",
         cmd_span, Command::Element},
        {"artin-rees",
         "Artin-Rees constant: \"there exists an integer D such that F^{n+d}(M) = F^n(R)F^d(M)\" for all n and "
         "d >= D, with a spanning set \"F^n(M) = F^{n-d_1}(R)m_1 + ... + F^{n-d_k}(R)m_k\". Exit 3 when no D is "
         "certified at this precision.",
         cmd_artin_rees, 0},
        {"asymptotics",
         "Growth of M/m^nM: \"lim log_q|M/m^nM| / n^delta = alpha\", with the sandwich "
         "\"log_q|M/F^n(M)| <= log_q|M/m^nM| <= log_q|M/F^{n+d}(M)|\". Exit 4 on a mismatch with gr(M).",
         cmd_asymptotics, 0},
        {"lift",
         "Successive approximation: solve sum r_i y_i = --target for --spanners y_1,...; each step satisfies "
         "\"v(b) < v(b - phi(a)) and v(b) <= v(a) + K\", so \"phi is surjective\".",
         cmd_lift, Command::Target},
        {"invert", "Left inverse of a unit: \"R is a local ring with maximal ideal F^1(R)\".", cmd_invert,
         Command::Element},
        {"distinguished",
         "Distinguished elements: \"m^i(Rx) = m^ix\" (plain) and \"m^i(m^jx) = m^{i+j}x\" (m-adic). Exit 4 "
         "when x is not distinguished in a requested mode.",
         cmd_distinguished, Command::Element | Command::Mode},
        {"annihilator", "Annihilator witnesses {r : r.x = 0} with v(r) <= --tau.", cmd_annihilator,
         Command::Element | Command::Tau},
        {"extend",
         "Central extension by T: \"the dimension of M as an R-space is equal to the dimension of the R[[T]]-space "
         "M\", via \"T^{kN}M in m^kM\". Exit 4 if the dimensions differ.",
         cmd_extend, Command::TOp},
        {"torsion",
         "Torsion criteria, computed independently: (S1) \"dim(M) <= dim(R) - 1\", (S2) \"every distinguished "
         "element of M has a non-zero annihilator\", (S3) \"spanned by m-adically distinguished elements with "
         "non-zero annihilators\"; with --t-op and --domain also (T2) \"the R[[T]]-space M has a pseudo-null "
         "filtration\" and (T3) \"all permissible filtrations are pseudo-null filtrations\". Exit 4 on disagreement.",
         cmd_torsion, Command::TOp | Command::Tau | Command::Torsion},
    };
    return list;
}

void add_input_options(CLI::App* sub, Options& o) {
    sub->add_option("file", o.file, "presentation file (.cfa)");
    sub->add_option("--family", o.family, "built-in family, e.g. powerseries:2, powerseries:2:x*y, deformation:2:1");
    sub->add_option("--prime", o.prime, "field characteristic for --family (default 2)");
    sub->add_option("--precision", o.precision, "truncation N (default 6 for --family)");
    sub->add_option("--window", o.window, "stability window W (default 3)");
    sub->add_option("--seed", o.seed, "seed for every random choice (default 0)");
    sub->add_option("--out", o.out_dir, "write key=value and CSV reports into this directory");
    sub->add_option("--ideal", o.ideal, "work in the ideal generated by e1,e2,... with the induced filtration");
    sub->add_option("--quotient", o.quotient, "work in R/(e1,e2,...)");
    sub->add_option("--cyclic", o.cyclic, "work in the cyclic space Rx");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations with complete local-filtered rings and spaces over F_p.", "cfa"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : commands()) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_input_options(sub, o);
        if (c.needs & Command::Element) sub->add_option("--element", o.element, "element expression(s)");
        if (c.needs & Command::Target) {
            sub->add_option("--target", o.target, "target element");
            sub->add_option("--spanners", o.spanners, "comma-separated spanning elements");
        }
        if (c.needs & Command::TOp) sub->add_option("--t-op", o.t_op, "T = multiplication by this ring element");
        if (c.needs & Command::Tau) sub->add_option("--tau", o.tau, "annihilator valuation cap (default N - v(x) - 2)");
        if (c.needs & Command::Mode) sub->add_option("--mode", o.mode, "plain, madic or both (default both)");
        if (c.needs & Command::Torsion) {
            sub->add_option("--spanners", o.spanners, "user spanning set for (S3), verified");
            sub->add_option("--samples", o.samples, "distinguished elements sampled for (S2) and (T1)");
            sub->add_flag("--slow-exhaustive", o.slow_exhaustive, "enumerate every element when p^dim <= 4096");
            sub->add_flag("--domain", o.domain, "assert that gr(R) is an integral domain");
        }
        subs.emplace_back(sub, &c);
    }
    CLI::App* fuzz = app.add_subcommand(
        "fuzz", "Random monomial ideals of F_p[[x,y]] (generators of degree <= 3): each must admit an Artin-Rees "
                "constant D with the full (n,d) grid verified. Exit 4 otherwise.");
    fuzz->add_option("--prime", o.prime, "field characteristic (default 2)");
    fuzz->add_option("--precision", o.precision, "truncation N (default 10)");
    fuzz->add_option("--window", o.window, "stability window W (default 3)");
    fuzz->add_option("--seed", o.seed, "seed (default 0)");
    fuzz->add_option("--count", o.count, "number of random ideals (default 20)");
    fuzz->add_option("--out", o.out_dir, "write key=value and CSV reports into this directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        Report report;
        int rc = 0;
        if (fuzz->parsed()) {
            report.name = "fuzz";
            rc = cmd_fuzz(o, out, report);
        } else {
            for (const auto& [sub, cmd] : subs) {
                if (!sub->parsed()) continue;
                const Context ctx = load(o);
                report.name = cmd->name;
                header(report, ctx);
                rc = cmd->run(ctx, out, report);
            }
        }
        report.values.set("exit_code", rc);
        if (!o.out_dir.empty()) report.write(o.out_dir);
        return rc;
    } catch (const ParseError& e) {
        for (const auto& d : e.diagnostics()) err << (o.file.empty() ? "<input>" : o.file) << ":" << d.format() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error [" << e.code() << "]: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Data: return 2;
            case ErrorKind::Precision: return 3;
            case ErrorKind::Property: return 4;
        }
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cfa
