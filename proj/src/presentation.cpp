#include "cfa/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "cfa/central_ext.hpp"
#include "cfa/families.hpp"

namespace cfa {

std::string Diagnostic::format() const {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) out += (out.empty() ? "" : "\n") + d.format();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

long long to_ll(const std::string& s) {
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw BadParams("integer out of range: '" + s + "'");
    }
}

// Splits "a + 2*b - c" into (sign, term) pairs at top-level + and -.
std::vector<std::pair<int, std::string>> signed_terms(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    int sign = 1;
    std::string cur;
    auto flush = [&](int next_sign) {
        const std::string t = trim(cur);
        if (!t.empty()) out.emplace_back(sign, t);
        else if (!out.empty() || next_sign == 0) {
            // a dangling operator such as "a + + b" or a trailing "+"
            if (next_sign == 0 && !cur.empty()) throw BadParams("empty term in '" + text + "'");
        }
        cur.clear();
        sign = next_sign;
    };
    for (char c : text) {
        if (c == '+' || c == '-') {
            if (!trim(cur).empty()) {
                flush(c == '-' ? -1 : 1);
            } else {
                if (c == '-') sign = -sign;
            }
        } else {
            cur += c;
        }
    }
    if (trim(cur).empty()) {
        if (out.empty()) throw BadParams("empty expression");
        throw BadParams("expression '" + text + "' ends with an operator");
    }
    flush(0);
    return out;
}

void accumulate(Terms& terms, const std::string& name, long long c) {
    for (auto& [n, k] : terms) {
        if (n == name) {
            k += c;
            return;
        }
    }
    terms.emplace_back(name, c);
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorKind::Data, "ParseError", join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Terms parse_terms(const std::string& text, const std::vector<std::string>& names) {
    const std::string t = trim(text);
    if (t == "0") return {};
    auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    Terms out;
    for (const auto& [sign, term] : signed_terms(t)) {
        if (known(term)) {
            accumulate(out, term, sign);
            continue;
        }
        const auto star = term.find('*');
        if (star != std::string::npos && is_integer(trim(term.substr(0, star)))) {
            const std::string rest = trim(term.substr(star + 1));
            if (!known(rest)) throw BadParams("unknown basis name '" + rest + "'");
            accumulate(out, rest, sign * to_ll(trim(term.substr(0, star))));
            continue;
        }
        if (term == "0") continue;
        throw BadParams("unknown basis name '" + term + "'");
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return t.second == 0; }), out.end());
    return out;
}

std::string format_terms(const Terms& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        long long c = terms[i].second;
        if (i == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (c < 0) c = -c;
        if (c != 1) out += std::to_string(c) + "*";
        out += terms[i].first;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Vector eval_factor(const TruncatedFilteredAlgebra& ring, const std::string& factor) {
    const Coordinates& co = *ring.coords();
    if (long k = co.index_of(factor); k >= 0) return co.unit_vector(static_cast<std::size_t>(k));
    if (is_integer(factor)) {
        Vector v = co.zero();
        v[ring.unit_index()] = ring.field().from_int(to_ll(factor));
        return v;
    }
    const auto caret = factor.rfind('^');
    if (caret != std::string::npos && is_integer(factor.substr(caret + 1))) {
        const long long e = to_ll(factor.substr(caret + 1));
        if (e < 0) throw BadParams("negative exponent in '" + factor + "'");
        const Vector base = eval_factor(ring, factor.substr(0, caret));
        Vector acc = ring.one();
        for (long long i = 0; i < e; ++i) acc = ring.multiply(acc, base);
        return acc;
    }
    throw BadParams("unknown basis name '" + factor + "'");
}

Vector eval_term(const TruncatedFilteredAlgebra& ring, const std::string& term) {
    const Coordinates& co = *ring.coords();
    if (long k = co.index_of(term); k >= 0) return co.unit_vector(static_cast<std::size_t>(k));
    std::vector<std::string> factors;
    std::string cur;
    for (char c : term) {
        if (c == '*') {
            factors.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    factors.push_back(trim(cur));
    // greedily merge adjacent factors that together form a basis name (x*y)
    Vector acc = ring.one();
    for (std::size_t i = 0; i < factors.size();) {
        std::size_t best = i;
        std::string joined = factors[i];
        std::string candidate = joined;
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            candidate += "*" + factors[j];
            if (co.index_of(candidate) >= 0) {
                best = j;
                joined = candidate;
            }
        }
        acc = ring.multiply(acc, eval_factor(ring, joined));
        i = best + 1;
    }
    return acc;
}

}  // namespace

Vector parse_ring_element(const TruncatedFilteredAlgebra& ring, const std::string& text) {
    const PrimeField& f = ring.field();
    Vector out = ring.coords()->zero();
    for (const auto& [sign, term] : signed_terms(trim(text))) {
        const Vector v = eval_term(ring, term);
        const Scalar s = sign < 0 ? f.neg(1) : 1;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.fma(s, v[k], out[k]);
    }
    return out;
}

Vector parse_space_element(const Coordinates& coords, const std::string& text) {
    Vector out = coords.zero();
    for (const auto& [name, c] : parse_terms(text, coords.names())) {
        const auto k = static_cast<std::size_t>(coords.index_of(name));
        out[k] = coords.field().add(out[k], coords.field().from_int(c));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Located {
    int line;
    int column;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Presentation run() {
        std::istringstream is(text_);
        std::string raw;
        int lineno = 0;
        while (std::getline(is, raw)) {
            ++lineno;
            last_line_ = lineno;
            std::string line = raw;
            if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
            if (trim(line).empty()) continue;
            const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
            line = trim(line);
            try {
                handle(line, lineno, indent);
            } catch (const BadParams& e) {
                diag(lineno, indent, e.what());
            }
        }
        finish();
        if (!diags_.empty()) throw ParseError(diags_);
        return p_;
    }

private:
    void diag(int line, int column, const std::string& msg) { diags_.push_back({line, column, msg}); }

    static std::pair<std::string, std::string> head(const std::string& line) {
        const auto sp = line.find_first_of(" \t");
        if (sp == std::string::npos) return {line, ""};
        return {line.substr(0, sp), trim(line.substr(sp))};
    }

    std::vector<std::pair<std::string, int>> parse_basis(const std::string& rest, int line, int col) {
        std::vector<std::pair<std::string, int>> out;
        std::istringstream is(rest);
        std::string tok;
        while (is >> tok) {
            const auto colon = tok.rfind(':');
            if (colon == std::string::npos || colon == 0 || !is_integer(tok.substr(colon + 1))) {
                diag(line, col + static_cast<int>(rest.find(tok)) + 6, "basis entry '" + tok + "' is not name:valuation");
                continue;
            }
            out.emplace_back(tok.substr(0, colon), static_cast<int>(to_ll(tok.substr(colon + 1))));
        }
        if (out.empty() && rest.empty()) diag(line, col, "basis line lists no elements");
        return out;
    }

    void product_line(const std::string& rest, int line, int col, std::vector<Presentation::ProductLine>& into,
                      std::vector<Located>& where, std::vector<std::string>& raw) {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) {
            diag(line, col, "expected 'LEFT RIGHT = TERMS'");
            return;
        }
        std::istringstream lhs(rest.substr(0, eq));
        std::string a, b, extra;
        lhs >> a >> b;
        if (a.empty() || b.empty() || (lhs >> extra)) {
            diag(line, col, "expected exactly two factors before '='");
            return;
        }
        into.push_back({a, b, {}});
        where.push_back({line, col});
        raw.push_back(trim(rest.substr(eq + 1)));
    }

    void handle(const std::string& line, int lineno, int col) {
        if (line.front() == '[') {
            if (line == "[algebra]" || line == "[space]" || line == "[extension]") {
                const std::string s = line.substr(1, line.size() - 2);
                if (std::find(seen_.begin(), seen_.end(), s) != seen_.end()) diag(lineno, col, "section [" + s + "] repeated");
                seen_.push_back(s);
                section_ = s;
                section_line_[s] = lineno;
            } else {
                diag(lineno, col, "unknown section " + line);
            }
            return;
        }
        auto [word, rest] = head(line);
        if (section_.empty()) {
            if (word == "field") {
                if (!is_integer(rest) || to_ll(rest) < 2 || !is_prime(static_cast<std::uint64_t>(to_ll(rest))) ||
                    to_ll(rest) >= (1LL << 31))
                    diag(lineno, col, "field must be a prime below 2^31, got '" + rest + "'");
                else
                    p_.prime = static_cast<std::uint32_t>(to_ll(rest));
                have_field_ = true;
            } else if (word == "precision") {
                if (!is_integer(rest) || to_ll(rest) < 0 || to_ll(rest) > 64)
                    diag(lineno, col, "precision must be an integer in 0..64, got '" + rest + "'");
                else
                    p_.precision = static_cast<int>(to_ll(rest));
                have_precision_ = true;
            } else if (word == "kind") {
                if (rest != "algebra" && rest != "space" && rest != "extension")
                    diag(lineno, col, "kind must be algebra, space or extension");
                else
                    p_.kind = rest;
                kind_line_ = lineno;
            } else if (word == "mode") {
                if (rest != "exact" && rest != "tower") diag(lineno, col, "mode must be exact or tower");
                else p_.exact = rest == "exact";
            } else {
                diag(lineno, col, "unknown header directive '" + word + "' (expected field, precision, kind, mode)");
            }
            return;
        }
        if (section_ == "algebra") {
            if (word == "family") {
                if (p_.family) diag(lineno, col, "family given twice");
                parse_family(rest);  // validates
                p_.family = rest;
                family_line_ = lineno;
            } else if (word == "basis") {
                for (auto& b : parse_basis(rest, lineno, col)) p_.basis.push_back(std::move(b));
                basis_loc_.push_back({lineno, col});
            } else if (word == "unit") {
                if (rest.empty() || rest.find_first_of(" \t") != std::string::npos) diag(lineno, col, "unit takes one name");
                else p_.unit = rest;
                unit_loc_ = {lineno, col};
            } else if (word == "mul") {
                product_line(rest, lineno, col, p_.mul, mul_loc_, mul_raw_);
            } else {
                diag(lineno, col, "unknown algebra directive '" + word + "' (expected family, basis, unit, mul)");
            }
            return;
        }
        if (section_ == "space") {
            if (word == "derive") {
                auto [how, exprs] = head(rest);
                if (how != "regular" && how != "ideal" && how != "quotient" && how != "cyclic") {
                    diag(lineno, col, "derive must be regular, ideal, quotient or cyclic");
                    return;
                }
                std::vector<std::string> list;
                std::istringstream is(exprs);
                for (std::string e; is >> e;) list.push_back(e);
                if (how == "regular" && !list.empty()) diag(lineno, col, "derive regular takes no elements");
                if (how == "cyclic" && list.size() != 1) diag(lineno, col, "derive cyclic takes exactly one element");
                if ((how == "ideal" || how == "quotient") && list.empty())
                    diag(lineno, col, "derive " + how + " needs at least one element");
                p_.derive = {how, list};
                derive_loc_ = {lineno, col};
            } else if (word == "basis") {
                for (auto& b : parse_basis(rest, lineno, col)) p_.space_basis.push_back(std::move(b));
            } else if (word == "act") {
                product_line(rest, lineno, col, p_.act, act_loc_, act_raw_);
            } else {
                diag(lineno, col, "unknown space directive '" + word + "' (expected derive, basis, act)");
            }
            return;
        }
        // extension
        if (word != "top") {
            diag(lineno, col, "unknown extension directive '" + word + "' (expected top)");
            return;
        }
        auto [first, tail] = head(rest);
        if (first == "multiply") {
            if (tail.empty()) diag(lineno, col, "top multiply needs an element");
            p_.t_multiply = tail;
            return;
        }
        const auto eq = rest.find('=');
        if (eq == std::string::npos) {
            diag(lineno, col, "expected 'top multiply EXPR' or 'top NAME = TERMS'");
            return;
        }
        p_.t_columns.emplace_back(trim(rest.substr(0, eq)), Terms{});
        top_loc_.push_back({lineno, col});
        top_raw_.push_back(trim(rest.substr(eq + 1)));
    }

    void resolve(std::vector<Presentation::ProductLine>& lines, const std::vector<Located>& where,
                 const std::vector<std::string>& raw, const std::vector<std::string>& left_names,
                 const std::vector<std::string>& right_names, const std::vector<std::string>& out_names) {
        auto known = [](const std::vector<std::string>& v, const std::string& n) {
            return std::find(v.begin(), v.end(), n) != v.end();
        };
        for (std::size_t k = 0; k < lines.size(); ++k) {
            if (!known(left_names, lines[k].left))
                diag(where[k].line, where[k].column, "unknown left factor '" + lines[k].left + "'");
            if (!known(right_names, lines[k].right))
                diag(where[k].line, where[k].column, "unknown right factor '" + lines[k].right + "'");
            try {
                lines[k].terms = parse_terms(raw[k], out_names);
            } catch (const BadParams& e) {
                diag(where[k].line, where[k].column, e.what());
            }
        }
    }

    static std::vector<std::string> names_of(const std::vector<std::pair<std::string, int>>& basis) {
        std::vector<std::string> out;
        for (const auto& b : basis) out.push_back(b.first);
        return out;
    }

    void check_basis(const std::vector<std::pair<std::string, int>>& basis, int line, const char* what) {
        std::vector<std::string> seen;
        for (const auto& [name, v] : basis) {
            if (std::find(seen.begin(), seen.end(), name) != seen.end())
                diag(line, 1, std::string("duplicate ") + what + " basis name '" + name + "'");
            seen.push_back(name);
            if (name.find_first_of("+-=:") != std::string::npos)
                diag(line, 1, std::string(what) + " basis name '" + name + "' contains a reserved character");
            if (have_precision_ && (v < 0 || v > p_.precision))
                diag(line, 1, std::string(what) + " basis element '" + name + "' has valuation outside [0, precision]");
        }
    }

    void finish() {
        const int eof = last_line_ + 1;
        if (!have_field_) diag(eof, 1, "missing header line 'field P'");
        if (!have_precision_) diag(eof, 1, "missing header line 'precision N'");
        const bool has_space = std::find(seen_.begin(), seen_.end(), "space") != seen_.end();
        const bool has_ext = std::find(seen_.begin(), seen_.end(), "extension") != seen_.end();
        if (std::find(seen_.begin(), seen_.end(), "algebra") == seen_.end()) diag(eof, 1, "missing [algebra] section");
        if (p_.kind == "algebra" && (has_space || has_ext))
            diag(kind_line_ ? kind_line_ : 1, 1, "kind algebra cannot have [space] or [extension] sections");
        if ((p_.kind == "space" || p_.kind == "extension") && !has_space)
            diag(eof, 1, "kind " + p_.kind + " requires a [space] section");
        if (p_.kind == "extension" && !has_ext) diag(eof, 1, "kind extension requires an [extension] section");
        if (p_.kind == "space" && has_ext) diag(section_line_["extension"], 1, "kind space cannot have an [extension] section");

        std::vector<std::string> ring_names;
        if (p_.family) {
            if (!p_.basis.empty() || !p_.unit.empty() || !p_.mul.empty())
                diag(family_line_, 1, "a family algebra cannot also declare basis, unit or mul lines");
            if (p_.prime != 0 && diags_.empty()) {
                try {
                    auto ring = build_family(parse_family(*p_.family), PrimeField(p_.prime), p_.precision);
                    ring_names = ring->coords()->names();
                } catch (const Error& e) {
                    diag(family_line_, 1, e.what());
                }
            }
        } else {
            ring_names = names_of(p_.basis);
            const int bl = basis_loc_.empty() ? eof : basis_loc_.front().line;
            if (p_.basis.empty()) diag(bl, 1, "algebra declares no basis (basis NAME:VAL ...)");
            check_basis(p_.basis, bl, "algebra");
            if (p_.unit.empty()) {
                diag(eof, 1, "missing unit declaration (unit NAME) in [algebra]");
            } else if (std::find(ring_names.begin(), ring_names.end(), p_.unit) == ring_names.end()) {
                diag(unit_loc_.line, unit_loc_.column, "unit '" + p_.unit + "' is not a basis name");
            }
            resolve(p_.mul, mul_loc_, mul_raw_, ring_names, ring_names, ring_names);
        }

        std::vector<std::string> space_names;
        if (has_space) {
            if (p_.derive) {
                if (!p_.space_basis.empty() || !p_.act.empty())
                    diag(derive_loc_.line, 1, "a derived space cannot also declare basis or act lines");
            } else {
                if (p_.space_basis.empty()) diag(section_line_["space"], 1, "space declares neither derive nor basis");
                check_basis(p_.space_basis, section_line_["space"], "space");
                space_names = names_of(p_.space_basis);
                if (!ring_names.empty()) resolve(p_.act, act_loc_, act_raw_, ring_names, space_names, space_names);
            }
        }
        if (has_ext) {
            if (p_.t_multiply && !p_.t_columns.empty())
                diag(section_line_["extension"], 1, "use either 'top multiply' or per-element 'top' lines");
            if (!p_.t_multiply && p_.t_columns.empty())
                diag(section_line_["extension"], 1, "extension declares no T operator");
            if (!p_.derive) {
                for (std::size_t k = 0; k < p_.t_columns.size(); ++k) {
                    auto& [name, terms] = p_.t_columns[k];
                    if (std::find(space_names.begin(), space_names.end(), name) == space_names.end())
                        diag(top_loc_[k].line, top_loc_[k].column, "unknown space basis name '" + name + "'");
                    try {
                        terms = parse_terms(top_raw_[k], space_names);
                    } catch (const BadParams& e) {
                        diag(top_loc_[k].line, top_loc_[k].column, e.what());
                    }
                }
            } else if (!p_.t_columns.empty()) {
                diag(top_loc_.front().line, 1, "per-element T lines need an explicit space basis; use 'top multiply'");
            }
        }
    }

    const std::string& text_;
    Presentation p_;
    std::vector<Diagnostic> diags_;
    std::string section_;
    std::vector<std::string> seen_;
    std::map<std::string, int> section_line_;
    bool have_field_ = false, have_precision_ = false;
    int kind_line_ = 0, family_line_ = 0, last_line_ = 0;
    Located unit_loc_{0, 0}, derive_loc_{0, 0};
    std::vector<Located> basis_loc_, mul_loc_, act_loc_, top_loc_;
    std::vector<std::string> mul_raw_, act_raw_, top_raw_;
};

}  // namespace

Presentation parse_presentation(const std::string& text) { return Parser(text).run(); }

std::string serialize_presentation(const Presentation& p) {
    std::ostringstream os;
    os << "field " << p.prime << "\n";
    os << "precision " << p.precision << "\n";
    os << "kind " << p.kind << "\n";
    if (p.exact) os << "mode " << (*p.exact ? "exact" : "tower") << "\n";
    os << "\n[algebra]\n";
    if (p.family) os << "family " << *p.family << "\n";
    if (!p.basis.empty()) {
        os << "basis";
        for (const auto& [n, v] : p.basis) os << " " << n << ":" << v;
        os << "\n";
    }
    if (!p.unit.empty()) os << "unit " << p.unit << "\n";
    for (const auto& l : p.mul) os << "mul " << l.left << " " << l.right << " = " << format_terms(l.terms) << "\n";
    if (p.kind != "algebra") {
        os << "\n[space]\n";
        if (p.derive) {
            os << "derive " << p.derive->first;
            for (const auto& e : p.derive->second) os << " " << e;
            os << "\n";
        }
        if (!p.space_basis.empty()) {
            os << "basis";
            for (const auto& [n, v] : p.space_basis) os << " " << n << ":" << v;
            os << "\n";
        }
        for (const auto& l : p.act) os << "act " << l.left << " " << l.right << " = " << format_terms(l.terms) << "\n";
    }
    if (p.kind == "extension") {
        os << "\n[extension]\n";
        if (p.t_multiply) os << "top multiply " << *p.t_multiply << "\n";
        for (const auto& [n, t] : p.t_columns) os << "top " << n << " = " << format_terms(t) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

LoadedObject build_presentation(const Presentation& p) {
    const PrimeField field(p.prime);
    LoadedObject out;
    if (p.family) {
        out.ring = build_family(parse_family(*p.family), field, p.precision);
        if (p.exact && *p.exact != out.ring->coords()->exact())
            throw BadParams(std::string("mode ") + (*p.exact ? "exact" : "tower") + " contradicts the family, which is " +
                            (out.ring->coords()->exact() ? "exact" : "a tower truncation"));
    } else {
        AlgebraBuilder b(field, p.precision, p.exact.value_or(false));
        for (const auto& [n, v] : p.basis) b.basis(n, v);
        b.unit(p.unit);
        for (const auto& l : p.mul) b.product(l.left, l.right, l.terms);
        out.ring = b.build();
    }
    if (p.kind == "algebra") return out;

    if (p.derive) {
        const auto& [how, exprs] = *p.derive;
        std::vector<Vector> gens;
        for (const auto& e : exprs) gens.push_back(parse_ring_element(*out.ring, e));
        auto derived = derive_space(out.ring, how, gens);
        out.space = std::move(derived.space);
        out.from_ring = std::move(derived.from_ring);
    } else {
        const auto order = valuation_order(p.space_basis);
        std::vector<std::string> names;
        std::vector<int> vals;
        for (auto k : order) {
            names.push_back(p.space_basis[k].first);
            vals.push_back(p.space_basis[k].second);
        }
        auto coords = std::make_shared<const Coordinates>(field, p.precision, names, vals, p.exact.value_or(false));
        const Coordinates& rc = *out.ring->coords();
        BilinearTable act(rc.dim(), coords->dim(), coords->dim());
        for (std::uint32_t k = 0; k < coords->dim(); ++k) act.set(out.ring->unit_index(), k, {{k, 1}});
        for (const auto& l : p.act) {
            const long i = rc.index_of(l.left);
            const long j = coords->index_of(l.right);
            if (i < 0 || j < 0) throw BadParams("act line names unknown basis elements");
            Vector v = coords->zero();
            for (const auto& [n, c] : l.terms) {
                const auto t = static_cast<std::size_t>(coords->index_of(n));
                v[t] = field.add(v[t], field.from_int(c));
            }
            act.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), to_sparse(v));
        }
        out.space = FilteredSpace(out.ring, coords, std::move(act));
    }
    if (p.kind == "space") return out;

    if (p.t_multiply) {
        out.t_op = multiplication_operator(*out.space, parse_ring_element(*out.ring, *p.t_multiply));
    } else {
        const Coordinates& mc = *out.space->coords();
        Matrix t(field, mc.dim(), mc.dim());
        for (const auto& [name, terms] : p.t_columns) {
            const long k = mc.index_of(name);
            if (k < 0) throw BadParams("unknown space basis name '" + name + "'");
            for (const auto& [n, c] : terms) {
                const long r = mc.index_of(n);
                t(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) =
                    field.add(t(static_cast<std::size_t>(r), static_cast<std::size_t>(k)), field.from_int(c));
            }
        }
        out.t_op = std::move(t);
    }
    return out;
}

}  // namespace cfa
