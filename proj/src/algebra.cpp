#include "cfa/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cfa/errors.hpp"

namespace cfa {

SparseVector to_sparse(std::span<const Scalar> v) {
    SparseVector out;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) out.push_back({static_cast<std::uint32_t>(k), v[k]});
    return out;
}

Vector BilinearTable::apply(const PrimeField& field, std::span<const Scalar> a,
                            std::span<const Scalar> b) const {
    if (a.size() != left_ || b.size() != right_) throw std::invalid_argument("BilinearTable::apply: dimension mismatch");
    Vector out(out_, 0);
    for (std::size_t i = 0; i < left_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < right_; ++j) {
            if (b[j] == 0) continue;
            const Scalar ab = field.mul(a[i], b[j]);
            for (const Term& t : entries_[i * right_ + j]) out[t.index] = field.fma(ab, t.coeff, out[t.index]);
        }
    }
    return out;
}

Vector BilinearTable::apply_left_basis(const PrimeField& field, std::size_t i,
                                       std::span<const Scalar> b) const {
    Vector out(out_, 0);
    for (std::size_t j = 0; j < right_; ++j) {
        if (b[j] == 0) continue;
        for (const Term& t : entries_[i * right_ + j]) out[t.index] = field.fma(b[j], t.coeff, out[t.index]);
    }
    return out;
}

TruncatedFilteredAlgebra::TruncatedFilteredAlgebra(CoordinatesPtr coords, std::size_t unit, BilinearTable mul)
    : coords_(std::move(coords)), unit_(unit), mul_(std::move(mul)) {
    const std::size_t n = coords_->dim();
    if (unit_ >= n) throw BadParams("unit index out of range");
    if (mul_.left_dim() != n || mul_.right_dim() != n || mul_.out_dim() != n)
        throw BadParams("multiplication table does not match the basis");
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> valuation_order(const std::vector<std::pair<std::string, int>>& basis) {
    std::vector<std::size_t> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return basis[a].second < basis[b].second; });
    return order;
}

AlgebraBuilder& AlgebraBuilder::basis(const std::string& name, int valuation) {
    basis_.emplace_back(name, valuation);
    return *this;
}

AlgebraBuilder& AlgebraBuilder::unit(const std::string& name) {
    unit_ = name;
    return *this;
}

AlgebraBuilder& AlgebraBuilder::product(const std::string& left, const std::string& right,
                                        std::vector<std::pair<std::string, long long>> terms) {
    products_.push_back({left, right, std::move(terms)});
    return *this;
}

AlgebraPtr AlgebraBuilder::build() const {
    if (basis_.empty()) throw BadParams("algebra has an empty basis");
    if (unit_.empty()) throw BadParams("algebra has no unit declaration");
    auto order = valuation_order(basis_);
    std::vector<std::string> names;
    std::vector<int> vals;
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& [name, v] = basis_[order[k]];
        if (!index.emplace(name, k).second) throw BadParams("duplicate basis name '" + name + "'");
        names.push_back(name);
        vals.push_back(v);
    }
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw BadParams("unknown basis name '" + name + "'");
        return it->second;
    };
    auto coords = std::make_shared<const Coordinates>(field_, precision_, names, vals, exact_);
    const std::size_t n = names.size();
    const std::size_t u = lookup(unit_);

    BilinearTable table(n, n, n);
    for (std::size_t k = 0; k < n; ++k) {
        table.set(u, k, {{static_cast<std::uint32_t>(k), 1}});
        table.set(k, u, {{static_cast<std::uint32_t>(k), 1}});
    }
    for (const auto& line : products_) {
        const std::size_t i = lookup(line.left);
        const std::size_t j = lookup(line.right);
        Vector v(n, 0);
        for (const auto& [name, c] : line.terms) {
            const std::size_t t = lookup(name);
            v[t] = field_.add(v[t], field_.from_int(c));
        }
        table.set(i, j, to_sparse(v));
    }
    return std::make_shared<const TruncatedFilteredAlgebra>(coords, u, std::move(table));
}

// ---------------------------------------------------------------------------

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate(const TruncatedFilteredAlgebra& alg) {
    const Coordinates& co = *alg.coords();
    const std::size_t n = alg.dim();
    ValidationReport report;
    report.precision = alg.precision();

    AxiomCheck residue{"unique-valuation-zero", true, {}};
    const std::size_t zero_count = co.level_start(1);
    if (zero_count != 1) {
        residue.passed = false;
        residue.witness = std::to_string(zero_count) + " basis elements of valuation 0";
        if (zero_count > 1) residue.witness += " (" + co.names()[0] + ", " + co.names()[1] + ")";
    } else if (alg.unit_index() != 0) {
        residue.passed = false;
        residue.witness = "valuation-0 element " + co.names()[0] + " is not the unit";
    }
    report.checks.push_back(residue);

    AxiomCheck unit{"unit-laws", true, {}};
    const std::size_t u = alg.unit_index();
    for (std::size_t k = 0; k < n && unit.passed; ++k) {
        const SparseVector expect{{static_cast<std::uint32_t>(k), 1}};
        if (alg.basis_product(u, k) != expect) {
            unit.passed = false;
            unit.witness = "1*" + co.names()[k] + " != " + co.names()[k];
        } else if (alg.basis_product(k, u) != expect) {
            unit.passed = false;
            unit.witness = co.names()[k] + "*1 != " + co.names()[k];
        }
    }
    report.checks.push_back(unit);

    AxiomCheck compat{"filtration-compatibility", true, {}};
    AxiomCheck ideals{"filtration-ideals", true, {}};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int vi = co.valuation_of_basis(i);
            const int vj = co.valuation_of_basis(j);
            for (const Term& t : alg.basis_product(i, j)) {
                const int vt = co.valuation_of_basis(t.index);
                if (compat.passed && vt < vi + vj) {
                    compat.passed = false;
                    compat.witness = "(" + co.names()[i] + ", " + co.names()[j] + ") -> " + co.names()[t.index];
                }
                // F^{v_i} and F^{v_j} must absorb products from either side
                if (ideals.passed && vt < std::max(vi, vj)) {
                    ideals.passed = false;
                    ideals.witness = "(" + co.names()[i] + ", " + co.names()[j] + ") -> " + co.names()[t.index];
                }
            }
        }
    }
    report.checks.push_back(compat);
    report.checks.push_back(ideals);
    return report;
}

std::optional<std::string> associativity_witness(const TruncatedFilteredAlgebra& alg) {
    const Coordinates& co = *alg.coords();
    const PrimeField& f = alg.field();
    const std::size_t n = alg.dim();
    const int N = alg.precision();
    auto add_scaled = [&](Vector& acc, Scalar c, const SparseVector& v) {
        for (const Term& t : v) acc[t.index] = f.fma(c, t.coeff, acc[t.index]);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (co.valuation_of_basis(i) + co.valuation_of_basis(j) > N) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (co.valuation_of_basis(i) + co.valuation_of_basis(j) + co.valuation_of_basis(k) > N) continue;
                Vector lhs(n, 0), rhs(n, 0);
                for (const Term& t : alg.basis_product(i, j)) add_scaled(lhs, t.coeff, alg.basis_product(t.index, k));
                for (const Term& t : alg.basis_product(j, k)) add_scaled(rhs, t.coeff, alg.basis_product(i, t.index));
                if (lhs != rhs) {
                    const auto& nm = co.names();
                    return "(" + nm[i] + "*" + nm[j] + ")*" + nm[k] + " != " + nm[i] + "*(" + nm[j] + "*" + nm[k] + ")";
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace cfa
