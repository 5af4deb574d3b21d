#include "cfa/space.hpp"

#include <algorithm>
#include <stdexcept>

#include "cfa/errors.hpp"

namespace cfa {

FilteredSpace::FilteredSpace(AlgebraPtr ring, CoordinatesPtr coords, BilinearTable action)
    : ring_(std::move(ring)), coords_(std::move(coords)), action_(std::move(action)) {
    if (!(ring_->field() == coords_->field())) throw BadParams("space and ring use different fields");
    if (action_.left_dim() != ring_->dim() || action_.right_dim() != coords_->dim() ||
        action_.out_dim() != coords_->dim())
        throw BadParams("action table does not match ring and space bases");
}

FilteredSpace FilteredSpace::regular(AlgebraPtr ring) {
    auto coords = ring->coords();
    BilinearTable table = ring->table();
    return FilteredSpace(std::move(ring), std::move(coords), std::move(table));
}

ValidationReport validate_space(const FilteredSpace& space) {
    const Coordinates& rc = *space.ring().coords();
    const Coordinates& mc = *space.coords();
    ValidationReport report;
    report.precision = space.precision();

    AxiomCheck unital{"unital-action", true, {}};
    const std::size_t u = space.ring().unit_index();
    for (std::size_t k = 0; k < space.dim() && unital.passed; ++k) {
        const SparseVector expect{{static_cast<std::uint32_t>(k), 1}};
        if (space.action().at(u, k) != expect) {
            unital.passed = false;
            unital.witness = "1." + mc.names()[k] + " != " + mc.names()[k];
        }
    }
    report.checks.push_back(unital);

    AxiomCheck compat{"filtration-compatibility", true, {}};
    AxiomCheck subspaces{"filtration-subspaces", true, {}};
    for (std::size_t i = 0; i < space.ring().dim(); ++i) {
        for (std::size_t k = 0; k < space.dim(); ++k) {
            const int vi = rc.valuation_of_basis(i);
            const int vk = mc.valuation_of_basis(k);
            for (const Term& t : space.action().at(i, k)) {
                const int vt = mc.valuation_of_basis(t.index);
                if (compat.passed && vt < vi + vk) {
                    compat.passed = false;
                    compat.witness = "(" + rc.names()[i] + ", " + mc.names()[k] + ") -> " + mc.names()[t.index];
                }
                if (subspaces.passed && vt < vk) {
                    subspaces.passed = false;
                    subspaces.witness = "(" + rc.names()[i] + ", " + mc.names()[k] + ") -> " + mc.names()[t.index];
                }
            }
        }
    }
    report.checks.push_back(compat);
    report.checks.push_back(subspaces);
    return report;
}

namespace {

void require_closed(const FilteredSpace& space, const Subgroup& sub) {
    for (std::size_t i = 0; i < space.ring().dim(); ++i) {
        for (const auto& row : sub.basis()) {
            if (!sub.contains(space.act_basis(i, row))) {
                throw NotSubspace("subgroup is not closed under the action: " +
                                  space.ring().coords()->names()[i] + " . (" + space.coords()->format(row) +
                                  ") leaves it");
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------

Vector SubspaceModel::to_ambient(std::span<const Scalar> v) const {
    const PrimeField& f = space.field();
    Vector out(in_ambient.coordinates()->dim(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        for (std::size_t c = 0; c < out.size(); ++c)
            if (embedding[k][c] != 0) out[c] = f.fma(v[k], embedding[k][c], out[c]);
    }
    return out;
}

Vector SubspaceModel::from_ambient(std::span<const Scalar> v) const {
    if (!in_ambient.contains(v)) throw BadParams("element is not in the subspace");
    return in_ambient.coordinates_in_basis(v);
}

SubspaceModel induced_subspace(const FilteredSpace& space, const Subgroup& sub) {
    require_closed(space, sub);
    const Coordinates& ac = *space.coords();
    std::vector<std::string> names;
    std::vector<int> vals;
    for (std::size_t k = 0; k < sub.dim(); ++k) {
        names.push_back(ac.format(sub.basis()[k]));
        vals.push_back(sub.row_valuation(k));
    }
    auto coords = std::make_shared<const Coordinates>(ac.field(), ac.precision(), names, vals, ac.exact());
    BilinearTable table(space.ring().dim(), sub.dim(), sub.dim());
    for (std::size_t i = 0; i < space.ring().dim(); ++i)
        for (std::size_t k = 0; k < sub.dim(); ++k)
            table.set(i, k, to_sparse(sub.coordinates_in_basis(space.act_basis(i, sub.basis()[k]))));
    return SubspaceModel{FilteredSpace(space.ring_ptr(), coords, std::move(table)), sub, sub.basis()};
}

// ---------------------------------------------------------------------------

Vector QuotientModel::project(std::span<const Scalar> ambient) const {
    Vector r = kernel.reduce(ambient);
    Vector out(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) out[k] = r[kept[k]];
    return out;
}

Vector QuotientModel::lift(std::span<const Scalar> v) const {
    Vector out(kernel.coordinates()->dim(), 0);
    for (std::size_t k = 0; k < kept.size(); ++k) out[kept[k]] = v[k];
    return out;
}

QuotientModel quotient_space(const FilteredSpace& space, const Subgroup& sub) {
    require_closed(space, sub);
    const Coordinates& ac = *space.coords();
    std::vector<bool> pivot(ac.dim(), false);
    for (auto p : sub.pivots()) pivot[p] = true;
    std::vector<std::size_t> kept;
    std::vector<std::string> names;
    std::vector<int> vals;
    for (std::size_t c = 0; c < ac.dim(); ++c) {
        if (pivot[c]) continue;
        kept.push_back(c);
        names.push_back(ac.names()[c]);
        vals.push_back(ac.valuation_of_basis(c));
    }
    auto coords = std::make_shared<const Coordinates>(ac.field(), ac.precision(), names, vals, ac.exact());
    QuotientModel model{FilteredSpace(space.ring_ptr(), coords, BilinearTable(space.ring().dim(), kept.size(), kept.size())),
                        sub, kept};
    BilinearTable table(space.ring().dim(), kept.size(), kept.size());
    for (std::size_t i = 0; i < space.ring().dim(); ++i)
        for (std::size_t k = 0; k < kept.size(); ++k)
            table.set(i, k, to_sparse(model.project(space.act_basis(i, ac.unit_vector(kept[k])))));
    model.space = FilteredSpace(space.ring_ptr(), coords, std::move(table));
    return model;
}

// ---------------------------------------------------------------------------

RefilteredModel refilter(const FilteredSpace& space, const std::vector<Subgroup>& chain, int precision) {
    const Coordinates& oc = *space.coords();
    if (chain.size() != static_cast<std::size_t>(precision) + 2)
        throw BadParams("filtration chain must have precision + 2 entries");
    if (chain.front().dim() != oc.dim()) throw BadParams("filtration chain must start with the whole space");
    if (chain.back().dim() != 0) throw BadParams("filtration chain must end with zero");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!chain[i + 1].is_subset_of(chain[i])) throw BadParams("filtration chain is not decreasing");

    EchelonBasis seen(oc.field(), oc.dim());
    std::vector<std::pair<int, Vector>> picked;  // collected from the top level down
    for (int i = precision; i >= 0; --i) {
        for (const auto& row : chain[static_cast<std::size_t>(i)].basis()) {
            if (seen.insert(row)) picked.emplace_back(i, row);
        }
    }
    std::reverse(picked.begin(), picked.end());
    std::stable_sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    const std::size_t n = oc.dim();
    Matrix to_old(oc.field(), n, n);
    std::vector<std::string> names;
    std::vector<int> vals;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t c = 0; c < n; ++c) to_old(c, k) = picked[k].second[c];
        names.push_back(oc.format(picked[k].second));
        vals.push_back(picked[k].first);
    }
    auto inv = inverse(to_old);
    if (!inv) throw std::logic_error("refilter: adapted basis is singular");
    auto coords = std::make_shared<const Coordinates>(oc.field(), precision, names, vals, oc.exact());
    BilinearTable table(space.ring().dim(), n, n);
    for (std::size_t i = 0; i < space.ring().dim(); ++i)
        for (std::size_t k = 0; k < n; ++k)
            table.set(i, k, to_sparse(inv->apply(space.act_basis(i, picked[k].second))));
    return RefilteredModel{FilteredSpace(space.ring_ptr(), coords, std::move(table)), std::move(to_old),
                           std::move(*inv)};
}

FilteredSpace shifted(const FilteredSpace& space, int s) {
    const Coordinates& oc = *space.coords();
    std::vector<int> vals = oc.valuations();
    for (auto& v : vals) {
        v += s;
        if (v < 0) throw BadParams("shift would make a valuation negative");
    }
    const int precision = oc.precision() + s;
    auto coords = std::make_shared<const Coordinates>(oc.field(), precision, oc.names(), vals, oc.exact());
    return FilteredSpace(space.ring_ptr(), coords, space.action());
}

std::vector<Subgroup> filtration_chain(const FilteredSpace& space) {
    std::vector<Subgroup> chain;
    for (int i = 0; i <= space.precision() + 1; ++i) chain.push_back(Subgroup::level(space.coords(), i));
    return chain;
}

}  // namespace cfa
