#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cfa/asymptotics.hpp"
#include "cfa/central_ext.hpp"
#include "cfa/cli.hpp"
#include "cfa/families.hpp"
#include "cfa/lifting.hpp"
#include "cfa/presentation.hpp"
#include "cfa/rees.hpp"

namespace py = pybind11;
using namespace cfa;

namespace {

py::object fraction(const Rational& q) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(q.numerator(), q.denominator());
}

py::dict hilbert_dict(const HilbertReport& h) {
    py::dict d;
    d["h"] = h.h;
    d["ell"] = h.ell;
    d["stable"] = h.stable;
    d["precision"] = h.precision;
    d["exact"] = h.exact;
    if (h.fit) {
        d["delta"] = h.delta();
        d["alpha"] = fraction(h.alpha());
    }
    return d;
}

struct Ring {
    AlgebraPtr ptr;
    const TruncatedFilteredAlgebra& operator*() const { return *ptr; }
};

}  // namespace

PYBIND11_MODULE(_cfa, m) {
    m.doc() = "Filtered nonassociative algebras over F_p";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    py::class_<Ring>(m, "Algebra")
        .def_static("family", [](const std::string& spec, std::uint32_t p, int N) {
            return Ring{build_family(parse_family(spec), PrimeField(p), N)};
        }, py::arg("spec"), py::arg("p") = 2, py::arg("precision") = 6)
        .def_property_readonly("prime", [](const Ring& r) { return r.ptr->field().modulus(); })
        .def_property_readonly("precision", [](const Ring& r) { return r.ptr->precision(); })
        .def_property_readonly("dim", [](const Ring& r) { return r.ptr->dim(); })
        .def_property_readonly("exact", [](const Ring& r) { return r.ptr->coords()->exact(); })
        .def_property_readonly("basis", [](const Ring& r) { return r.ptr->coords()->names(); })
        .def("element", [](const Ring& r, const std::string& s) { return parse_ring_element(*r.ptr, s); })
        .def("format", [](const Ring& r, const Vector& v) { return r.ptr->coords()->format(v); })
        .def("valuation", [](const Ring& r, const Vector& v) { return r.ptr->valuation(v); })
        .def("multiply", [](const Ring& r, const Vector& x, const Vector& y) { return r.ptr->multiply(x, y); })
        .def("invert", [](const Ring& r, const Vector& x) { return invert(r.ptr, x).inverse; })
        .def("validate", [](const Ring& r) { return validate(*r.ptr).all_passed(); })
        .def("associativity_witness", [](const Ring& r) { return associativity_witness(*r.ptr); })
        .def("hilbert", [](const Ring& r, int window) { return hilbert_dict(hilbert_unchecked(GradedView::of_ring(r.ptr), window)); },
             py::arg("window") = 3);

    py::class_<FilteredSpace>(m, "Space")
        .def_static("regular", [](const Ring& r) { return FilteredSpace::regular(r.ptr); })
        .def_static("derive", [](const Ring& ring, const std::string& how, const std::vector<std::string>& gens) {
            std::vector<Vector> v;
            for (const auto& g : gens) v.push_back(parse_ring_element(*ring.ptr, g));
            return derive_space(ring.ptr, how, v).space;
        })
        .def_property_readonly("dim", &FilteredSpace::dim)
        .def_property_readonly("precision", &FilteredSpace::precision)
        .def_property_readonly("ring", [](const FilteredSpace& s) { return Ring{s.ring_ptr()}; })
        .def_property_readonly("basis", [](const FilteredSpace& s) { return s.coords()->names(); })
        .def("hilbert", [](const FilteredSpace& s, int window) { return hilbert_dict(hilbert_unchecked(GradedView(s), window)); },
             py::arg("window") = 3)
        .def("artin_rees", [](const FilteredSpace& s, int window) {
            const auto r = artin_rees_constant(s, window);
            py::dict d;
            d["D"] = r.D;
            d["found"] = r.found;
            d["pass"] = r.pass;
            return d;
        }, py::arg("window") = 3)
        .def("size_series", [](const FilteredSpace& s, int window) {
            const auto ar = artin_rees_constant(s, window);
            const auto ss = size_series(s, ar.D, window);
            py::dict d;
            d["L"] = ss.L;
            d["stable"] = ss.stable;
            if (ss.fit) {
                d["delta"] = ss.fit->degree;
                d["alpha"] = fraction(ss.fit->leading);
            }
            d["match_graded"] = ss.match_graded;
            return d;
        }, py::arg("window") = 3)
        .def("dimension", [](const FilteredSpace& s, int window) {
            const auto ar = artin_rees_constant(s, window);
            const auto rep = dimension(s, window, ar.D);
            py::dict d;
            d["delta"] = rep.delta;
            d["alpha"] = fraction(rep.alpha);
            d["invariant"] = rep.invariant;
            return d;
        }, py::arg("window") = 3)
        .def("torsion", [](const FilteredSpace& s, bool domain, std::uint64_t seed) {
            TorsionOptions opt;
            opt.domain_asserted = domain;
            opt.seed = seed;
            const auto t = torsion_equivalence_check(s, opt);
            py::dict d;
            d["S1"] = t.S1;
            d["S2"] = t.S2;
            d["S3"] = t.S3;
            d["agree"] = t.agree;
            d["delta_R"] = t.delta_R;
            d["delta_M"] = t.delta_M;
            return d;
        }, py::arg("domain") = false, py::arg("seed") = 0)
        .def("extension_dimension", [](const FilteredSpace& s, const std::string& t, int window) {
            const auto ext = build_extension(s, multiplication_operator(s, parse_ring_element(s.ring(), t)));
            const auto d = dim_over_extension(ext, artin_rees_constant(s, window).D, window);
            py::dict out;
            out["delta_R"] = d.delta_R;
            out["delta_n"] = d.fit ? d.fit->degree : -1;
            out["invariant"] = d.invariant;
            out["k_table"] = ext.k_table;
            return out;
        }, py::arg("t"), py::arg("window") = 3);

    m.def("load", [](const std::string& text) {
        const LoadedObject o = build_presentation(parse_presentation(text));
        return py::make_tuple(Ring{o.ring}, o.space ? py::cast(*o.space) : py::none());
    }, py::arg("text"), "Build (ring, space or None) from presentation text");

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
