#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "superbracket/brackets.hpp"
#include "superbracket/chart_file.hpp"
#include "superbracket/conformance.hpp"
#include "superbracket/format.hpp"
#include "superbracket/geometry.hpp"
#include "superbracket/homotopy.hpp"
#include "superbracket/koszul.hpp"
#include "superbracket/quasitriangular.hpp"

namespace py = pybind11;
using namespace superbracket;

namespace {

Parity parity_of_name(const std::string& s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw Error(ErrorKind::Parse, "parity must be 'even' or 'odd'");
}

std::string parity_name(const Poly& f) {
    switch (f.parity_class()) {
        case ParityClass::Even: return "even";
        case ParityClass::Odd: return "odd";
        case ParityClass::Zero: return "zero";
        default: return "inhomogeneous";
    }
}

// Charts are immutable and shared; Python sees a thin handle.
struct Chart {
    SpacePtr s;
};

Poly parse_on(const Chart& c, const std::string& text) { return expr::Evaluator(c.s).eval(text); }

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact brackets of graded-commutative polynomials";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<Chart>(m, "Chart")
        .def_property_readonly("size", [](const Chart& c) { return c.s->size(); })
        .def("variables",
             [](const Chart& c) {
                 const Space& s = *c.s;
                 std::vector<py::tuple> out;
                 for (const auto& v : s.variables())
                     out.push_back(py::make_tuple(v.name, to_string(v.parity), to_string(v.role),
                                                  py::make_tuple(v.weight.w1, v.weight.w2)));
                 return out;
             })
        .def("names",
             [](const Chart& c) {
                 std::vector<std::string> out;
                 for (const auto& v : c.s->variables()) out.push_back(v.name);
                 return out;
             })
        .def("__repr__", [](const Chart& c) {
            std::string r = "<Chart";
            for (const auto& v : c.s->variables()) r += " " + v.name;
            return r + ">";
        });

    m.def("base", [](const std::vector<std::pair<std::string, std::string>>& coords) {
        std::vector<std::pair<std::string, Parity>> c;
        for (const auto& [n, p] : coords) c.emplace_back(n, parity_of_name(p));
        return Chart{base_space(c)};
    }, py::arg("coordinates"), "Chart from [(name, 'even'|'odd'), ...].");
    m.def("cotangent", [](const Chart& c) { return Chart{cotangent(c.s)}; });
    m.def("anticotangent", [](const Chart& c) { return Chart{anticotangent(c.s)}; });
    m.def("antitangent", [](const Chart& c) { return Chart{antitangent(c.s)}; });
    m.def("forms_chart", [](const Chart& c) { return Chart{forms_chart(c.s)}; });
    m.def("with_parameter", [](const Chart& c, const std::string& n) { return Chart{with_parameter(c.s, n)}; });
    m.def("vector_bundle", [](const Chart& b, const std::vector<std::string>& parities, bool shifted) {
        std::vector<Parity> p;
        for (const auto& s : parities) p.push_back(parity_of_name(s));
        return Chart{vector_bundle(b.s, p, shifted)};
    }, py::arg("base"), py::arg("fiber_parities"), py::arg("shifted") = true);
    m.def("load_chart", [](const std::string& text) {
        auto doc = load_chart(text);
        py::dict lets;
        for (const auto& [k, v] : doc.lets) lets[py::str(k)] = v;
        return py::make_tuple(Chart{doc.chart}, lets);
    }, "Parse chart-file text; returns (chart, {name: Poly}).");

    py::class_<Poly>(m, "Poly")
        .def(py::init(&parse_on), py::arg("chart"), py::arg("text"))
        .def_property_readonly("chart", [](const Poly& f) { return Chart{f.space()}; })
        .def_property_readonly("parity", &parity_name)
        .def_property_readonly("weight",
                               [](const Poly& f) -> py::object {
                                   if (f.is_zero()) return py::none();
                                   auto w = weight_of(f);
                                   if (!w) return py::none();
                                   return py::make_tuple(w->w1, w->w2);
                               })
        .def("terms",
             [](const Poly& f) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& [mono, c] : f.terms()) out.emplace_back(to_text(mono, *f.space()), rational_text(c));
                 return out;
             })
        .def("is_zero", &Poly::is_zero)
        .def("partial", [](const Poly& f, const std::string& v) { return partial(f, v); })
        .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
        .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
        .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
        .def("__mul__", [](const Poly& a, long c) { return a * Rational(c); })
        .def("__rmul__", [](const Poly& a, long c) { return a * Rational(c); })
        .def("__neg__", [](const Poly& a) { return -a; })
        .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
        .def("__str__", [](const Poly& f) { return to_text(f); })
        .def("__repr__", [](const Poly& f) { return "Poly(" + to_text(f) + ")"; });

    auto bil = [](auto br) {
        return [br](const Poly& f, const Poly& g) { return bilinear(br, f, g); };
    };
    m.def("poisson", bil([](const Poly& a, const Poly& b) { return poisson(a, b); }), "Canonical even bracket.");
    m.def("schouten", [](const Poly& f, const Poly& g, bool symmetric) {
        auto conv = symmetric ? OddConvention::Symmetric : OddConvention::Antisymmetric;
        return bilinear([conv](const Poly& a, const Poly& b) { return schouten(a, b, conv); }, f, g);
    }, py::arg("f"), py::arg("g"), py::arg("symmetric") = false, "Canonical odd bracket.");
    m.def("alpha", &alpha, "K_P = (D,P) on T*(Pi TM).");
    m.def("alpha_explicit", &alpha_explicit);
    m.def("higher_koszul", [](const Poly& p, const std::vector<Poly>& forms) {
        return higher_koszul(HigherPoissonStructure(p), forms);
    });
    m.def("d_form", [](const Poly& w) { return d_form(w, w.space()); }, "de Rham differential on a forms chart.");
    m.def("lichnerowicz", [](const Poly& p, const Poly& x) { return lichnerowicz(HigherPoissonStructure(p), x); });
    m.def("is_master", [](const Poly& h, bool odd) {
        return MasterHamiltonian(h, odd ? MasterKind::OddMaster : MasterKind::EvenMaster).is_master();
    }, py::arg("h"), py::arg("odd") = true);
    m.def("higher_schouten", [](const Poly& h, const std::vector<Poly>& args) {
        return higher_schouten(MasterHamiltonian(h, MasterKind::OddMaster), args);
    });

    m.def("shift", [](const Poly& h, const Poly& r) {
        return shift(ShiftDatum(MasterHamiltonian(h, MasterKind::OddMaster), r));
    }, py::arg("h"), py::arg("r"), "H(x, p + dr/dx).");
    m.def("classify_shift", [](const Poly& h, const Poly& r) {
        return std::string(to_string(classify(ShiftDatum(MasterHamiltonian(h, MasterKind::OddMaster), r))));
    });
    m.def("decompose", [](const Poly& h, const Poly& r) {
        auto d = coboundary_decompose(ShiftDatum(MasterHamiltonian(h, MasterKind::OddMaster), r));
        return py::make_tuple(d.h, d.coboundary, d.curvature);
    }, "(H, (H,r), 1/2 {r,r}_H) for H quadratic in momenta.");
    m.def("mx", [](const Poly& f) { return mx_transform(f.space()).apply(f); }, "Mackenzie-Xu relabeling.");

    m.def("_suite_json", [](const std::vector<std::string>& filter, std::uint64_t seed, unsigned jobs) {
        conformance::SuiteOptions o;
        o.filter = {filter.begin(), filter.end()};
        o.seed = seed;
        o.jobs = jobs;
        py::gil_scoped_release release;
        return conformance::to_json(conformance::run_suite(o), false);
    });
    m.def("manifest", &conformance::manifest);

    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Run a command line in process; returns (exit code, stdout, stderr).");
}
