#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyspec/heat.hpp"
#include "polyspec/lab.hpp"
#include "polyspec/shapes.hpp"
#include "polyspec/spectrum.hpp"
#include "polyspec/verify.hpp"
#include "polyspec/zeta.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace polyspec;

namespace {

py::dict zeta_result(const ZetaResult& r) {
    return py::dict("value"_a = r.value, "error_bound"_a = r.error_bound, "method"_a = to_string(r.method));
}

py::dict heat_value(const HeatTraceValue& v) {
    return py::dict("t"_a = v.t, "value"_a = v.value, "method"_a = to_string(v.method), "tail_bound"_a = v.tail_bound);
}

}  // namespace

PYBIND11_MODULE(_polyspec, m) {
    m.doc() = "Spectral invariants of integrable polygons";

    py::enum_<BoundaryCondition>(m, "BoundaryCondition")
        .value("Dirichlet", BoundaryCondition::Dirichlet)
        .value("Neumann", BoundaryCondition::Neumann);

    py::enum_<HeatMethod>(m, "HeatMethod")
        .value("Auto", HeatMethod::Auto)
        .value("ThetaForm", HeatMethod::ThetaForm)
        .value("DirectEigenSum", HeatMethod::DirectEigenSum)
        .value("TransformedSeries", HeatMethod::TransformedSeries);

    py::class_<ShapeSpec>(m, "Shape")
        .def_static("rectangle", &ShapeSpec::rectangle, "a"_a, "b"_a)
        .def_static("square", &ShapeSpec::square, "a"_a)
        .def_static("equilateral", &ShapeSpec::equilateral, "l"_a)
        .def_static("isosceles_right", &ShapeSpec::isosceles_right, "a"_a)
        .def_static("hemi_equilateral", &ShapeSpec::hemi_equilateral, "l"_a)
        .def_static("box", &ShapeSpec::box, "dims"_a)
        .def_static("regular_ngon", &regular_ngon, "n"_a, "circumradius"_a)
        .def_property_readonly("name", &ShapeSpec::name)
        .def("__repr__", [](const ShapeSpec& s) { return "<Shape " + s.name() + ">"; })
        .def("summary", [](const ShapeSpec& s) {
            const GeometrySummary g = summarize(s);
            return py::dict("area"_a = g.area, "perimeter"_a = g.perimeter, "angles"_a = g.angles,
                            "shortest_geodesic"_a = g.shortest_geodesic);
        });

    m.def(
        "eigenvalues",
        [](const ShapeSpec& s, BoundaryCondition bc, double cutoff) {
            std::vector<std::pair<double, std::int64_t>> out;
            for (const auto& e : enumerate(s, bc, cutoff).entries) out.emplace_back(e.value, e.multiplicity);
            return out;
        },
        "shape"_a, "bc"_a, "cutoff"_a, "(value, multiplicity) pairs up to the cutoff");

    m.def(
        "spectral_zeta", [](const ShapeSpec& s, double x, double tol) { return zeta_result(spectral_zeta(s, x, tol)); },
        "shape"_a, "s"_a, "tol"_a = 1e-13);
    m.def(
        "epstein_zeta",
        [](double a, double b, double c, double s, double tol) {
            return zeta_result(epstein_zeta(QuadraticForm(a, b, c), s, tol));
        },
        "a"_a, "b"_a, "c"_a, "s"_a, "tol"_a = 1e-13);
    m.def(
        "zeta_prime_zero",
        [](const ShapeSpec& s) {
            const ZetaPrimeZero z = zeta_prime_zero(s);
            return py::dict("series_form"_a = zeta_result(z.series_form), "eta_form"_a = zeta_result(z.eta_form),
                            "difference"_a = z.difference, "agree"_a = z.agree, "value"_a = z.mean());
        },
        "shape"_a);
    m.def("determinant", &determinant, "shape"_a);

    m.def(
        "heat_trace",
        [](const ShapeSpec& s, BoundaryCondition bc, double t, HeatMethod method, double tol) {
            return heat_value(heat_trace(s, bc, t, method, tol));
        },
        "shape"_a, "bc"_a, "t"_a, "method"_a = HeatMethod::Auto, "tol"_a = 1e-14);
    m.def(
        "heat_constant_term",
        [](const ShapeSpec& s, BoundaryCondition bc) {
            const Rational r = expansion(s, bc, 0).constant_term;
            return std::make_pair(r.numerator(), r.denominator());
        },
        "shape"_a, "bc"_a, "t^0 coefficient as (numerator, denominator)");
    m.def(
        "fit_sharp_rate",
        [](const ShapeSpec& s, BoundaryCondition bc, const std::vector<double>& grid) {
            const RateFit f = fit_sharp_rate(s, bc, grid);
            return py::dict("c_hat"_a = f.c_hat, "expected"_a = f.expected);
        },
        "shape"_a, "bc"_a, "t_grid"_a);
    m.def(
        "torus_heat_trace",
        [](const std::array<std::array<double, 2>, 2>& basis, double t) {
            const TorusHeatTrace h = torus_heat_trace(basis, t);
            return py::dict("eigen_side"_a = h.eigen_side, "lattice_side"_a = h.lattice_side,
                            "tail_bound"_a = h.tail_bound, "agree"_a = h.agree);
        },
        "basis"_a, "t"_a);

    m.def(
        "acceptance_check",
        [](int id) {
            const CheckResult c = run_acceptance_check(id);
            return py::dict("id"_a = c.id, "name"_a = c.name, "passed"_a = c.passed, "measured"_a = c.measured,
                            "tolerance"_a = c.tolerance);
        },
        "id"_a);
}
