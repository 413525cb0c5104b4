#include <doctest.h>

#include <cmath>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/heat.hpp"
#include "polyspec/spectrum.hpp"

using namespace polyspec;
using constants::pi;

namespace {

const BoundaryCondition D = BoundaryCondition::Dirichlet;
const BoundaryCondition N = BoundaryCondition::Neumann;

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a)); }

}  // namespace

TEST_CASE("the three evaluation methods agree") {
    for (const ShapeSpec& sh : {ShapeSpec::square(1), ShapeSpec::rectangle(1, 2), ShapeSpec::equilateral(1),
                                ShapeSpec::isosceles_right(1), ShapeSpec::hemi_equilateral(1)})
        for (BoundaryCondition bc : {D, N})
            for (double t : {0.01, 0.1, 1.0}) {
                const double th = heat_trace(sh, bc, t, HeatMethod::ThetaForm).value;
                const double ei = heat_trace(sh, bc, t, HeatMethod::DirectEigenSum).value;
                const double tr = heat_trace(sh, bc, t, HeatMethod::TransformedSeries).value;
                CHECK(close(th, ei, 1e-12));
                CHECK(close(th, tr, 1e-12));
            }
}

TEST_CASE("heat trace against an explicit eigenvalue sum") {
    const EigenvalueList l = enumerate(ShapeSpec::rectangle(1, 2), D, 4000.0);
    double sum = 0.0;
    for (const auto& e : l.entries) sum += e.multiplicity * std::exp(-e.value * 0.1);
    CHECK(heat_trace(ShapeSpec::rectangle(1, 2), D, 0.1).value == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("large-time limits") {
    CHECK(heat_trace(ShapeSpec::equilateral(1), D, 50.0).value == doctest::Approx(0.0));
    CHECK(heat_trace(ShapeSpec::equilateral(1), N, 50.0).value == doctest::Approx(1.0));
}

TEST_CASE("hemi-equilateral trace from the equilateral one") {
    const double t = 0.2;
    double extra = 0.0;
    for (int m = 1; m < 50; ++m) extra += std::exp(-16 * pi * pi * m * m * t / 3.0);
    const double eq = heat_trace(ShapeSpec::equilateral(1), D, t).value;
    CHECK(heat_trace(ShapeSpec::hemi_equilateral(1), D, t).value == doctest::Approx(0.5 * (eq - extra)).epsilon(1e-12));
}

TEST_CASE("expansions") {
    const HeatExpansion r = expansion(ShapeSpec::rectangle(1, 2), D, 1);
    CHECK(r.constant_term == Rational(1, 4));
    CHECK(r.sharp_rate == doctest::Approx(1.0));
    const double t = 0.03;
    double v = 0.0;
    for (const auto& term : r.terms) v += term.coeff * std::pow(t, term.t_power) * std::exp(-term.exp_rate / t);
    const double w = 2.0 / (4 * pi * t) - 3.0 / (4 * std::sqrt(pi * t)) + 0.25 +
                     (2.0 / (2 * pi * t) - 1.0 / (2 * std::sqrt(pi * t))) * std::exp(-1.0 / t);
    CHECK(v == doctest::Approx(w).epsilon(1e-13));

    const HeatExpansion e = expansion(ShapeSpec::equilateral(1), N, 1);
    CHECK(e.constant_term == Rational(1, 3));
    CHECK(e.sharp_rate == doctest::Approx(9.0 / 16.0));
    bool found = false;
    for (const auto& term : e.terms)
        if (std::fabs(term.exp_rate - 9.0 / 16.0) < 1e-12 && std::fabs(term.t_power + 0.5) < 1e-12)
            found = std::fabs(term.coeff - 3.0 / (4 * std::sqrt(pi))) < 1e-12;
    CHECK(found);

    const HeatExpansion s = expansion(ShapeSpec::square(1), D, 1);
    double lead = 0.0;
    for (const auto& term : s.terms)
        if (std::fabs(term.exp_rate - 1.0) < 1e-12 && std::fabs(term.t_power + 1.0) < 1e-12) lead = term.coeff;
    CHECK(lead == doctest::Approx(1.0 / pi));
}

TEST_CASE("remainder decays at the sharp rate") {
    const RemainderValue r = remainder(ShapeSpec::rectangle(1, 2), D, 0.05);
    CHECK(r.value == doctest::Approx(2.0 / (2 * pi * 0.05) * std::exp(-1.0 / 0.05)).epsilon(0.1));
    const std::vector<double> grid = {0.1, 0.05, 0.02, 0.01};
    CHECK(fit_sharp_rate(ShapeSpec::square(1), D, grid).c_hat == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit_sharp_rate(ShapeSpec::equilateral(1), D, grid).c_hat == doctest::Approx(9.0 / 16).epsilon(0.05));
    CHECK(fit_sharp_rate(ShapeSpec::isosceles_right(1), D, grid).c_hat == doctest::Approx(0.5).epsilon(0.05));
    CHECK(fit_sharp_rate(ShapeSpec::hemi_equilateral(1), D, grid).c_hat == doctest::Approx(3.0 / 16).epsilon(0.05));
    CHECK_THROWS(fit_sharp_rate(ShapeSpec::square(1), D, {0.1, 0.05}));
}

TEST_CASE("flat tori") {
    const LatticeBasis Z2{{{1, 0}, {0, 1}}};
    const TorusHeatTrace h = torus_heat_trace(Z2, 0.1);
    CHECK(h.agree);
    CHECK(std::fabs(h.eigen_side - h.lattice_side) < 1e-12);
    const ShortestVectors sv = torus_shortest_vectors(Z2);
    CHECK(sv.length == doctest::Approx(1.0));
    CHECK(sv.multiplicity == 4);
    CHECK(torus_heat_trace(Z2, 1e-3).lattice_side == doctest::Approx(1.0 / (4 * pi * 1e-3)).epsilon(1e-12));
    CHECK(fit_torus_rate(Z2, {0.1, 0.05, 0.02, 0.01}).c_hat == doctest::Approx(0.25).epsilon(0.05));
    const LatticeBasis hex{{{1, 0}, {0.5, std::sqrt(3.0) / 2}}};
    CHECK(torus_heat_trace(hex, 0.05).agree);
    CHECK_THROWS_AS(torus_heat_trace(LatticeBasis{{{1, 0}, {2, 0}}}, 0.1), DomainError);
}

TEST_CASE("boxes") {
    const double t = 0.01;
    const double lead = std::pow(0.5 * (1.0 / std::sqrt(pi * t) - 1.0), 3);
    CHECK(box_heat_trace({1, 1, 1}, D, t).value == doctest::Approx(lead).epsilon(1e-12));
    for (double tt : {0.02, 0.3})
        CHECK(box_heat_trace({1, 2}, D, tt).value ==
              doctest::Approx(heat_trace(ShapeSpec::rectangle(1, 2), D, tt).value).epsilon(1e-13));
    CHECK(fit_sharp_rate(ShapeSpec::box({1, 2, 3}), D, {0.1, 0.05, 0.02, 0.01}).c_hat ==
          doctest::Approx(1.0).epsilon(0.05));
}
