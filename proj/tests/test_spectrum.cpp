#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/spectrum.hpp"

using namespace polyspec;
using constants::pi;

TEST_CASE("rectangle and isosceles eigenvalues") {
    const EigenvalueList r = enumerate(ShapeSpec::rectangle(pi, pi), BoundaryCondition::Dirichlet, 10.0);
    REQUIRE(r.entries.size() == 4);
    const double values[] = {2, 5, 8, 10};
    const std::int64_t mult[] = {1, 2, 1, 2};
    for (int i = 0; i < 4; ++i) {
        CHECK(r.entries[i].value == doctest::Approx(values[i]));
        CHECK(r.entries[i].multiplicity == mult[i]);
    }
    CHECK(counting_function(r, 10.0) == 6);
    CHECK(counting_function(r, 1.0) == 0);
    CHECK_THROWS(counting_function(r, 11.0));

    const EigenvalueList d = enumerate(ShapeSpec::isosceles_right(pi), BoundaryCondition::Dirichlet, 10.0);
    REQUIRE(d.entries.size() == 2);
    CHECK(d.entries[0].value == doctest::Approx(5.0));
    CHECK(d.entries[1].value == doctest::Approx(10.0));

    const EigenvalueList n = enumerate(ShapeSpec::square(1), BoundaryCondition::Neumann, 1.0);
    CHECK(counting_function(n, 0.0) == 1);
}

TEST_CASE("rectangle enumeration against a brute-force oracle") {
    const double a = 1.0, b = 1.7, cutoff = 400.0;
    std::int64_t count = 0;
    for (int m = 1; m < 100; ++m)
        for (int k = 1; k < 100; ++k)
            if (pi * pi * (m * m / (a * a) + k * k / (b * b)) <= cutoff) ++count;
    CHECK(enumerate(ShapeSpec::rectangle(a, b), BoundaryCondition::Dirichlet, cutoff).total_count() == count);
}

TEST_CASE("convex polygons have no closed-form spectrum") {
    CHECK_THROWS_AS(enumerate(regular_ngon(5, 1.0), BoundaryCondition::Dirichlet, 10.0), Unsupported);
}

TEST_CASE("orbit classification") {
    const OrbitCheck a = orbit_of(3, 0);
    REQUIRE(a.accepted());
    CHECK(a.orbit->form_value == 9);
    std::vector<IndexPair> got(a.orbit->orbit.begin(), a.orbit->orbit.end());
    std::vector<IndexPair> want = {{0, 3}, {0, -3}, {-3, -3}, {-3, 0}, {3, 0}, {3, 3}};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    const OrbitCheck c = orbit_of(1, 2);
    CHECK_FALSE(c.accepted());
    CHECK(*c.violated == PinskyCondition::C);
    const OrbitCheck b = orbit_of(1, 1);
    CHECK_FALSE(b.accepted());
    CHECK(*b.violated == PinskyCondition::A);
}

TEST_CASE("orbit bijection and parametrizations agree") {
    CHECK(verify_orbit_bijection(20).ok());
    CHECK(compare_equilateral_parametrizations(1.0, 200.0 * 16.0 * pi * pi / 9.0).ok());
}

TEST_CASE("equilateral eigenfunctions vanish on the boundary") {
    const BoundaryResidual r = eigenfunction_boundary_residual(3, 0, 60);
    CHECK(r.boundary_max < 1e-10);
    CHECK(r.pde_max < 1e-8 * std::max(1.0, r.eigenvalue * r.function_scale));
    CHECK(r.eigenvalue == doctest::Approx(16.0 * pi * pi / 27.0 * 9.0));
}

TEST_CASE("Weyl law for the square") {
    const double area = 1.0, cutoff = 4.0 * pi * 20000.0 / area;
    const EigenvalueList l = enumerate(ShapeSpec::square(1), BoundaryCondition::Dirichlet, cutoff);
    const double ratio = l.total_count() * 4.0 * pi / (cutoff * area);
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);
}
