#include <doctest.h>

#include <cmath>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/lab.hpp"

using namespace polyspec;
using constants::pi;

TEST_CASE("disk coefficients") {
    const HeatCoefficients d = coefficients_smooth_disk(1.0);
    CHECK(d.a_minus1 == doctest::Approx(0.25));
    CHECK(d.a_minus_half == doctest::Approx(-std::sqrt(pi) / 4.0));
    CHECK(*d.a_0_exact == Rational(1, 6));
    CHECK_THROWS_AS(coefficients_smooth_disk(0.0), DomainError);
}

TEST_CASE("regular n-gons approach the disk in area and perimeter but not in a_0") {
    std::vector<int> ns;
    for (int n = 3; n <= 60; ++n) ns.push_back(n);
    const NgonReport rep = polygon_to_disk_experiment(ns, 1.0);
    CHECK(rep.a0_exact_all);
    CHECK(rep.monotone_minus1);
    CHECK(rep.monotone_minus_half);
    CHECK(rep.monotone_hausdorff);
    CHECK(rep.rows.front().coeffs.a_0 == doctest::Approx(1.0 / 3.0));
    CHECK(rep.rows[1].coeffs.a_0 == doctest::Approx(0.25));
    for (const NgonRow& r : rep.rows) CHECK(r.gap == doctest::Approx(1.0 / (6.0 * (r.n - 2))));
}

TEST_CASE("rounded polygons converge to the polygon but keep a_0 = 1/6") {
    const GapReport g = disk_to_polygon_gap(ShapeSpec::square(1));
    CHECK(g.n == 4);
    CHECK(g.gap == doctest::Approx(1.0 / 12.0));
    CHECK(g.bound_holds);
    CHECK(g.equiangular);
    REQUIRE(g.approximants.size() == 6);
    for (std::size_t i = 1; i < g.approximants.size(); ++i) {
        CHECK(g.approximants[i].err_minus1 < g.approximants[i - 1].err_minus1);
        CHECK(g.approximants[i].a_0 == doctest::Approx(1.0 / 6.0));
    }
    const GapReport e = disk_to_polygon_gap(ShapeSpec::hemi_equilateral(1));
    CHECK(e.bound_holds);
    CHECK_FALSE(e.equiangular);
    CHECK(e.gap > e.lower_bound);
}

TEST_CASE("random convex polygons satisfy the gap bound") {
    for (unsigned seed = 1; seed <= 30; ++seed) {
        const int n = 3 + int(seed % 8);
        const GapReport g = disk_to_polygon_gap(random_convex_polygon(n, seed));
        CHECK(g.bound_holds);
    }
    // Reproducible for a fixed seed.
    const ShapeSpec pa = random_convex_polygon(7, 42), pb = random_convex_polygon(7, 42);
    const auto* a = pa.get_if<ConvexPolygon>();
    const auto* b = pb.get_if<ConvexPolygon>();
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->vertices.front().x == b->vertices.front().x);
}
