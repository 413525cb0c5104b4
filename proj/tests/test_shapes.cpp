#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/shapes.hpp"

using namespace polyspec;
using constants::pi;

TEST_CASE("geometry summaries") {
    const GeometrySummary r = summarize(ShapeSpec::rectangle(1, 2));
    CHECK(r.area == doctest::Approx(2.0));
    CHECK(r.perimeter == doctest::Approx(6.0));
    CHECK(*r.shortest_geodesic == doctest::Approx(2.0));

    const GeometrySummary e = summarize(ShapeSpec::equilateral(1));
    CHECK(e.area == doctest::Approx(std::sqrt(3.0) / 4.0));
    CHECK(e.perimeter == doctest::Approx(3.0));
    CHECK(*e.shortest_geodesic == doctest::Approx(1.5));

    const GeometrySummary h = summarize(ShapeSpec::hemi_equilateral(1));
    CHECK(h.area == doctest::Approx(std::sqrt(3.0) / 8.0));
    CHECK(h.perimeter == doctest::Approx((3.0 + std::sqrt(3.0)) / 2.0));
    CHECK(*h.shortest_geodesic == doctest::Approx(std::sqrt(3.0) / 2.0));

    CHECK(*summarize(ShapeSpec::isosceles_right(1)).shortest_geodesic == doctest::Approx(std::sqrt(2.0)));
    CHECK(*summarize(ShapeSpec::box({1, 2, 3})).shortest_geodesic == doctest::Approx(2.0));
}

TEST_CASE("invalid shapes are rejected at construction") {
    CHECK_THROWS_AS(ShapeSpec::rectangle(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ShapeSpec::equilateral(-1), std::invalid_argument);
    CHECK_THROWS_AS(ShapeSpec::box({}), std::invalid_argument);
    CHECK_THROWS_AS(ShapeSpec::convex_polygon({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS(regular_ngon(2, 1.0));
}

TEST_CASE("corner constants") {
    CHECK(*corner_constant(summarize(ShapeSpec::square(1))).exact == Rational(1, 4));
    CHECK(*corner_constant(summarize(ShapeSpec::equilateral(1))).exact == Rational(1, 3));
    CHECK(*corner_constant(summarize(ShapeSpec::isosceles_right(1))).exact == Rational(3, 8));
    CHECK(*corner_constant(summarize(ShapeSpec::hemi_equilateral(1))).exact == Rational(5, 12));
    CHECK(corner_constant(std::vector<double>{pi / 2, pi / 3, pi / 6}) == doctest::Approx(5.0 / 12.0));
    CHECK_THROWS_AS(corner_constant(std::vector<double>{0.0, pi}), DomainError);
}

TEST_CASE("regular n-gons") {
    const GeometrySummary sq = summarize(regular_ngon(4, 1.0));
    CHECK(sq.area == doctest::Approx(2.0));
    CHECK(sq.perimeter == doctest::Approx(4.0 * std::sqrt(2.0)));
    const GeometrySummary tri = summarize(regular_ngon(3, 1.0));
    CHECK(tri.perimeter == doctest::Approx(3.0 * std::sqrt(3.0)));
    for (double a : summarize(regular_ngon(6, 1.0)).angles) CHECK(a == doctest::Approx(2.0 * pi / 3.0));
}

TEST_CASE("hausdorff distance to the circumscribed disk") {
    CHECK(hausdorff_distance_convex(regular_ngon(4, 1.0), 1.0) == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0));
    for (int n : {3, 5, 17, 100}) {
        // Oracle: dense sampling of the polygon boundary distance to the circle.
        const ShapeSpec poly = regular_ngon(n, 1.0);
        const auto* p = poly.get_if<ConvexPolygon>();
        REQUIRE(p);
        double worst = 0.0;
        const auto& v = p->vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point a = v[i], b = v[(i + 1) % v.size()];
            for (int k = 0; k <= 2000; ++k) {
                const double u = k / 2000.0;
                worst = std::max(worst, 1.0 - std::hypot(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)));
            }
        }
        CHECK(hausdorff_distance_convex(regular_ngon(n, 1.0), 1.0) == doctest::Approx(worst).epsilon(1e-6));
        CHECK(hausdorff_distance_convex(regular_ngon(n, 1.0), 1.0) == doctest::Approx(1.0 - std::cos(pi / n)));
    }
}

TEST_CASE("polygon files") {
    const std::string path = "polyspec_test_polygon.txt";
    {
        std::ofstream f(path);
        f << "0,0\n2,0\n2,1\n0,1\n";
    }
    const GeometrySummary g = summarize(read_polygon_file(path));
    CHECK(g.area == doctest::Approx(2.0));
    CHECK(g.perimeter == doctest::Approx(6.0));
    std::remove(path.c_str());
    CHECK_THROWS(read_polygon_file("does/not/exist.txt"));
}
