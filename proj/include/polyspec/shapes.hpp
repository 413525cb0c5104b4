#pragma once
// Geometry of the integrable polygons, boxes and general convex polygons.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace polyspec {

using Rational = boost::rational<std::int64_t>;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Rectangle {
    double a;
    double b;
};
struct EquilateralTriangle {
    double l;
};
// Legs of length a.
struct IsoscelesRightTriangle {
    double a;
};
// 30-60-90 triangle with hypotenuse l.
struct HemiEquilateralTriangle {
    double l;
};
struct Box {
    std::vector<double> dims;
};
struct ConvexPolygon {
    std::vector<Point> vertices;  // counterclockwise
    // Interior angles as multiples of pi, known only for constructed regular polygons.
    std::optional<std::vector<Rational>> angle_fractions;
};

class ShapeSpec {
public:
    using Kind = std::variant<Rectangle, EquilateralTriangle, IsoscelesRightTriangle,
                              HemiEquilateralTriangle, Box, ConvexPolygon>;

    static ShapeSpec rectangle(double a, double b);
    static ShapeSpec square(double a) { return rectangle(a, a); }
    static ShapeSpec equilateral(double l);
    static ShapeSpec isosceles_right(double a);
    static ShapeSpec hemi_equilateral(double l);
    static ShapeSpec box(std::vector<double> dims);
    static ShapeSpec convex_polygon(std::vector<Point> vertices);

    const Kind& kind() const { return kind_; }
    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&kind_);
    }
    bool is_integrable() const;
    std::string name() const;

private:
    explicit ShapeSpec(Kind k) : kind_(std::move(k)) {}
    friend ShapeSpec regular_ngon(int n, double circumradius);
    Kind kind_;
};

struct GeometrySummary {
    double area = 0.0;       // volume for boxes of dimension != 2
    double perimeter = 0.0;  // boundary measure for boxes of dimension != 2
    std::vector<double> angles;
    std::optional<std::vector<Rational>> angle_fractions;
    std::optional<double> shortest_geodesic;
};

GeometrySummary summarize(const ShapeSpec& shape);

// sum_i (pi^2 - g_i^2) / (24 pi g_i)
double corner_constant(const std::vector<double>& angles);
// Same sum for angles g_i = pi p_i / q_i, exactly: sum (q^2 - p^2) / (24 p q).
Rational corner_constant_exact(const std::vector<Rational>& fractions_of_pi);

struct CornerConstant {
    double value = 0.0;
    std::optional<Rational> exact;
};
CornerConstant corner_constant(const GeometrySummary& geometry);

ShapeSpec regular_ngon(int n, double circumradius);

// Hausdorff distance between a convex polygon and the disk of the given
// radius centred at the origin.
double hausdorff_distance_convex(const ShapeSpec& polygon, double disk_radius);

// One "x,y" pair per line; blank lines and lines starting with '#' are skipped.
ShapeSpec read_polygon_file(const std::string& path);

double rational_to_double(const Rational& r);

}  // namespace polyspec
