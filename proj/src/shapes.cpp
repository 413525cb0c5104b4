#include "polyspec/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"

namespace polyspec {

using constants::pi;
using constants::sqrt3;

namespace {

void require_length(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

double cross(const Point& o, const Point& p, const Point& q) {
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
}

double dist(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

std::vector<double> polygon_angles(const std::vector<Point>& v) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = v[(i + n - 1) % n];
        const Point& cur = v[i];
        const Point& next = v[(i + 1) % n];
        const double ux = cur.x - prev.x, uy = cur.y - prev.y;
        const double wx = next.x - cur.x, wy = next.y - cur.y;
        const double turn = std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
        out[i] = pi - turn;
    }
    return out;
}

}  // namespace

ShapeSpec ShapeSpec::rectangle(double a, double b) {
    require_length(a, "rectangle side a");
    require_length(b, "rectangle side b");
    return ShapeSpec(Rectangle{a, b});
}

ShapeSpec ShapeSpec::equilateral(double l) {
    require_length(l, "side length");
    return ShapeSpec(EquilateralTriangle{l});
}

ShapeSpec ShapeSpec::isosceles_right(double a) {
    require_length(a, "leg length");
    return ShapeSpec(IsoscelesRightTriangle{a});
}

ShapeSpec ShapeSpec::hemi_equilateral(double l) {
    require_length(l, "hypotenuse length");
    return ShapeSpec(HemiEquilateralTriangle{l});
}

ShapeSpec ShapeSpec::box(std::vector<double> dims) {
    if (dims.empty()) throw std::invalid_argument("box needs at least one dimension");
    for (double d : dims) require_length(d, "box dimension");
    return ShapeSpec(Box{std::move(dims)});
}

ShapeSpec ShapeSpec::convex_polygon(std::vector<Point> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = vertices[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("polygon vertex is not finite");
        const Point& q = vertices[(i + 1) % n];
        const Point& r = vertices[(i + 2) % n];
        const double scale = dist(p, q) * dist(q, r);
        if (!(cross(p, q, r) > 1e-10 * scale))
            throw std::invalid_argument("polygon is not strictly convex and counterclockwise");
    }
    const std::vector<double> ang = polygon_angles(vertices);
    const double sum = std::accumulate(ang.begin(), ang.end(), 0.0);
    if (std::fabs(sum - pi * static_cast<double>(n - 2)) > 1e-9 * static_cast<double>(n))
        throw std::invalid_argument("polygon winds more than once");
    return ShapeSpec(ConvexPolygon{std::move(vertices), std::nullopt});
}

bool ShapeSpec::is_integrable() const {
    return !std::holds_alternative<Box>(kind_) && !std::holds_alternative<ConvexPolygon>(kind_);
}

std::string ShapeSpec::name() const {
    struct V {
        std::string operator()(const Rectangle& r) const {
            return r.a == r.b ? "square" : "rectangle";
        }
        std::string operator()(const EquilateralTriangle&) const { return "equilateral"; }
        std::string operator()(const IsoscelesRightTriangle&) const { return "isosceles-right"; }
        std::string operator()(const HemiEquilateralTriangle&) const { return "hemi-equilateral"; }
        std::string operator()(const Box&) const { return "box"; }
        std::string operator()(const ConvexPolygon&) const { return "polygon"; }
    };
    return std::visit(V{}, kind_);
}

double rational_to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

GeometrySummary summarize(const ShapeSpec& shape) {
    struct V {
        GeometrySummary operator()(const Rectangle& r) const {
            GeometrySummary g;
            g.area = r.a * r.b;
            g.perimeter = 2.0 * (r.a + r.b);
            g.angles.assign(4, pi / 2);
            g.angle_fractions = std::vector<Rational>(4, Rational(1, 2));
            g.shortest_geodesic = 2.0 * std::min(r.a, r.b);
            return g;
        }
        GeometrySummary operator()(const EquilateralTriangle& e) const {
            GeometrySummary g;
            g.area = sqrt3 * e.l * e.l / 4.0;
            g.perimeter = 3.0 * e.l;
            g.angles.assign(3, pi / 3);
            g.angle_fractions = std::vector<Rational>(3, Rational(1, 3));
            g.shortest_geodesic = 1.5 * e.l;
            return g;
        }
        GeometrySummary operator()(const IsoscelesRightTriangle& t) const {
            GeometrySummary g;
            g.area = t.a * t.a / 2.0;
            g.perimeter = t.a * (2.0 + std::sqrt(2.0));
            g.angles = {pi / 2, pi / 4, pi / 4};
            g.angle_fractions = std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
            g.shortest_geodesic = t.a * std::sqrt(2.0);
            return g;
        }
        GeometrySummary operator()(const HemiEquilateralTriangle& t) const {
            GeometrySummary g;
            g.area = sqrt3 * t.l * t.l / 8.0;
            g.perimeter = t.l * (3.0 + sqrt3) / 2.0;
            g.angles = {pi / 2, pi / 3, pi / 6};
            g.angle_fractions = std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
            g.shortest_geodesic = t.l * sqrt3 / 2.0;
            return g;
        }
        GeometrySummary operator()(const Box& b) const {
            GeometrySummary g;
            g.area = 1.0;
            for (double d : b.dims) g.area *= d;
            g.perimeter = 0.0;
            for (std::size_t j = 0; j < b.dims.size(); ++j) {
                double face = 1.0;
                for (std::size_t k = 0; k < b.dims.size(); ++k)
                    if (k != j) face *= b.dims[k];
                g.perimeter += 2.0 * face;
            }
            if (b.dims.size() == 2) {
                g.angles.assign(4, pi / 2);
                g.angle_fractions = std::vector<Rational>(4, Rational(1, 2));
            }
            g.shortest_geodesic = 2.0 * *std::min_element(b.dims.begin(), b.dims.end());
            return g;
        }
        GeometrySummary operator()(const ConvexPolygon& p) const {
            GeometrySummary g;
            const auto& v = p.vertices;
            const std::size_t n = v.size();
            double twice_area = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const Point& a = v[i];
                const Point& b = v[(i + 1) % n];
                twice_area += a.x * b.y - a.y * b.x;
                g.perimeter += dist(a, b);
            }
            g.area = 0.5 * twice_area;
            g.angles = polygon_angles(v);
            g.angle_fractions = p.angle_fractions;
            return g;
        }
    };
    return std::visit(V{}, shape.kind());
}

double corner_constant(const std::vector<double>& angles) {
    double s = 0.0;
    for (double g : angles) {
        if (!(g > 0.0 && g < pi)) throw DomainError("corner angle must lie in (0, pi)");
        s += (pi * pi - g * g) / (24.0 * pi * g);
    }
    return s;
}

Rational corner_constant_exact(const std::vector<Rational>& fractions_of_pi) {
    Rational s(0);
    for (const Rational& f : fractions_of_pi) {
        if (!(f > Rational(0) && f < Rational(1))) throw DomainError("corner angle must lie in (0, pi)");
        const std::int64_t p = f.numerator();
        const std::int64_t q = f.denominator();
        s += Rational(q * q - p * p, 24 * p * q);
    }
    return s;
}

CornerConstant corner_constant(const GeometrySummary& geometry) {
    CornerConstant c;
    if (geometry.angle_fractions) {
        c.exact = corner_constant_exact(*geometry.angle_fractions);
        c.value = rational_to_double(*c.exact);
    } else {
        c.value = corner_constant(geometry.angles);
    }
    return c;
}

ShapeSpec regular_ngon(int n, double circumradius) {
    if (n < 3) throw DomainError("regular polygon needs n >= 3");
    require_length(circumradius, "circumradius");
    std::vector<Point> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * pi * k / n;
        v[static_cast<std::size_t>(k)] = {circumradius * std::cos(th), circumradius * std::sin(th)};
    }
    ShapeSpec s = ShapeSpec::convex_polygon(std::move(v));
    std::get<ConvexPolygon>(s.kind_).angle_fractions =
        std::vector<Rational>(static_cast<std::size_t>(n), Rational(n - 2, n));
    return s;
}

double hausdorff_distance_convex(const ShapeSpec& polygon, double disk_radius) {
    const auto* poly = polygon.get_if<ConvexPolygon>();
    if (!poly) throw DomainError("Hausdorff distance needs a convex polygon");
    if (!(disk_radius >= 0.0)) throw DomainError("disk radius must be non-negative");
    const auto& v = poly->vertices;
    const std::size_t n = v.size();

    // Farthest polygon point from the disk is a vertex.
    double max_r = 0.0;
    for (const Point& p : v) max_r = std::max(max_r, std::hypot(p.x, p.y));

    // Farthest disk point from the polygon: R - min_u h(u), with h the
    // support function. On the normal cone of vertex i, h(u) = u.v_i, whose
    // minimum is at a cone edge (an edge normal) or at u = -v_i/|v_i|.
    std::vector<double> normal_angle(n);
    double min_h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const double len = dist(a, b);
        if (!(len > 0.0)) throw DomainError("degenerate polygon edge");
        const double nx = (b.y - a.y) / len;
        const double ny = -(b.x - a.x) / len;
        normal_angle[i] = std::atan2(ny, nx);
        min_h = std::min(min_h, nx * a.x + ny * a.y);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::hypot(v[i].x, v[i].y);
        if (r == 0.0) continue;
        // Cone of vertex i runs counterclockwise from normal of edge i-1 to normal of edge i.
        const double start = normal_angle[(i + n - 1) % n];
        const double width = std::remainder(normal_angle[i] - start, 2.0 * pi);
        const double w = width < 0.0 ? width + 2.0 * pi : width;
        double off = std::atan2(-v[i].y, -v[i].x) - start;
        off = std::fmod(std::fmod(off, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
        if (off <= w) min_h = std::min(min_h, -r);
    }
    return std::max({0.0, max_r - disk_radius, disk_radius - min_h});
}

ShapeSpec read_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polygon file: " + path);
    std::vector<Point> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        Point p;
        if (!(ls >> p.x >> p.y))
            throw std::invalid_argument("bad polygon line " + std::to_string(lineno) + " in " + path);
        pts.push_back(p);
    }
    return ShapeSpec::convex_polygon(std::move(pts));
}

}  // namespace polyspec
