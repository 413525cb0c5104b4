#pragma once
// Heat invariants of polygons versus smooth convex domains: regular n-gons
// converging to a disk, and smooth rounded polygons converging to a polygon.

#include <optional>
#include <vector>

#include "polyspec/shapes.hpp"

namespace polyspec {

// Dirichlet coefficients of h(t) ~ a_{-1}/t + a_{-1/2}/sqrt(t) + a_0 + a_{1/2} sqrt(t).
// The 1/t and 1/sqrt(t) factors are kept inside the coefficients as
// a_{-1} = area/(4 pi) and a_{-1/2} = -perimeter/(8 sqrt(pi)).
struct HeatCoefficients {
    double a_minus1 = 0.0;
    double a_minus_half = 0.0;
    double a_0 = 0.0;
    std::optional<double> a_half;
    std::optional<Rational> a_0_exact;
};

HeatCoefficients coefficients_smooth_disk(double radius);
// Any polygonal shape: the four integrable kinds or a convex polygon.
HeatCoefficients coefficients_polygon(const ShapeSpec& poly);

struct NgonRow {
    int n = 0;
    double hausdorff = 0.0;
    HeatCoefficients coeffs;
    double err_minus1 = 0.0;
    double err_minus_half = 0.0;
    double err_0 = 0.0;
    double gap = 0.0;           // a_0 - 1/6
    bool a0_exact_ok = false;   // a_0 == 1/6 + 1/(6(n-2)) as rationals
};

struct NgonReport {
    double radius = 0.0;
    HeatCoefficients disk;
    std::vector<NgonRow> rows;
    bool a0_exact_all = false;
    bool monotone_minus1 = false;
    bool monotone_minus_half = false;
    bool monotone_hausdorff = false;
};

// Regular n-gons inscribed in the disk of the given radius.
NgonReport polygon_to_disk_experiment(const std::vector<int>& n_list, double radius);

struct RoundedRow {
    double rho = 0.0;
    double area = 0.0;
    double perimeter = 0.0;
    double err_minus1 = 0.0;
    double err_minus_half = 0.0;
    double a_0 = 1.0 / 6.0;
};

struct GapReport {
    int n = 0;
    double a_0 = 0.0;
    double gap = 0.0;          // a_0 - 1/6
    double lower_bound = 0.0;  // 1/(6(n-2))
    bool bound_holds = false;
    bool equiangular = false;
    std::vector<RoundedRow> approximants;
};

// Corners rounded by circular arcs of radius rho: area A - rho^2 K + pi rho^2
// and perimeter P - 2 rho K + 2 pi rho with K = sum cot(gamma_i/2).
GapReport disk_to_polygon_gap(const ShapeSpec& target, const std::vector<double>& radii = {});

// Convex polygon with n vertices at sorted random angles on a circle.
ShapeSpec random_convex_polygon(int n, unsigned seed);

}  // namespace polyspec
