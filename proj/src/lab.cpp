#include "polyspec/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"

namespace polyspec {

using constants::pi;
using constants::sqrt_pi;

HeatCoefficients coefficients_smooth_disk(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk radius must be positive");
    HeatCoefficients c;
    c.a_minus1 = pi * radius * radius / (4.0 * pi);
    c.a_minus_half = -2.0 * pi * radius / (8.0 * sqrt_pi);
    c.a_0 = 1.0 / 6.0;
    c.a_0_exact = Rational(1, 6);
    // (1/(256 sqrt(pi))) int k^2 ds with k = 1/r over length 2 pi r
    c.a_half = (2.0 * pi / radius) / (256.0 * sqrt_pi);
    return c;
}

HeatCoefficients coefficients_polygon(const ShapeSpec& poly) {
    if (const auto* b = poly.get_if<Box>(); b && b->dims.size() != 2)
        throw Unsupported("heat coefficients are computed for planar polygons");
    const GeometrySummary g = summarize(poly);
    const CornerConstant cc = corner_constant(g);
    HeatCoefficients c;
    c.a_minus1 = g.area / (4.0 * pi);
    c.a_minus_half = -g.perimeter / (8.0 * sqrt_pi);
    c.a_0 = cc.value;
    c.a_0_exact = cc.exact;
    return c;
}

NgonReport polygon_to_disk_experiment(const std::vector<int>& n_list, double radius) {
    NgonReport rep;
    rep.radius = radius;
    rep.disk = coefficients_smooth_disk(radius);
    rep.a0_exact_all = true;
    rep.monotone_minus1 = rep.monotone_minus_half = rep.monotone_hausdorff = true;
    for (int n : n_list) {
        const ShapeSpec p = regular_ngon(n, radius);
        NgonRow row;
        row.n = n;
        row.hausdorff = hausdorff_distance_convex(p, radius);
        row.coeffs = coefficients_polygon(p);
        row.err_minus1 = std::fabs(row.coeffs.a_minus1 - rep.disk.a_minus1);
        row.err_minus_half = std::fabs(row.coeffs.a_minus_half - rep.disk.a_minus_half);
        row.err_0 = std::fabs(row.coeffs.a_0 - rep.disk.a_0);
        row.gap = row.coeffs.a_0 - 1.0 / 6.0;
        row.a0_exact_ok = row.coeffs.a_0_exact && *row.coeffs.a_0_exact == Rational(1, 6) + Rational(1, 6 * (n - 2));
        rep.a0_exact_all = rep.a0_exact_all && row.a0_exact_ok;
        if (!rep.rows.empty() && n > rep.rows.back().n) {
            const NgonRow& prev = rep.rows.back();
            rep.monotone_minus1 = rep.monotone_minus1 && row.err_minus1 < prev.err_minus1;
            rep.monotone_minus_half = rep.monotone_minus_half && row.err_minus_half < prev.err_minus_half;
            rep.monotone_hausdorff = rep.monotone_hausdorff && row.hausdorff < prev.hausdorff;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

GapReport disk_to_polygon_gap(const ShapeSpec& target, const std::vector<double>& radii) {
    if (target.get_if<Box>()) throw Unsupported("gap report needs a planar polygon");
    const GeometrySummary g = summarize(target);
    const HeatCoefficients c = coefficients_polygon(target);
    GapReport rep;
    rep.n = static_cast<int>(g.angles.size());
    rep.a_0 = c.a_0;
    rep.gap = c.a_0 - 1.0 / 6.0;
    rep.lower_bound = 1.0 / (6.0 * (rep.n - 2));
    rep.bound_holds = rep.gap >= rep.lower_bound * (1.0 - 1e-12);
    const double mean = pi * (rep.n - 2) / rep.n;
    rep.equiangular = true;
    for (double a : g.angles) rep.equiangular = rep.equiangular && std::fabs(a - mean) <= 1e-9;

    double K = 0.0;
    for (double a : g.angles) K += 1.0 / std::tan(0.5 * a);
    // Largest radius for which every arc fits on its two edges.
    double rho_max = std::numeric_limits<double>::infinity();
    if (const auto* p = target.get_if<ConvexPolygon>()) {
        const auto& v = p->vertices;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % n];
            const double len = std::hypot(b.x - a.x, b.y - a.y);
            const double need = 1.0 / std::tan(0.5 * g.angles[i]) + 1.0 / std::tan(0.5 * g.angles[(i + 1) % n]);
            rho_max = std::min(rho_max, len / need);
        }
    } else {
        // Integrable shapes: bounded by the inradius, 2 area / perimeter.
        rho_max = 2.0 * g.area / g.perimeter;
    }
    std::vector<double> rhos = radii;
    if (rhos.empty())
        for (int k = 1; k <= 6; ++k) rhos.push_back(rho_max * std::pow(0.1, k));
    const double disk_like_a0 = 1.0 / 6.0;
    for (double rho : rhos) {
        if (!(rho > 0.0) || rho > rho_max) throw DomainError("rounding radius out of range");
        RoundedRow row;
        row.rho = rho;
        row.area = g.area - rho * rho * K + pi * rho * rho;
        row.perimeter = g.perimeter - 2.0 * rho * K + 2.0 * pi * rho;
        row.err_minus1 = std::fabs(row.area - g.area) / (4.0 * pi);
        row.err_minus_half = std::fabs(row.perimeter - g.perimeter) / (8.0 * sqrt_pi);
        row.a_0 = disk_like_a0;
        rep.approximants.push_back(row);
    }
    return rep;
}

ShapeSpec random_convex_polygon(int n, unsigned seed) {
    if (n < 3) throw DomainError("polygon needs n >= 3");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    for (;;) {
        std::vector<double> th(static_cast<std::size_t>(n));
        for (double& x : th) x = u(rng);
        std::sort(th.begin(), th.end());
        // Reject nearly coincident vertices and any arc of pi or more, which
        // would leave the centre outside or make a corner degenerate.
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            const double next = i + 1 < n ? th[i + 1] : th[0] + 2.0 * pi;
            const double gap = next - th[static_cast<std::size_t>(i)];
            ok = gap > 1e-3 && gap < pi - 1e-3;
        }
        if (!ok) continue;
        std::vector<Point> v;
        for (double x : th) v.push_back({std::cos(x), std::sin(x)});
        return ShapeSpec::convex_polygon(std::move(v));
    }
}

}  // namespace polyspec
