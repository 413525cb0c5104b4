#include "polyspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyspec/heat.hpp"
#include "polyspec/lab.hpp"
#include "polyspec/parallel.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/spectrum.hpp"
#include "polyspec/zeta.hpp"

namespace polyspec {

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

using constants::pi;
using constants::sqrt3;

// Catalan's constant, beta(2).
constexpr double kCatalan = 0.915965594177219015054603514932384110774;

struct Outcome {
    double measured = 0.0;
    std::string detail;
};

double rel_err(double x, double ref) { return std::fabs(x - ref) / std::max(std::fabs(ref), 1e-300); }
double mixed_err(double x, double y) { return std::fabs(x - y) / std::max(1.0, std::fabs(x)); }

// Neumaier-compensated sum.
double compensated_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        const double t = s + x;
        c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

double int_pow_inv(double q, double s) {
    if (s == 2.0) return 1.0 / (q * q);
    if (s == 3.0) return 1.0 / (q * q * q);
    return std::pow(q, -s);
}

// sum' Q(m,n)^{-s} over |m|,|n| <= M plus the integral of Q^{-s} outside
// the square [-M-1/2, M+1/2]^2 (midpoint rule for the remaining cells).
double brute_epstein(double a, double b, double c, double s, int M, int threads) {
    std::vector<double> rows(static_cast<std::size_t>(2 * M + 1));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        const double m = static_cast<double>(static_cast<long>(i) - M);
        std::vector<double> terms;
        terms.reserve(rows.size());
        for (long n = M; n >= -M; --n) {
            if (m == 0.0 && n == 0) continue;
            const double nd = static_cast<double>(n);
            terms.push_back(int_pow_inv(a * m * m + b * m * nd + c * nd * nd, s));
        }
        std::sort(terms.begin(), terms.end());
        rows[i] = compensated_sum(terms);
    });
    std::sort(rows.begin(), rows.end());
    const double box = compensated_sum(rows);
    const double R = M + 0.5;
    auto f = [&](double th) {
        const double co = std::cos(th), si = std::sin(th);
        const double q = a * co * co + b * co * si + c * si * si;
        const double rho = R / std::max(std::fabs(co), std::fabs(si));
        return std::pow(q, -s) * std::pow(rho, 2.0 - 2.0 * s) / (2.0 * s - 2.0);
    };
    double tail = 0.0;
    for (int k = 0; k < 8; ++k)
        tail += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, k * pi / 4, (k + 1) * pi / 4, 10, 1e-14);
    return box + tail;
}

Outcome check_zeta_prime_forms() {
    Outcome o;
    const double grid[] = {0.5, 1.0, 2.0};
    std::vector<ShapeSpec> shapes;
    for (double a : grid)
        for (double b : grid) shapes.push_back(ShapeSpec::rectangle(a, b));
    for (double p : grid) {
        shapes.push_back(ShapeSpec::equilateral(p));
        shapes.push_back(ShapeSpec::isosceles_right(p));
        shapes.push_back(ShapeSpec::hemi_equilateral(p));
    }
    for (const auto& sh : shapes) {
        const ZetaPrimeZero z = zeta_prime_zero(sh);
        o.measured = std::max(o.measured, rel_err(z.series_form.value, z.eta_form.value));
    }
    o.detail = std::to_string(shapes.size()) + " shapes";
    return o;
}

Outcome check_unit_square() {
    const double oracle = 0.5 * std::log(8.0 * std::pow(pi, 1.5) / (std::tgamma(0.25) * std::tgamma(0.25)));
    const double v = zeta_prime_zero(ShapeSpec::square(1.0)).mean();
    std::ostringstream d;
    d.precision(15);
    d << "zeta'(0)=" << v << " oracle=" << oracle << " det=" << std::exp(-v);
    return {std::fabs(v - oracle), d.str()};
}

Outcome check_chowla_selberg(int threads) {
    Outcome o;
    struct Form {
        double a, b, c;
    };
    for (const Form& q : {Form{1, 0, 1}, Form{1, -3, 3}}) {
        for (double s : {2.0, 3.0}) {
            const double brute = brute_epstein(q.a, q.b, q.c, s, 2000, threads);
            const double cs = epstein_zeta(QuadraticForm(q.a, q.b, q.c), s).value;
            o.measured = std::max(o.measured, rel_err(cs, brute));
        }
    }
    // Closed form sum' (m^2+n^2)^{-2} = 4 zeta(2) beta(2).
    const double classical = 4.0 * (pi * pi / 6.0) * kCatalan;
    o.measured = std::max(o.measured, rel_err(epstein_zeta(QuadraticForm(1, 0, 1), 2.0).value, classical));
    o.detail = "brute force |m|,|n|<=2000 with tail integral";
    return o;
}

std::vector<ShapeSpec> test_shapes() {
    return {ShapeSpec::square(1.0), ShapeSpec::rectangle(1.0, 2.0), ShapeSpec::equilateral(1.0),
            ShapeSpec::isosceles_right(1.0), ShapeSpec::hemi_equilateral(1.0)};
}

Outcome check_heat_methods() {
    Outcome o;
    int n = 0;
    for (const auto& sh : test_shapes())
        for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann})
            for (double t : {0.05, 0.1, 0.5, 1.0}) {
                const double a = heat_trace(sh, bc, t, HeatMethod::ThetaForm).value;
                const double b = heat_trace(sh, bc, t, HeatMethod::DirectEigenSum).value;
                const double c = heat_trace(sh, bc, t, HeatMethod::TransformedSeries).value;
                o.measured = std::max({o.measured, mixed_err(a, b), mixed_err(a, c), mixed_err(b, c)});
                ++n;
            }
    o.detail = std::to_string(n) + " (shape, bc, t) triples, error relative to max(1,|h|)";
    return o;
}

Outcome check_constant_terms() {
    Outcome o;
    const std::vector<std::pair<ShapeSpec, Rational>> cases = {
        {ShapeSpec::square(1.0), Rational(1, 4)},
        {ShapeSpec::rectangle(1.0, 2.0), Rational(1, 4)},
        {ShapeSpec::equilateral(1.0), Rational(1, 3)},
        {ShapeSpec::isosceles_right(1.0), Rational(3, 8)},
        {ShapeSpec::hemi_equilateral(1.0), Rational(5, 12)}};
    std::string d;
    for (const auto& [sh, want] : cases)
        for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
            const HeatExpansion ex = expansion(sh, bc, 2);
            double t0 = std::nan("");
            for (const auto& term : ex.terms)
                if (term.exp_rate == 0.0 && term.t_power == 0.0) t0 = term.coeff;
            const bool ok = ex.constant_term == want && t0 == rational_to_double(want);
            if (!ok) {
                o.measured += 1;
                d += sh.name() + " ";
            }
        }
    o.detail = d.empty() ? "1/4, 1/4, 1/3, 3/8, 5/12 exact" : "mismatch: " + d;
    return o;
}

Outcome check_sharp_rates() {
    Outcome o;
    const std::vector<double> grid = {0.1, 0.05, 0.02, 0.01};
    std::ostringstream d;
    d.precision(5);
    for (const auto& sh : {ShapeSpec::rectangle(1.0, 2.0), ShapeSpec::equilateral(1.0), ShapeSpec::isosceles_right(1.0),
                           ShapeSpec::hemi_equilateral(1.0)})
        for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
            const RateFit f = fit_sharp_rate(sh, bc, grid);
            const double e = rel_err(f.c_hat, f.expected);
            o.measured = std::max(o.measured, e);
            d << sh.name() << "/" << to_string(bc)[0] << "=" << f.c_hat << " ";
        }
    o.detail = d.str();
    return o;
}

Outcome check_orbits() {
    Outcome o;
    const OrbitBijectionReport rep = verify_orbit_bijection(30);
    const ParametrizationComparison cmp = compare_equilateral_parametrizations(1.0, 500.0 * 16.0 * pi * pi / 9.0);
    o.measured = static_cast<double>(rep.violations.size() + cmp.mismatches.size());
    o.detail = std::to_string(rep.pairs_checked) + " pairs, " + std::to_string(cmp.entries_standard) +
               " eigenvalues compared";
    return o;
}

Outcome check_eigenfunctions() {
    std::set<IndexPair> reps;
    std::vector<OrbitRep> orbits;
    for (long m = -15; m <= 15; ++m)
        for (long n = -15; n <= 15; ++n) {
            if (m == 0 && n == 0) continue;
            const OrbitCheck c = orbit_of(m, n);
            if (c.accepted() && reps.insert(c.orbit->rep).second) orbits.push_back(*c.orbit);
        }
    std::sort(orbits.begin(), orbits.end(), [](const OrbitRep& x, const OrbitRep& y) {
        return x.form_value != y.form_value ? x.form_value < y.form_value : x.rep < y.rep;
    });
    orbits.resize(20);
    double boundary = 0.0, pde = 0.0;
    for (const auto& orb : orbits) {
        const BoundaryResidual r = eigenfunction_boundary_residual(orb.rep.first, orb.rep.second, 100);
        boundary = std::max(boundary, r.boundary_max);
        pde = std::max(pde, r.pde_max);
    }
    std::ostringstream d;
    d << "boundary max " << boundary << ", pde max " << pde << " (300 boundary samples each)";
    // Both bounds folded into one ratio: pass iff <= 1.
    return {std::max(boundary / 1e-10, pde / 1e-8), d.str()};
}

Outcome check_divisor_identity() {
    Outcome o;
    for (double x : {2.0 * pi, pi * sqrt3, -std::log(0.3)}) {
        const double q = std::exp(-x);
        // Oracle: the product and the divisor sum summed naively.
        double lhs = 0.0, rhs = 0.0;
        for (int n = 1; n <= 400; ++n) {
            lhs -= std::log1p(-std::pow(q, n));
            long sigma = 0;
            for (int d = 1; d <= n; ++d)
                if (n % d == 0) sigma += d;
            rhs += std::pow(q, n) * static_cast<double>(sigma) / n;
        }
        const double lib_prod = log_product_sum(x, false).value;
        const double lib_sum = divisor_weighted_sum(x, false).value;
        o.measured = std::max({o.measured, rel_err(lib_prod, lib_sum), rel_err(lib_prod, lhs), rel_err(lib_sum, rhs),
                               rel_err(lhs, rhs)});
    }
    o.detail = "q = e^{-2 pi}, e^{-pi sqrt3}, 0.3";
    return o;
}

Outcome check_miracle_integral() {
    Outcome o;
    for (double a : {1.0, 2.0})
        for (double b : {1.0, 2.0})
            for (long n : {1L, 2L, 3L}) {
                const double v = miracle_integral(a, b, n, 0.0).value;
                const double nd = static_cast<double>(n);
                const double closed = std::sqrt(b / (a * nd)) * std::exp(-2.0 * pi * a * nd / b);
                o.measured = std::max(o.measured, rel_err(v, closed));
            }
    o.detail = "12 (a,b,n) triples";
    return o;
}

Outcome check_zeta_relations() {
    // Values go down to about 1e-6, so the absolute tolerance must sit well
    // below 1e-16 for a 1e-10 relative comparison.
    const double tol = 1e-17;
    Outcome o;
    for (double s : {2.0, 3.0})
        for (double a : {1.0, 1.7}) {
            const double zr = std::riemann_zeta(2.0 * s);
            const double sq = spectral_zeta(ShapeSpec::square(a), s, tol).value;
            const double iso = spectral_zeta(ShapeSpec::isosceles_right(a), s, tol).value;
            o.measured = std::max(o.measured, rel_err(iso, 0.5 * sq - 0.5 * std::pow(a * a / (2 * pi * pi), s) * zr));
            const double eq = spectral_zeta(ShapeSpec::equilateral(a), s, tol).value;
            const double hemi = spectral_zeta(ShapeSpec::hemi_equilateral(a), s, tol).value;
            o.measured =
                std::max(o.measured, rel_err(hemi, 0.5 * eq - 0.5 * std::pow(3 * a * a / (16 * pi * pi), s) * zr));
        }
    o.detail = "s in {2,3}, side in {1, 1.7}";
    return o;
}

Outcome check_lab_dichotomy() {
    std::vector<int> ns;
    for (int n = 3; n <= 200; ++n) ns.push_back(n);
    const NgonReport rep = polygon_to_disk_experiment(ns, 1.0);
    int failures = 0;
    std::string d;
    if (!rep.a0_exact_all) ++failures, d += "a0-exact ";
    if (!rep.monotone_minus1 || !rep.monotone_minus_half) ++failures, d += "monotone ";
    const NgonRow& last = rep.rows.back();
    if (!(last.err_minus1 < 1e-3 && last.err_minus_half < 1e-3)) ++failures, d += "n=200 ";
    int bad_gap = 0;
    for (unsigned k = 0; k < 50; ++k) {
        const int n = 3 + static_cast<int>(k % 10);
        const GapReport g = disk_to_polygon_gap(random_convex_polygon(n, 1000 + k));
        if (!g.bound_holds) ++bad_gap;
    }
    if (bad_gap) ++failures, d += "gap ";
    std::ostringstream out;
    out << "n=200 errors " << last.err_minus1 << ", " << last.err_minus_half << "; 50 random polygons";
    if (!d.empty()) out << "; failed: " << d;
    return {static_cast<double>(failures), out.str()};
}

Outcome check_torus() {
    Outcome o;
    const std::vector<LatticeBasis> lattices = {
        LatticeBasis{{{1.0, 0.0}, {0.0, 1.0}}},
        LatticeBasis{{{1.0, 0.0}, {0.5, sqrt3 / 2.0}}},
        LatticeBasis{{{1.3, 0.2}, {0.4, 0.9}}}};
    for (const auto& B : lattices)
        for (double t : {0.05, 0.5}) {
            const TorusHeatTrace h = torus_heat_trace(B, t);
            o.measured = std::max(o.measured, mixed_err(h.eigen_side, h.lattice_side));
        }
    o.detail = "square, hexagonal, oblique lattices";
    return o;
}

Outcome check_weyl() {
    double worst = 0.0;
    std::ostringstream d;
    d.precision(4);
    for (const auto& sh : {ShapeSpec::rectangle(1.0, 2.0), ShapeSpec::equilateral(1.0),
                           ShapeSpec::isosceles_right(1.0), ShapeSpec::hemi_equilateral(1.0)}) {
        const double area = summarize(sh).area;
        const EigenvalueList list = enumerate(sh, BoundaryCondition::Dirichlet, 4.0 * pi * 20000.0 / area);
        std::int64_t N = 0;
        double lo = 2.0, hi = 0.0;
        for (const auto& e : list.entries) {
            N += e.multiplicity;
            if (N < 5000) continue;
            const double r = static_cast<double>(N) * 4.0 * pi / (e.value * area);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        worst = std::max({worst, std::fabs(lo - 1.0), std::fabs(hi - 1.0)});
        d << sh.name() << " [" << lo << "," << hi << "] ";
    }
    return {worst, d.str()};
}

struct Criterion {
    const char* name;
    const char* mode;
    double tolerance;
    double time_limit;
    std::function<Outcome(int)> run;
};

const std::map<int, Criterion>& criteria() {
    static const std::map<int, Criterion> c = {
        {1, {"zeta'(0) dual-expression agreement", "relative", 1e-12, 1.0, [](int) { return check_zeta_prime_forms(); }}},
        {2, {"unit-square determinant oracle", "absolute", 1e-10, 1.0, [](int) { return check_unit_square(); }}},
        {3, {"Chowla-Selberg vs brute force", "relative", 1e-10, 10.0, check_chowla_selberg}},
        {4, {"heat-trace tri-method agreement", "absolute", 1e-12, 10.0, [](int) { return check_heat_methods(); }}},
        {5, {"exact constant heat coefficients", "count", 0.0, 1.0, [](int) { return check_constant_terms(); }}},
        {6, {"sharp remainder rates", "relative", 0.05, 30.0, [](int) { return check_sharp_rates(); }}},
        {7, {"orbit bijection and parametrizations", "count", 0.0, 10.0, [](int) { return check_orbits(); }}},
        {8, {"eigenfunction boundary and PDE residual", "ratio", 1.0, 5.0, [](int) { return check_eigenfunctions(); }}},
        {9, {"divisor / log-product identity", "relative", 1e-12, 1.0, [](int) { return check_divisor_identity(); }}},
        {10, {"miracle integral", "relative", 1e-10, 1.0, [](int) { return check_miracle_integral(); }}},
        {11, {"inter-shape zeta relations", "relative", 1e-10, 5.0, [](int) { return check_zeta_relations(); }}},
        {12, {"polygon/disk coefficient dichotomy", "count", 0.0, 5.0, [](int) { return check_lab_dichotomy(); }}},
        {13, {"torus Poisson identity", "absolute", 1e-12, 1.0, [](int) { return check_torus(); }}},
        {14, {"Weyl law sanity", "absolute", 0.1, 10.0, [](int) { return check_weyl(); }}},
    };
    return c;
}

}  // namespace

CheckResult run_acceptance_check(int id, int threads) {
    const auto it = criteria().find(id);
    if (it == criteria().end()) throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    const Criterion& c = it->second;
    CheckResult r;
    r.id = id;
    r.name = c.name;
    r.mode = c.mode;
    r.tolerance = c.tolerance;
    r.time_limit = c.time_limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = c.run(threads);
        r.measured = o.measured;
        r.detail = o.detail;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.passed = std::isfinite(o.measured) && o.measured <= c.tolerance && r.seconds <= c.time_limit;
        if (r.seconds > c.time_limit) r.detail += "; over time limit";
    } catch (const std::exception& e) {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.measured = std::nan("");
        r.detail = std::string("exception: ") + e.what();
        r.passed = false;
    }
    return r;
}

VerificationReport run_verification(const std::string& suite, int threads) {
    std::vector<int> ids;
    if (suite == "all") {
        for (int i = 1; i <= kAcceptanceCount; ++i) ids.push_back(i);
    } else {
        std::stringstream ss(suite);
        for (std::string tok; std::getline(ss, tok, ',');) {
            std::size_t pos = 0;
            int id = 0;
            try {
                id = std::stoi(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || tok.empty() || criteria().count(id) == 0)
                throw std::invalid_argument("unknown suite entry '" + tok + "'");
            ids.push_back(id);
        }
    }
    VerificationReport rep;
    for (int id : ids) rep.checks.push_back(run_acceptance_check(id, threads));
    return rep;
}

std::string summary_line(const CheckResult& c) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %2d  %-42s measured=%.3e tol=%.1e (%s) %.2fs/%gs  %s", c.passed ? "PASS" : "FAIL",
                  c.id, c.name.c_str(), c.measured, c.tolerance, c.mode.c_str(), c.seconds, c.time_limit,
                  c.detail.c_str());
    return buf;
}

}  // namespace polyspec
