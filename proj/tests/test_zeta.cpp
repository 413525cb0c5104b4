#include <doctest.h>

#include <cmath>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/zeta.hpp"

using namespace polyspec;
using constants::pi;

namespace {

// Sum of Q^{-s} over lattice points in the disk of radius M, plus the
// continuum tail outside it.
double brute_epstein(double a, double b, double c, double s, int M) {
    double sum = 0.0;
    for (int m = -M; m <= M; ++m)
        for (int n = -M; n <= M; ++n)
            if ((m || n) && m * double(m) + n * double(n) <= double(M) * M)
                sum += std::pow(a * m * m + b * m * n + c * double(n) * n, -s);
    // Continuum tail: integral of (r^2 q(theta))^{-s} r dr dtheta over r > M.
    double angular = 0.0;
    const int K = 4096;
    for (int k = 0; k < K; ++k) {
        const double th = 2 * pi * (k + 0.5) / K;
        const double ct = std::cos(th), st = std::sin(th);
        angular += std::pow(a * ct * ct + b * ct * st + c * st * st, -s);
    }
    return sum + angular * (2 * pi / K) * std::pow(double(M), 2.0 - 2.0 * s) / (2.0 * s - 2.0);
}

double catalan() {
    double g = 0.0;
    for (int k = 0; k < 2000000; ++k) g += (k % 2 ? -1.0 : 1.0) / ((2.0 * k + 1) * (2.0 * k + 1));
    return g;
}

}  // namespace

TEST_CASE("Epstein zeta of the sum of two squares") {
    const double oracle = 4.0 * std::riemann_zeta(2.0) * catalan();
    CHECK(epstein_zeta(QuadraticForm(1, 0, 1), 2.0).value == doctest::Approx(oracle).epsilon(1e-11));
    CHECK(epstein_zeta(QuadraticForm(1, 0, 1), 2.0).value == doctest::Approx(6.0268120396919).epsilon(1e-12));
    CHECK(epstein_zeta(QuadraticForm(1, 0, 1), 3.0).value ==
          doctest::Approx(brute_epstein(1, 0, 1, 3.0, 600)).epsilon(1e-9));
}

TEST_CASE("Epstein zeta of a skew form against brute force") {
    CHECK(epstein_zeta(QuadraticForm(1, -1, 1), 2.5).value ==
          doctest::Approx(brute_epstein(1, -1, 1, 2.5, 600)).epsilon(1e-8));
    CHECK(epstein_zeta(QuadraticForm(2, 1, 3), 1.7).value ==
          doctest::Approx(brute_epstein(2, 1, 3, 1.7, 800)).epsilon(1e-6));
}

TEST_CASE("Epstein zeta errors") {
    CHECK_THROWS_AS(epstein_zeta(QuadraticForm(1, 0, 1), 1.0), PoleError);
    CHECK_THROWS_AS(epstein_zeta(QuadraticForm(1, 0, 1), -3.0), Unsupported);
    CHECK_THROWS_AS(QuadraticForm(1, 3, 1), DomainError);
}

TEST_CASE("spectral zeta of the unit square via the lattice oracle") {
    // zeta(s) = pi^{-2s} (E(s) - 4 zeta_R(2s)) / 4 for Rectangle(1,1)
    const double s = 2.0;
    const double oracle = std::pow(pi, -2 * s) * 0.25 * (4.0 * std::riemann_zeta(2.0) * catalan() - 4.0 * std::riemann_zeta(4.0));
    CHECK(spectral_zeta(ShapeSpec::square(1), s).value == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("spectral zeta relations between shapes") {
    const double s = 2.0;
    const double iso = spectral_zeta(ShapeSpec::isosceles_right(1), s).value;
    const double sq = spectral_zeta(ShapeSpec::square(1), s).value;
    CHECK(iso == doctest::Approx(0.5 * sq - 0.5 * std::pow(1.0 / (2 * pi * pi), s) * std::riemann_zeta(2 * s)).epsilon(1e-12));
    const double hemi = spectral_zeta(ShapeSpec::hemi_equilateral(1), s).value;
    const double eq = spectral_zeta(ShapeSpec::equilateral(1), s).value;
    CHECK(hemi == doctest::Approx(0.5 * eq - 0.5 * std::pow(3.0 / (16 * pi * pi), s) * std::riemann_zeta(2 * s)).epsilon(1e-12));
}

TEST_CASE("direct summation agrees with the closed forms") {
    for (const ShapeSpec& sh : {ShapeSpec::rectangle(1, 1.5), ShapeSpec::equilateral(1), ShapeSpec::isosceles_right(1)}) {
        const ZetaCrossCheck c = cross_check_spectral_zeta(sh, 2.5, 1e-13, 100000);
        CHECK(c.agree);
    }
}

TEST_CASE("zeta at zero is the corner constant") {
    CHECK(spectral_zeta(ShapeSpec::square(1), 0.0).value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(spectral_zeta(ShapeSpec::equilateral(1), 0.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(spectral_zeta(ShapeSpec::isosceles_right(1), 0.0).value == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(spectral_zeta(ShapeSpec::hemi_equilateral(1), 0.0).value == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("zeta'(0) and determinants") {
    const ZetaPrimeZero sq = zeta_prime_zero(ShapeSpec::square(1));
    CHECK(sq.agree);
    const double eta_oracle = 0.5 * std::log(8.0 * std::pow(pi, 1.5) / std::pow(std::tgamma(0.25), 2));
    CHECK(sq.mean() == doctest::Approx(eta_oracle).epsilon(1e-13));
    CHECK(sq.mean() == doctest::Approx(0.610245660528891).epsilon(1e-13));
    CHECK(determinant(ShapeSpec::square(1)) == doctest::Approx(0.543217405607).epsilon(1e-11));

    const ZetaPrimeZero eq = zeta_prime_zero(ShapeSpec::equilateral(1));
    CHECK(eq.agree);
    CHECK(std::fabs(eq.difference) < 1e-12);
    const ZetaPrimeZero hemi = zeta_prime_zero(ShapeSpec::hemi_equilateral(1));
    CHECK(hemi.mean() == doctest::Approx(0.5 * eq.mean() + 0.25 * std::log(3.0) + 0.5 * std::log(0.5)).epsilon(1e-12));

    double iso_series = std::log(4.0) / 4.0 + pi / 24.0;
    for (int n = 1; n < 40; ++n) iso_series += 0.5 * double(divisor_sigma1(n)) / (n * std::exp(2 * pi * n));
    CHECK(zeta_prime_zero(ShapeSpec::isosceles_right(1)).mean() == doctest::Approx(iso_series).epsilon(1e-12));

    // Scaling: eigenvalues divide by c^2, so zeta'_{cR}(0) = zeta'_R(0) + zeta_R(0) log c^2
    const double c = 2.0;
    const ZetaPrimeZero r = zeta_prime_zero(ShapeSpec::rectangle(1, 1.5));
    const ZetaPrimeZero rc = zeta_prime_zero(ShapeSpec::rectangle(c, 1.5 * c));
    CHECK(rc.mean() == doctest::Approx(r.mean() + 0.25 * std::log(c * c)).epsilon(1e-12));
}

TEST_CASE("Chowla-Selberg terms reproduce the full value") {
    const ChowlaSelbergTerms t = chowla_selberg_terms(QuadraticForm(1, -3, 3), 2.0);
    const ZetaResult r = epstein_zeta(QuadraticForm(1, -3, 3), 2.0);
    CHECK(t.zeta_term + t.gamma_term + t.bessel_term == doctest::Approx(r.value).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(brute_epstein(1, -3, 3, 2.0, 800)).epsilon(1e-6));
}
