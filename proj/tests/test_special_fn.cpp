#include <doctest.h>

#include <cmath>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"

using namespace polyspec;
using constants::pi;

TEST_CASE("theta3 and theta2 against direct sums") {
    for (double q : {1e-6, 0.1, 0.5, 0.9}) {
        double t3 = 1.0, t2 = 0.0;
        for (int n = 1; n < 4000; ++n) t3 += 2.0 * std::pow(q, double(n) * n);
        for (int n = 0; n < 4000; ++n) t2 += 2.0 * std::pow(q, (n + 0.5) * (n + 0.5));
        CHECK(theta3(Nome(q)).value == doctest::Approx(t3).epsilon(1e-13));
        CHECK(theta2(Nome(q)).value == doctest::Approx(t2).epsilon(1e-13));
    }
    CHECK(theta3(Nome(1e-300)).value == 1.0);
    CHECK(theta2(Nome(1e-300)).value == doctest::Approx(0.0));
    CHECK_THROWS_AS(Nome(1.0), DomainError);
    CHECK_THROWS_AS(Nome(0.0), DomainError);
}

TEST_CASE("dedekind eta at i matches the gamma(1/4) closed form") {
    const double oracle = std::tgamma(0.25) / (2.0 * std::pow(pi, 0.75));
    CHECK(dedekind_eta_on_imaginary_axis(1.0).value == doctest::Approx(oracle).epsilon(1e-14));
    CHECK_THROWS_AS(dedekind_eta_on_imaginary_axis(0.0), DomainError);
    const double big = dedekind_eta_on_imaginary_axis(40.0).value;
    CHECK(big == doctest::Approx(std::exp(-pi * 40.0 / 12.0)).epsilon(1e-12));
}

TEST_CASE("hexagonal eta against its gamma(1/3) closed form") {
    // |eta(e^{i pi/3})| = 3^{1/8} Gamma(1/3)^{3/2} / (2 pi)
    const double oracle = std::pow(3.0, 0.125) * std::pow(std::tgamma(1.0 / 3.0), 1.5) / (2.0 * pi);
    CHECK(abs_eta_hexagonal().value == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("divisor sigma") {
    CHECK(divisor_sigma1(1) == 1);
    CHECK(divisor_sigma1(6) == 12);
    CHECK(divisor_sigma1(12) == 28);
    CHECK_THROWS_AS(divisor_sigma1(0), DomainError);
    for (std::uint64_t n = 1; n < 300; ++n) {
        std::uint64_t s = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += d;
        CHECK(divisor_sigma1(n) == s);
    }
}

TEST_CASE("divisor weighted sum against a naive oracle") {
    for (double x : {0.5, 2.0, 2.0 * pi}) {
        for (bool alt : {false, true}) {
            double naive = 0.0;
            for (int n = 1; n < 2000; ++n) {
                const double term = double(divisor_sigma1(n)) / n * std::exp(-x * n);
                naive += (alt && n % 2) ? -term : term;
            }
            CHECK(divisor_weighted_sum(x, alt).value == doctest::Approx(naive).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(divisor_weighted_sum(0.0, false), DomainError);
}

TEST_CASE("bessel K quadrature against std::cyl_bessel_k") {
    CHECK(bessel_k_quadrature(0.5, 2.0).value == doctest::Approx(std::sqrt(pi / 4.0) * std::exp(-2.0)).epsilon(1e-14));
    CHECK(bessel_k_quadrature(0.0, 1.0).value == doctest::Approx(0.42102443824070834).epsilon(1e-14));
    for (double nu : {0.0, 0.2, 0.5, 1.5, 3.0})
        for (double z : {0.1, 1.0, 7.0, 40.0})
            CHECK(bessel_k_quadrature(nu, z).value == doctest::Approx(std::cyl_bessel_k(nu, z)).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_k_quadrature(0.5, 0.0), DomainError);
}

TEST_CASE("miracle integral") {
    CHECK(miracle_integral(1, 1, 1, 0.0).value == doctest::Approx(std::exp(-2 * pi)).epsilon(1e-12));
    CHECK(miracle_integral(1, 2, 1, 0.0).value == doctest::Approx(std::sqrt(2.0) * std::exp(-pi)).epsilon(1e-12));
    CHECK(miracle_integral(1, 1, 1, 0.3).value ==
          doctest::Approx(2.0 * std::cyl_bessel_k(0.2, 2.0 * pi)).epsilon(1e-12));
    CHECK_THROWS_AS(miracle_integral(0.0, 1, 1, 0.0), DomainError);
}

TEST_CASE("riemann zeta against std::riemann_zeta") {
    for (double s : {-1.5, 0.0, 0.5, 2.0, 4.0, 7.5})
        CHECK(riemann_zeta(s).value == doctest::Approx(std::riemann_zeta(s)).epsilon(1e-13));
    CHECK_THROWS_AS(riemann_zeta(1.0), PoleError);
}

TEST_CASE("tail bounds shrink with tolerance") {
    const SeriesValue a = divisor_weighted_sum(0.3, true, 1e-10);
    const SeriesValue b = divisor_weighted_sum(0.3, true, 1e-11);
    CHECK(std::fabs(a.value - b.value) <= a.tail_bound);
}
