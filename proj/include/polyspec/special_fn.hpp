#pragma once
//  Exponentially convergent kernels: Jacobi theta, Dedekind eta on the
//  imaginary axis and at the hexagonal point, divisor sums, the Riemann
//  zeta function and Bessel-K quadrature.
//
//  Every series evaluator returns a SeriesValue whose tail_bound is an
//  a priori bound on the truncation error, not an estimate, except for the
//  quadrature routines where it is the Gauss-Kronrod error estimate plus a
//  rigorous bound on the discarded infinite tail.

#include <cstdint>

namespace polyspec {

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    long terms_used = 0;
};

// Nome q = e^{-x}. Stores the rate so that q^{n^2} = e^{-x n^2} is formed
// without repeated powering.
class Nome {
public:
    explicit Nome(double q);
    static Nome from_rate(double x);

    double q() const { return q_; }
    double rate() const { return rate_; }

private:
    Nome(double q, double rate) : q_(q), rate_(rate) {}
    double q_;
    double rate_;
};

inline constexpr double kDefaultTol = 1e-15;

// Theta_3(q) = sum_{n in Z} q^{n^2}.
SeriesValue theta3(const Nome& q, double tol = kDefaultTol);
// Theta_3(q) - 1, summed without forming 1 + small.
SeriesValue theta3_minus_one(const Nome& q, double tol = kDefaultTol);
// Theta_2(q) = sum_{n in Z} q^{(n+1/2)^2}.
SeriesValue theta2(const Nome& q, double tol = kDefaultTol);

// eta(i r) = e^{-pi r/12} prod_{n>=1} (1 - e^{-2 pi n r}).
SeriesValue dedekind_eta_on_imaginary_axis(double ratio, double tol = kDefaultTol);
// log eta(i r), same product summed in the log domain.
SeriesValue log_dedekind_eta_on_imaginary_axis(double ratio, double tol = kDefaultTol);

// |eta(z)| at z = (-3 + i sqrt3)/2.
SeriesValue abs_eta_hexagonal(double tol = kDefaultTol);
SeriesValue log_abs_eta_hexagonal(double tol = kDefaultTol);

std::uint64_t divisor_sigma1(std::uint64_t n);
// sigma_p(n) = sum_{d|n} d^p for real p.
double divisor_sigma(std::uint64_t n, double p);

// sum_{n>=1} (+-1)^n sigma_1(n) e^{-n x} / n.
SeriesValue divisor_weighted_sum(double x, bool alternating, double tol = kDefaultTol);
// -sum_{n>=1} log(1 - (+-1)^n e^{-n x}); equal to divisor_weighted_sum.
SeriesValue log_product_sum(double x, bool alternating, double tol = kDefaultTol);

// K_nu(z) from int_0^inf cosh(nu t) e^{-z cosh t} dt.
SeriesValue bessel_k_quadrature(double order, double z, double tol = 1e-14);

// int_0^inf x^{s-3/2} e^{-pi a n (x + 1/x)/b} dx, evaluated on the x axis.
SeriesValue miracle_integral(double a, double b, long n, double s, double tol = 1e-14);

// Riemann zeta for real s != 1 by Euler-Maclaurin summation.
SeriesValue riemann_zeta(double s);

// 1/Gamma(s), zero at the non-positive integers.
double reciprocal_gamma(double s);

namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double sqrt3 = 1.732050807568877293527446341505872367;
inline constexpr double sqrt_pi = 1.772453850905516027298167483341145183;
inline constexpr double zeta_at_zero = -0.5;
inline constexpr double zeta_at_minus_one = -1.0 / 12.0;
// zeta'(0) = -log(2 pi)/2
inline constexpr double zeta_prime_at_zero = -0.918938533204672741780329736405617640;
// Gamma(-1/2) = -2 sqrt(pi)
inline constexpr double gamma_minus_half = -3.544907701811032054596334966682290366;
}  // namespace constants

// The weighted divisor-Bessel sum of the rectangle zeta function near s = 0,
//   F(s) = (ab/pi)^s sqrt(a/b) sum_n n^{s-1/2} sigma_{1-2s}(n) I_n(s),
// with I_n the miracle integral, and an a priori bound on |F'(s)| valid
// for |s| < 1.
struct WeightedSumDerivativeCheck {
    double s = 0.0;
    double difference_quotient = 0.0;
    double bound = 0.0;
};
SeriesValue weighted_bessel_sum(double a, double b, double s, double tol = 1e-14);
WeightedSumDerivativeCheck weighted_sum_derivative_check(double a, double b, double s,
                                                         double h = 1e-4);

}  // namespace polyspec
