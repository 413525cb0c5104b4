#include "polyspec/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyspec/errors.hpp"

namespace polyspec {

using constants::pi;
using constants::sqrt3;

namespace {

void require_tol(double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

// Sum a decreasing list of positive terms smallest-first.
double sum_reversed(const std::vector<double>& terms) {
    double s = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return s;
}

// 2 sum_{n>=0} e^{-x (n + shift)^2} for shift in {0, 1/2}, starting at n = first.
SeriesValue gaussian_tail_sum(double x, double shift, long first, double tol) {
    const double one_minus_q = -std::expm1(-x);
    std::vector<double> terms;
    long n = first;
    double bound = 0.0;
    for (;;) {
        const double u = static_cast<double>(n) + shift;
        terms.push_back(2.0 * std::exp(-x * u * u));
        const double next = u + 1.0;
        bound = 2.0 * std::exp(-x * next * next) / one_minus_q;
        if (bound <= tol) break;
        ++n;
    }
    return {sum_reversed(terms), bound, static_cast<long>(terms.size())};
}

}  // namespace

Nome::Nome(double q) : q_(q), rate_(0.0) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("nome must lie in (0,1)");
    rate_ = -std::log(q);
}

Nome Nome::from_rate(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("nome rate must be positive");
    return Nome(std::exp(-x), x);
}

SeriesValue theta3_minus_one(const Nome& q, double tol) {
    require_tol(tol);
    return gaussian_tail_sum(q.rate(), 0.0, 1, tol);
}

SeriesValue theta3(const Nome& q, double tol) {
    SeriesValue r = theta3_minus_one(q, tol);
    r.value += 1.0;
    r.terms_used += 1;
    return r;
}

SeriesValue theta2(const Nome& q, double tol) {
    require_tol(tol);
    return gaussian_tail_sum(q.rate(), 0.5, 0, tol);
}

namespace {

// sum_{n>=1} log(1 - sign^n p^n) with sign = +-1, plus the bound
// |sum_{n>N} log(1 -+ p^n)| <= p^{N+1} / ((1-p)(1-p^{N+1})).
SeriesValue log_product(double p, bool alternating, double tol) {
    std::vector<double> terms;
    double pn = 1.0;
    double bound = 0.0;
    for (long n = 1;; ++n) {
        pn *= p;
        const double signed_pn = (alternating && n % 2 == 1) ? -pn : pn;
        terms.push_back(std::log1p(-signed_pn));
        const double pn1 = pn * p;
        bound = pn1 / ((1.0 - p) * (1.0 - pn1));
        if (bound <= tol) break;
    }
    double s = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return {s, bound, static_cast<long>(terms.size())};
}

}  // namespace

SeriesValue log_dedekind_eta_on_imaginary_axis(double ratio, double tol) {
    require_tol(tol);
    if (!(ratio > 0.0)) throw DomainError("eta ratio must be positive");
    SeriesValue r = log_product(std::exp(-2.0 * pi * ratio), false, tol);
    r.value += -pi * ratio / 12.0;
    return r;
}

SeriesValue dedekind_eta_on_imaginary_axis(double ratio, double tol) {
    require_tol(tol);
    const SeriesValue lg = log_dedekind_eta_on_imaginary_axis(ratio, tol);
    const double v = std::exp(lg.value);
    return {v, v * std::expm1(lg.tail_bound), lg.terms_used};
}

SeriesValue log_abs_eta_hexagonal(double tol) {
    require_tol(tol);
    // 1 + (-1)^{n+1} p^n = 1 - (-p)^n
    SeriesValue r = log_product(std::exp(-pi * sqrt3), true, tol);
    r.value += -pi * sqrt3 / 24.0;
    return r;
}

SeriesValue abs_eta_hexagonal(double tol) {
    require_tol(tol);
    const SeriesValue lg = log_abs_eta_hexagonal(tol);
    const double v = std::exp(lg.value);
    return {v, v * std::expm1(lg.tail_bound), lg.terms_used};
}

namespace {

constexpr std::uint64_t kSigmaTableSize = 1u << 17;

const std::vector<std::uint64_t>& sigma_table() {
    // Built once under the static-initialisation guard; read-only afterwards.
    static const std::vector<std::uint64_t> table = [] {
        std::vector<std::uint64_t> t(kSigmaTableSize, 0);
        for (std::uint64_t d = 1; d < kSigmaTableSize; ++d)
            for (std::uint64_t m = d; m < kSigmaTableSize; m += d) t[m] += d;
        return t;
    }();
    return table;
}

}  // namespace

std::uint64_t divisor_sigma1(std::uint64_t n) {
    if (n == 0) throw DomainError("sigma_1 is defined for n >= 1");
    if (n < kSigmaTableSize) return sigma_table()[n];
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += d;
        if (d * d != n) s += n / d;
    }
    return s;
}

double divisor_sigma(std::uint64_t n, double p) {
    if (n == 0) throw DomainError("sigma_p is defined for n >= 1");
    double s = 0.0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += std::pow(static_cast<double>(d), p);
        if (d * d != n) s += std::pow(static_cast<double>(n / d), p);
    }
    return s;
}

SeriesValue divisor_weighted_sum(double x, bool alternating, double tol) {
    require_tol(tol);
    if (!(x > 0.0)) throw DomainError("divisor series needs a positive rate");
    const double y = std::exp(-x);
    std::vector<double> terms;
    double bound = 0.0;
    for (long n = 1;; ++n) {
        const double sign = (alternating && n % 2 == 1) ? -1.0 : 1.0;
        const double nd = static_cast<double>(n);
        terms.push_back(sign * static_cast<double>(divisor_sigma1(n)) / nd * std::exp(-nd * x));
        // sum_{k>n} k y^k, using sigma_1(k)/k <= k
        bound = std::pow(y, nd + 1.0) * ((nd + 1.0) - nd * y) / ((1.0 - y) * (1.0 - y));
        if (bound <= tol) break;
    }
    double s = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return {s, bound, static_cast<long>(terms.size())};
}

SeriesValue log_product_sum(double x, bool alternating, double tol) {
    require_tol(tol);
    if (!(x > 0.0)) throw DomainError("log product needs a positive rate");
    SeriesValue r = log_product(std::exp(-x), alternating, tol);
    r.value = -r.value;
    return r;
}

SeriesValue bessel_k_quadrature(double order, double z, double tol) {
    require_tol(tol);
    if (!(z > 0.0)) throw DomainError("Bessel K argument must be positive");
    const double nu = std::fabs(order);

    // Tail past T: int_T^inf cosh(nu t) e^{-z cosh t} dt <= int_U^inf u^{nu-1} e^{-z u/2} du,
    // U = e^T. For nu <= 1 this is <= (2/z) e^{-zU/2}; otherwise, once
    // u^{nu-1} e^{-z u/4} <= 1 on [U, inf), it is <= (4/z) e^{-zU/4}.
    const double tail_target = 0.1 * tol;
    double T = 1.0;
    double tail = 0.0;
    for (;; T += 0.25) {
        const double U = std::exp(T);
        if (nu <= 1.0) {
            tail = (2.0 / z) * std::exp(-z * U / 2.0);
        } else {
            const bool decreasing = U > 4.0 * (nu - 1.0) / z;
            const bool below_one = (nu - 1.0) * T - z * U / 4.0 <= 0.0;
            tail = (decreasing && below_one) ? (4.0 / z) * std::exp(-z * U / 4.0)
                                             : std::numeric_limits<double>::infinity();
        }
        if (tail <= tail_target) break;
        if (T > 60.0) throw DomainError("Bessel K quadrature range did not close");
    }

    // Integrate with e^{-z} factored out so the integrand is O(1) near t = 0.
    auto f = [nu, z](double t) { return std::cosh(nu * t) * std::exp(-z * (std::cosh(t) - 1.0)); };
    // Boost's |Kronrod - Gauss| estimate is far too pessimistic for this
    // entire integrand; the gap between two rule orders is used instead.
    const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, T, 15, 1e-15);
    const double I31 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, T, 15, 1e-15);
    const double err = std::fabs(I - I31) + 4.0 * std::numeric_limits<double>::epsilon() * I;
    const double scale = std::exp(-z);
    const double bound = scale * err + tail;
    if (!(bound <= tol) && bound > 1e-14 * scale * I)
        throw DomainError("Bessel K quadrature did not reach the requested tolerance");
    return {scale * I, bound, 61};
}

SeriesValue miracle_integral(double a, double b, long n, double s, double tol) {
    require_tol(tol);
    if (!(a > 0.0 && b > 0.0) || n < 1) throw DomainError("miracle integral needs a, b > 0, n >= 1");
    if (!std::isfinite(s)) throw DomainError("miracle integral needs finite s");
    const double c = pi * a * static_cast<double>(n) / b;
    // Fold (0,1) onto (1,inf) with x -> 1/x, then factor out e^{-2c}:
    //   I = e^{-2c} int_1^inf (x^{s-3/2} + x^{-s-1/2}) e^{-c (sqrt x - 1/sqrt x)^2} dx
    auto f = [c, s](double x) {
        const double r = std::sqrt(x) - 1.0 / std::sqrt(x);
        return (std::pow(x, s - 1.5) + std::pow(x, -s - 0.5)) * std::exp(-c * r * r);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double L1 = 0.0;
    const double J = integrator.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-15,
                                          &err, &L1);
    const double scale = std::exp(-2.0 * c);
    return {scale * J, scale * err, 1};
}

namespace {

// B_{2j} for j = 1..14.
constexpr std::array<double, 14> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,         1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,     7.0 / 6.0,           -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,   854513.0 / 138.0,    -236364091.0 / 2730.0,
    8553103.0 / 6.0,    -23749461029.0 / 870.0};

SeriesValue zeta_euler_maclaurin(double s) {
    constexpr int N = 16;
    constexpr int J = 12;
    const double Nd = N;
    double head = 0.0;
    for (int k = N - 1; k >= 1; --k) head += std::pow(static_cast<double>(k), -s);
    double v = head + std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
    // Rising factorial s(s+1)...(s+2j-2) over (2j)!
    double rising = s;
    double fact = 2.0;
    double last = 0.0;
    for (int j = 1; j <= J + 1; ++j) {
        const double term = kBernoulli[j - 1] / fact * rising * std::pow(Nd, -s - 2.0 * j + 1.0);
        if (j <= J) {
            v += term;
        } else {
            last = std::fabs(term);
        }
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return {v, last + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(v), N + J};
}

}  // namespace

SeriesValue riemann_zeta(double s) {
    if (!std::isfinite(s)) throw DomainError("zeta needs finite s");
    if (std::fabs(s - 1.0) < 1e-3) throw PoleError("Riemann zeta has a pole at s = 1");
    if (s >= -1.0) return zeta_euler_maclaurin(s);
    // Functional equation keeps the Euler-Maclaurin sum free of cancellation.
    if (std::fmod(-s, 2.0) == 0.0) return {0.0, 0.0, 1};
    const SeriesValue r = zeta_euler_maclaurin(1.0 - s);
    const double f = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
                     std::tgamma(1.0 - s);
    return {f * r.value, std::fabs(f) * r.tail_bound, r.terms_used};
}

double reciprocal_gamma(double s) {
    if (s <= 0.0 && std::floor(s) == s) return 0.0;
    return 1.0 / std::tgamma(s);
}

namespace {

// Bound terms for the weighted divisor-Bessel sum with |s| < 1:
//   n^{s-1/2} sigma_{1-2s}(n) <= n^{9/2},
//   I_n <= e^{-c}(2/c + 1/c^2),  |dI_n/ds| <= e^{-c}(2/c + 3/c^2 + 2/c^3),
//   |d sigma_{1-2s}(n)/ds| <= 2 log n sigma_{1-2s}(n).
struct WeightedBounds {
    double value = 0.0;
    double derivative = 0.0;
};

WeightedBounds weighted_bounds(double a, double b, long first) {
    WeightedBounds wb;
    for (long n = first;; ++n) {
        const double nd = static_cast<double>(n);
        const double c = pi * a * nd / b;
        const double w = std::pow(nd, 4.5) * std::exp(-c);
        const double iv = 2.0 / c + 1.0 / (c * c);
        const double id = 2.0 / c + 3.0 / (c * c) + 2.0 / (c * c * c);
        wb.value += w * iv;
        wb.derivative += w * (3.0 * std::log(nd) * iv + id);
        if (w * (iv + id) < 1e-30 * (wb.value + wb.derivative) && n > first + 5) break;
    }
    return wb;
}

}  // namespace

SeriesValue weighted_bessel_sum(double a, double b, double s, double tol) {
    require_tol(tol);
    if (!(a > 0.0 && b > 0.0)) throw DomainError("weighted sum needs a, b > 0");
    if (!(std::fabs(s) < 1.0)) throw Unsupported("weighted sum bound requires |s| < 1");
    const double prefactor = std::pow(a * b / pi, s) * std::sqrt(a / b);
    std::vector<double> terms;
    double bound = 0.0;
    for (long n = 1;; ++n) {
        const double nd = static_cast<double>(n);
        const SeriesValue I = miracle_integral(a, b, n, s, 1e-3 * tol);
        terms.push_back(std::pow(nd, s - 0.5) * divisor_sigma(n, 1.0 - 2.0 * s) * I.value);
        bound = prefactor * weighted_bounds(a, b, n + 1).value;
        if (bound <= tol) break;
        if (n > 100000) throw DomainError("weighted sum did not converge");
    }
    double acc = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc += *it;
    return {prefactor * acc, bound, static_cast<long>(terms.size())};
}

WeightedSumDerivativeCheck weighted_sum_derivative_check(double a, double b, double s, double h) {
    if (!(h > 0.0) || !(std::fabs(s) + h < 1.0))
        throw Unsupported("derivative check requires |s| + h < 1");
    const double fp = weighted_bessel_sum(a, b, s + h, 1e-15).value;
    const double fm = weighted_bessel_sum(a, b, s - h, 1e-15).value;
    const WeightedBounds wb = weighted_bounds(a, b, 1);
    const double L = std::log(a * b / pi);
    // |F'| <= P(s) (|log(ab/pi)| |f| + |f'|), P maximised over [s-h, s+h].
    const double P = std::pow(a * b / pi, s) * std::sqrt(a / b) * std::exp(h * std::fabs(L));
    return {s, (fp - fm) / (2.0 * h), P * (std::fabs(L) * wb.value + wb.derivative)};
}

}  // namespace polyspec
