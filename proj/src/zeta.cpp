#include "polyspec/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/spectrum.hpp"

namespace polyspec {

using constants::pi;
using constants::sqrt3;
using constants::sqrt_pi;

QuadraticForm::QuadraticForm(double a, double b, double c) : a_(a), b_(b), c_(c) {
    if (!(a > 0.0) || !(4.0 * a * c - b * b > 0.0) || !std::isfinite(b))
        throw DomainError("quadratic form is not positive definite");
}

QuadraticForm QuadraticForm::reduced() const {
    double a = a_, b = b_, c = c_;
    for (int it = 0; it < 200; ++it) {
        if (a > c) std::swap(a, c);
        if (std::fabs(b) <= a) break;
        // m -> m + k n
        const double k = -std::round(b / (2.0 * a));
        c = a * k * k + b * k + c;
        b = 2.0 * a * k + b;
    }
    if (a > c) std::swap(a, c);
    return QuadraticForm(a, b, c);
}

double QuadraticForm::min_eigenvalue() const {
    const double tr = a_ + c_;
    const double det = a_ * c_ - 0.25 * b_ * b_;
    return det / (0.5 * tr + std::sqrt(0.25 * tr * tr - det));
}

std::string to_string(ZetaMethod m) {
    switch (m) {
        case ZetaMethod::DirectSum: return "direct-sum";
        case ZetaMethod::ChowlaSelberg: return "chowla-selberg";
        case ZetaMethod::ClosedForm: return "closed-form";
    }
    return "?";
}

namespace {

void check_s_range(double s, bool spectral) {
    if (!std::isfinite(s)) throw DomainError("s must be finite");
    if (s > 0.999 && s < 1.001) throw PoleError("pole at s = 1");
    if (spectral && std::fabs(s - 0.5) < 1e-9) throw PoleError("spectral zeta has a pole at s = 1/2");
    if (!(s > -2.0)) throw Unsupported("s <= -2 is outside the implemented range");
    for (double p : {0.5, -0.5, -1.5})
        if (std::fabs(s - p) < 1e-9)
            throw Unsupported("removable singularity of the decomposition at s = " + std::to_string(p));
}

// sum_{n>=1} w(n) n^{s-1/2} sigma_{1-2s}(n) 2 K_{s-1/2}(n beta) with |w| <= 1,
// truncated when the a priori tail bound drops below target.
SeriesValue bessel_divisor_series(double s, double beta, const std::function<double(long)>& weight,
                                  double target) {
    const double nu = s - 0.5;
    const double p = s + 0.5 + std::max(0.0, 1.0 - 2.0 * s);
    std::vector<double> terms;
    double quad_err = 0.0;
    double tail = 0.0;
    for (long n = 1;; ++n) {
        const double nd = static_cast<double>(n);
        const SeriesValue K = bessel_k_quadrature(nu, nd * beta, 1e-3 * target + 1e-300);
        const double coef = std::pow(nd, s - 0.5) * divisor_sigma(static_cast<std::uint64_t>(n), 1.0 - 2.0 * s);
        terms.push_back(weight(n) * coef * 2.0 * K.value);
        quad_err += coef * 2.0 * K.tail_bound;
        // |term_k| <= k^p 2 K_nu((n+1) beta) e^{-(k-n-1) beta} for k > n.
        const double Kn1 = bessel_k_quadrature(nu, (nd + 1.0) * beta, 1e-3 * target + 1e-300).value;
        const double base = std::pow(nd + 1.0, p);
        const double expo = p > 0.0 ? p / (nd + 1.0) - beta : -beta;
        tail = expo < 0.0 ? base * 2.0 * Kn1 / (1.0 - std::exp(expo)) : std::numeric_limits<double>::infinity();
        if (tail + quad_err <= target) break;
        if (n > 10000) throw DomainError("Bessel divisor series did not converge");
    }
    double acc = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc += *it;
    return {acc, tail + quad_err, static_cast<long>(terms.size())};
}

SeriesValue bessel_divisor_series(double s, double beta, bool alternating, double target) {
    return bessel_divisor_series(
        s, beta, [alternating](long n) { return (alternating && n % 2 == 1) ? -1.0 : 1.0; }, target);
}

// Gamma(s-1/2) zeta(2s-1) / Gamma(s), finite for the supported s.
double gamma_ratio_term(double s, double* bound) {
    const SeriesValue z = riemann_zeta(2.0 * s - 1.0);
    const double g = std::tgamma(s - 0.5) * reciprocal_gamma(s);
    *bound = std::fabs(g) * z.tail_bound;
    return g * z.value;
}

}  // namespace

ChowlaSelbergTerms chowla_selberg_terms(const QuadraticForm& q, double s, double tol) {
    check_s_range(s, false);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    const double a = q.a(), b = q.b();
    const double D = q.discriminant();
    ChowlaSelbergTerms t;
    const SeriesValue z2s = riemann_zeta(2.0 * s);
    t.zeta_term = 2.0 * z2s.value * std::pow(a, -s);
    double gb = 0.0;
    const double gr = gamma_ratio_term(s, &gb);
    const double gpre = std::pow(2.0, 2.0 * s) * std::pow(a, s - 1.0) * sqrt_pi / std::pow(D, s - 0.5);
    t.gamma_term = gpre * gr;
    const double rg = reciprocal_gamma(s);
    const double bpre = std::pow(2.0, s + 2.5) * std::pow(pi, s) * rg / (std::sqrt(a) * std::pow(D, 0.5 * s - 0.25));
    // 2 K in the series, so halve the prefactor.
    if (bpre != 0.0) {
        const double beta = pi * std::sqrt(D) / a;
        const double target = 0.5 * tol / std::fabs(0.5 * bpre);
        const SeriesValue S = bessel_divisor_series(
            s, beta, [a, b](long n) { return std::cos(pi * static_cast<double>(n) * b / a); }, target);
        t.bessel_term = 0.5 * bpre * S.value;
        t.bessel_terms = S.terms_used;
        t.error_bound += std::fabs(0.5 * bpre) * S.tail_bound;
    }
    t.error_bound += 2.0 * std::pow(a, -s) * z2s.tail_bound + std::fabs(gpre) * gb;
    return t;
}

ZetaResult epstein_zeta(const QuadraticForm& q, double s, double tol) {
    const ChowlaSelbergTerms t = chowla_selberg_terms(q.reduced(), s, tol);
    return {t.zeta_term + t.gamma_term + t.bessel_term, t.error_bound, ZetaMethod::ChowlaSelberg, s};
}

namespace {

struct Parts {
    double value = 0.0;
    double bound = 0.0;
};

// Rectangle a x b:
//   1/2 (b/pi)^{2s} [-zeta(2s) + (a sqrt(pi)/b) zeta(2s-1) Gamma(s-1/2)/Gamma(s)]
//   + (ab/pi)^s / Gamma(s) sqrt(a/b) sum n^{s-1/2} sigma_{1-2s}(n) 2 K_{s-1/2}(2 pi a n/b)
Parts rectangle_zeta(double a, double b, double s, double tol) {
    if (a < b) std::swap(a, b);  // symmetric; a >= b makes the Bessel series fastest
    const SeriesValue z2s = riemann_zeta(2.0 * s);
    double gb = 0.0;
    const double gr = gamma_ratio_term(s, &gb);
    const double pre = 0.5 * std::pow(b / pi, 2.0 * s);
    Parts p;
    p.value = pre * (-z2s.value + a * sqrt_pi / b * gr);
    p.bound = pre * (z2s.tail_bound + a * sqrt_pi / b * gb);
    const double bpre = std::pow(a * b / pi, s) * reciprocal_gamma(s) * std::sqrt(a / b);
    if (bpre != 0.0) {
        const SeriesValue S = bessel_divisor_series(s, 2.0 * pi * a / b, false, 0.5 * tol / std::fabs(bpre));
        p.value += bpre * S.value;
        p.bound += std::fabs(bpre) * S.tail_bound;
    }
    return p;
}

// Equilateral side l:
//   1/6 (3l/(4pi))^{2s} [-4 zeta(2s) + 2^{2s} sqrt(pi) zeta(2s-1) Gamma(s-1/2)/(Gamma(s) 3^{s-1/2})
//     + 4 pi^s 2^{s-1/2}/(Gamma(s) 3^{s/2-1/4}) sum (-1)^n n^{s-1/2} sigma_{1-2s}(n) 2 K_{s-1/2}(pi n sqrt3)]
Parts equilateral_bracket(double s, double tol_bracket) {
    const SeriesValue z2s = riemann_zeta(2.0 * s);
    double gb = 0.0;
    const double gr = gamma_ratio_term(s, &gb);
    const double gpre = std::pow(2.0, 2.0 * s) * sqrt_pi / std::pow(3.0, s - 0.5);
    Parts p;
    p.value = -4.0 * z2s.value + gpre * gr;
    p.bound = 4.0 * z2s.tail_bound + gpre * gb;
    const double bpre = 4.0 * std::pow(pi, s) * std::pow(2.0, s - 0.5) * reciprocal_gamma(s) /
                        std::pow(3.0, 0.5 * s - 0.25);
    if (bpre != 0.0) {
        const SeriesValue S = bessel_divisor_series(s, pi * sqrt3, true, 0.5 * tol_bracket / std::fabs(bpre));
        p.value += bpre * S.value;
        p.bound += std::fabs(bpre) * S.tail_bound;
    }
    return p;
}

Parts equilateral_zeta(double l, double s, double tol) {
    const double pre = std::pow(3.0 * l / (4.0 * pi), 2.0 * s) / 6.0;
    Parts p = equilateral_bracket(s, tol / pre);
    p.value *= pre;
    p.bound *= pre;
    return p;
}

// Isosceles right, legs a:
//   -1/4 (a/pi)^{2s} zeta(2s) - 2^{-s-1} (a/pi)^{2s} zeta(2s)
//   + sqrt(pi)/4 (a/pi)^{2s} zeta(2s-1) Gamma(s-1/2)/Gamma(s)
//   + 1/2 (a^2/pi)^s / Gamma(s) sum n^{s-1/2} sigma_{1-2s}(n) 2 K_{s-1/2}(2 pi n)
Parts isosceles_zeta(double a, double s, double tol) {
    const SeriesValue z2s = riemann_zeta(2.0 * s);
    double gb = 0.0;
    const double gr = gamma_ratio_term(s, &gb);
    const double ap = std::pow(a / pi, 2.0 * s);
    const double zc = -0.25 * ap - std::pow(2.0, -s - 1.0) * ap;
    Parts p;
    p.value = zc * z2s.value + 0.25 * sqrt_pi * ap * gr;
    p.bound = std::fabs(zc) * z2s.tail_bound + 0.25 * sqrt_pi * ap * gb;
    const double bpre = 0.5 * std::pow(a * a / pi, s) * reciprocal_gamma(s);
    if (bpre != 0.0) {
        const SeriesValue S = bessel_divisor_series(s, 2.0 * pi, false, 0.5 * tol / std::fabs(bpre));
        p.value += bpre * S.value;
        p.bound += std::fabs(bpre) * S.tail_bound;
    }
    return p;
}

// Hemi-equilateral, hypotenuse l:
//   1/12 (3l/(4pi))^{2s} [-4 zeta(2s) - 6 3^{-s} zeta(2s) + (same gamma and Bessel parts as above)]
Parts hemi_zeta(double l, double s, double tol) {
    const double pre = std::pow(3.0 * l / (4.0 * pi), 2.0 * s) / 12.0;
    Parts p = equilateral_bracket(s, tol / pre);
    const SeriesValue z2s = riemann_zeta(2.0 * s);
    const double extra = 6.0 * std::pow(3.0, -s);
    p.value -= extra * z2s.value;
    p.bound += extra * z2s.tail_bound;
    p.value *= pre;
    p.bound *= pre;
    return p;
}

// Eigenvalues kappa Q(i,j) over a subset of Z^2 with Q >= mu |(i,j)|^2.
// Counting lattice cells gives #{Q <= x} <= pi (sqrt(x/mu) + sqrt2/2)^2, and
// partial summation turns that into a bound on sum_{Q > X} Q^{-s}.
double lattice_tail_bound(double kappa, double mu, double X, double s) {
    const double c = std::sqrt(0.5);
    const double t = pi * s *
                     (std::pow(X, 1.0 - s) / (mu * (s - 1.0)) +
                      2.0 * c * std::pow(X, 0.5 - s) / (std::sqrt(mu) * (s - 0.5)) + c * c * std::pow(X, -s) / s);
    return std::pow(kappa, -s) * t;
}

}  // namespace

ZetaResult spectral_zeta(const ShapeSpec& shape, double s, double tol, ZetaMethod method) {
    if (method == ZetaMethod::DirectSum) return cross_check_spectral_zeta(shape, s, tol).direct;
    if (method != ZetaMethod::ChowlaSelberg) throw Unsupported("spectral zeta has no closed form method");
    check_s_range(s, true);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    Parts p;
    if (const auto* r = shape.get_if<Rectangle>()) {
        p = rectangle_zeta(r->a, r->b, s, tol);
    } else if (const auto* e = shape.get_if<EquilateralTriangle>()) {
        p = equilateral_zeta(e->l, s, tol);
    } else if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) {
        p = isosceles_zeta(t->a, s, tol);
    } else if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) {
        p = hemi_zeta(h->l, s, tol);
    } else {
        throw Unsupported("spectral zeta is implemented for the four integrable shapes");
    }
    return {p.value, p.bound, ZetaMethod::ChowlaSelberg, s};
}

ZetaCrossCheck cross_check_spectral_zeta(const ShapeSpec& shape, double s, double tol, double eigenvalues) {
    if (!(s > 1.001)) throw DomainError("direct summation needs s > 1");
    if (!shape.is_integrable()) throw Unsupported("spectral zeta is implemented for the four integrable shapes");
    ZetaCrossCheck out;
    out.chowla_selberg = spectral_zeta(shape, s, tol);

    const GeometrySummary g = summarize(shape);
    const double cutoff = 4.0 * pi * eigenvalues / g.area;
    const EigenvalueList list = enumerate(shape, BoundaryCondition::Dirichlet, cutoff);
    double acc = 0.0;
    for (auto it = list.entries.rbegin(); it != list.entries.rend(); ++it)
        acc += static_cast<double>(it->multiplicity) * std::pow(it->value, -s);

    double kappa = 0.0, mu = 0.0;
    if (const auto* r = shape.get_if<Rectangle>()) {
        kappa = pi * pi;
        mu = 1.0 / (std::max(r->a, r->b) * std::max(r->a, r->b));
    } else if (const auto* e = shape.get_if<EquilateralTriangle>()) {
        kappa = 16.0 * pi * pi / (9.0 * e->l * e->l);
        mu = 0.5;
    } else if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) {
        kappa = pi * pi / (t->a * t->a);
        mu = 1.0;
    } else if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) {
        kappa = 16.0 * pi * pi / (9.0 * h->l * h->l);
        mu = 0.5;
    }
    const double tail = lattice_tail_bound(kappa, mu, cutoff / kappa, s);
    out.direct = {acc, tail + 1e-15 * acc, ZetaMethod::DirectSum, s};
    out.agree = std::fabs(out.direct.value - out.chowla_selberg.value) <=
                out.direct.error_bound + out.chowla_selberg.error_bound +
                    4.0 * std::numeric_limits<double>::epsilon() * std::fabs(acc);
    return out;
}

ZetaPrimeZero zeta_prime_zero(const ShapeSpec& shape) {
    constexpr double tol = 1e-16;
    ZetaPrimeZero z;
    if (const auto* r = shape.get_if<Rectangle>()) {
        const double a = r->a, b = r->b;
        const SeriesValue S = divisor_weighted_sum(2.0 * pi * a / b, false, tol);
        const SeriesValue E = log_dedekind_eta_on_imaginary_axis(a / b, tol);
        z.series_form = {0.5 * std::log(2.0 * b) + pi * a / (12.0 * b) + S.value, S.tail_bound,
                         ZetaMethod::ClosedForm, 0.0};
        z.eta_form = {0.5 * std::log(2.0 * b) - E.value, E.tail_bound, ZetaMethod::ClosedForm, 0.0};
    } else if (const auto* e = shape.get_if<EquilateralTriangle>()) {
        const double l = e->l;
        const SeriesValue S = divisor_weighted_sum(pi * sqrt3, true, tol);
        const SeriesValue E = log_abs_eta_hexagonal(tol);
        z.series_form = {2.0 / 3.0 * std::log(1.5 * l) + pi * sqrt3 / 36.0 + 2.0 / 3.0 * S.value,
                         2.0 / 3.0 * S.tail_bound, ZetaMethod::ClosedForm, 0.0};
        z.eta_form = {2.0 / 3.0 * (std::log(1.5 * l) - E.value), 2.0 / 3.0 * E.tail_bound,
                      ZetaMethod::ClosedForm, 0.0};
    } else if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) {
        const double a = t->a;
        const SeriesValue S = divisor_weighted_sum(2.0 * pi, false, tol);
        const SeriesValue E = log_dedekind_eta_on_imaginary_axis(1.0, tol);
        const double L = std::log(4.0) + 3.0 * std::log(a);
        z.series_form = {L / 4.0 + pi / 24.0 + 0.5 * S.value, 0.5 * S.tail_bound, ZetaMethod::ClosedForm, 0.0};
        z.eta_form = {0.25 * (L - 2.0 * E.value), 0.5 * E.tail_bound, ZetaMethod::ClosedForm, 0.0};
    } else if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) {
        const double l = h->l;
        const SeriesValue S = divisor_weighted_sum(pi * sqrt3, true, tol);
        const SeriesValue E = log_abs_eta_hexagonal(tol);
        z.series_form = {5.0 / 6.0 * std::log(l / 2.0) + 7.0 / 12.0 * std::log(3.0) + pi * sqrt3 / 72.0 +
                             S.value / 3.0,
                         S.tail_bound / 3.0, ZetaMethod::ClosedForm, 0.0};
        z.eta_form = {(std::log(1.5 * l) - E.value) / 3.0 + 0.25 * std::log(3.0) + 0.5 * std::log(l / 2.0),
                      E.tail_bound / 3.0, ZetaMethod::ClosedForm, 0.0};
    } else {
        throw Unsupported("zeta'(0) closed forms exist for the four integrable shapes only");
    }
    z.difference = z.series_form.value - z.eta_form.value;
    const double scale = std::max(1.0, std::fabs(z.series_form.value));
    z.agree = std::fabs(z.difference) <=
              z.series_form.error_bound + z.eta_form.error_bound + 16.0 * std::numeric_limits<double>::epsilon() * scale;
    return z;
}

double determinant(const ShapeSpec& shape) { return std::exp(-zeta_prime_zero(shape).mean()); }

}  // namespace polyspec
