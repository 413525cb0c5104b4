#pragma once
// Epstein and spectral zeta functions, zeta'(0) and determinants.

#include <string>

#include "polyspec/shapes.hpp"

namespace polyspec {

// Q(m,n) = a m^2 + b mn + c n^2, positive definite.
class QuadraticForm {
public:
    QuadraticForm(double a, double b, double c);
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double discriminant() const { return 4.0 * a_ * c_ - b_ * b_; }
    double operator()(double m, double n) const { return a_ * m * m + b_ * m * n + c_ * n * n; }
    // Equivalent form with |b| <= a <= c (same Epstein zeta).
    QuadraticForm reduced() const;
    double min_eigenvalue() const;

private:
    double a_, b_, c_;
};

enum class ZetaMethod { DirectSum, ChowlaSelberg, ClosedForm };
std::string to_string(ZetaMethod m);

struct ZetaResult {
    double value = 0.0;
    double error_bound = 0.0;
    ZetaMethod method = ZetaMethod::ChowlaSelberg;
    double s = 0.0;
};

// The three parts of the Chowla-Selberg decomposition of sum' Q^{-s}:
//   2 zeta(2s) a^{-s}
// + 2^{2s} a^{s-1} sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) D^{s-1/2})
// + 2^{s+5/2} pi^s / (Gamma(s) sqrt(a) D^{s/2-1/4})
//     sum_N N^{s-1/2} sigma_{1-2s}(N) cos(pi N b/a) K_{s-1/2}(pi N sqrt(D)/a)
// with D = 4ac - b^2, for the form exactly as given.
struct ChowlaSelbergTerms {
    double zeta_term = 0.0;
    double gamma_term = 0.0;
    double bessel_term = 0.0;
    double error_bound = 0.0;
    long bessel_terms = 0;
};
ChowlaSelbergTerms chowla_selberg_terms(const QuadraticForm& q, double s, double tol = 1e-13);

// sum over (m,n) != (0,0) of Q(m,n)^{-s}; the form is reduced first.
ZetaResult epstein_zeta(const QuadraticForm& q, double s, double tol = 1e-13);

// Dirichlet spectral zeta function of one of the four integrable shapes.
// ChowlaSelberg covers s > -2 away from the poles s = 1, 1/2 and the
// removable points s = -1/2, -3/2; DirectSum needs s > 1.
ZetaResult spectral_zeta(const ShapeSpec& shape, double s, double tol = 1e-13,
                         ZetaMethod method = ZetaMethod::ChowlaSelberg);

struct ZetaCrossCheck {
    ZetaResult chowla_selberg;
    ZetaResult direct;
    bool agree = false;
};
// Both evaluations at s > 1; the direct sum enumerates about `eigenvalues`
// eigenvalues and bounds the rest.
ZetaCrossCheck cross_check_spectral_zeta(const ShapeSpec& shape, double s, double tol = 1e-13,
                                         double eigenvalues = 2e5);

struct ZetaPrimeZero {
    ZetaResult series_form;  // divisor-sum expression
    ZetaResult eta_form;     // Dedekind eta expression
    double difference = 0.0;
    bool agree = false;
    double mean() const { return 0.5 * (series_form.value + eta_form.value); }
};
ZetaPrimeZero zeta_prime_zero(const ShapeSpec& shape);

// e^{-zeta'(0)} from the mean of the two agreeing expressions.
double determinant(const ShapeSpec& shape);

}  // namespace polyspec
