#include "polyspec/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/zeta.hpp"

namespace polyspec {

using constants::pi;
using constants::sqrt3;
using constants::sqrt_pi;

std::string to_string(HeatMethod m) {
    switch (m) {
        case HeatMethod::Auto: return "auto";
        case HeatMethod::ThetaForm: return "theta";
        case HeatMethod::DirectEigenSum: return "eigsum";
        case HeatMethod::TransformedSeries: return "transformed";
    }
    return "?";
}

HeatMethod parse_heat_method(const std::string& s) {
    if (s == "auto") return HeatMethod::Auto;
    if (s == "theta") return HeatMethod::ThetaForm;
    if (s == "eigsum") return HeatMethod::DirectEigenSum;
    if (s == "transformed") return HeatMethod::TransformedSeries;
    throw std::invalid_argument("unknown heat method '" + s + "'");
}

namespace {

constexpr double kRateMerge = 1e-12;

// sum_{m>=1} exp(-c k(m)^2 / t) with k(m) = m, or 2m-1 when odd.
struct Single {
    double c;
    bool odd;
    double k(long m) const { return odd ? 2.0 * m - 1.0 : static_cast<double>(m); }
    double rate(long m) const { return c * k(m) * k(m); }
};

// coeff * t^t_power * first [* second]
struct Family {
    double coeff;
    double t_power;
    Single first;
    std::optional<Single> second;
};

struct PowerTerm {
    double coeff;
    double t_power;
};

struct Series {
    std::vector<PowerTerm> weyl;
    std::vector<Family> families;
};

Single S(double c) { return {c, false}; }
Single Sodd(double c) { return {c, true}; }

Series dirichlet_series(const ShapeSpec& shape) {
    Series s;
    if (const auto* r = shape.get_if<Rectangle>()) {
        const double a = r->a, b = r->b;
        s.weyl = {{a * b / (4.0 * pi), -1.0}, {-(a + b) / (4.0 * sqrt_pi), -0.5}, {0.25, 0.0}};
        s.families = {{a * b / (2.0 * pi), -1.0, S(a * a), {}},
                      {a * b / (2.0 * pi), -1.0, S(b * b), {}},
                      {-a / (2.0 * sqrt_pi), -0.5, S(a * a), {}},
                      {-b / (2.0 * sqrt_pi), -0.5, S(b * b), {}},
                      {a * b / pi, -1.0, S(a * a), S(b * b)}};
    } else if (const auto* e = shape.get_if<EquilateralTriangle>()) {
        const double l = e->l, l2 = l * l;
        s.weyl = {{sqrt3 * l2 / (16.0 * pi), -1.0}, {-3.0 * l / (8.0 * sqrt_pi), -0.5}, {1.0 / 3.0, 0.0}};
        s.families = {{-3.0 * l / (4.0 * sqrt_pi), -0.5, S(9.0 * l2 / 16.0), {}},
                      {sqrt3 * l2 / (8.0 * pi), -1.0, S(0.75 * l2), {}},
                      {sqrt3 * l2 / (8.0 * pi), -1.0, S(2.25 * l2), {}},
                      {sqrt3 * l2 / (4.0 * pi), -1.0, S(2.25 * l2), S(0.75 * l2)},
                      {sqrt3 * l2 / (4.0 * pi), -1.0, Sodd(9.0 * l2 / 16.0), Sodd(3.0 * l2 / 16.0)}};
    } else if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) {
        const double a = t->a, a2 = a * a;
        s.weyl = {{a2 / (8.0 * pi), -1.0}, {-a * (2.0 + std::sqrt(2.0)) / (8.0 * sqrt_pi), -0.5}, {0.375, 0.0}};
        s.families = {{a2 / (2.0 * pi), -1.0, S(a2), {}},
                      {-a / (2.0 * sqrt_pi), -0.5, S(a2), {}},
                      {a2 / (2.0 * pi), -1.0, S(a2), S(a2)},
                      {-a / (2.0 * std::sqrt(2.0 * pi)), -0.5, S(0.5 * a2), {}}};
    } else if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) {
        const double l = h->l, l2 = l * l;
        s.weyl = {{sqrt3 * l2 / (32.0 * pi), -1.0},
                  {-l * (3.0 + sqrt3) / (16.0 * sqrt_pi), -0.5},
                  {5.0 / 12.0, 0.0}};
        s.families = {{-l * sqrt3 / (8.0 * sqrt_pi), -0.5, S(3.0 * l2 / 16.0), {}},
                      {-3.0 * l / (8.0 * sqrt_pi), -0.5, S(9.0 * l2 / 16.0), {}},
                      {sqrt3 * l2 / (16.0 * pi), -1.0, S(0.75 * l2), {}},
                      {sqrt3 * l2 / (16.0 * pi), -1.0, S(2.25 * l2), {}},
                      {sqrt3 * l2 / (8.0 * pi), -1.0, S(2.25 * l2), S(0.75 * l2)},
                      {sqrt3 * l2 / (8.0 * pi), -1.0, Sodd(9.0 * l2 / 16.0), Sodd(3.0 * l2 / 16.0)}};
    } else {
        throw Unsupported("transformed series exist for the four integrable shapes");
    }
    return s;
}

// Neumann flips the sign of every t^{-1/2} term.
Series transformed_series(const ShapeSpec& shape, BoundaryCondition bc) {
    Series s = dirichlet_series(shape);
    if (bc == BoundaryCondition::Neumann) {
        for (auto& w : s.weyl)
            if (w.t_power == -0.5) w.coeff = -w.coeff;
        for (auto& f : s.families)
            if (f.t_power == -0.5) f.coeff = -f.coeff;
    }
    return s;
}

// sum over m >= 1 with rate(m) > thr of exp(-(rate(m) - r0)/t), stopping
// once the geometric tail bound is below rel_tol times the partial sum.
SeriesValue single_sum(const Single& s, double t, double thr, double r0, double rel_tol) {
    long m = 1;
    if (thr >= 0.0) {
        const double kmin = std::sqrt(thr / s.c);
        m = std::max(1L, static_cast<long>(s.odd ? std::floor((kmin + 1.0) / 2.0) : std::floor(kmin)));
        while (s.rate(m) <= thr) ++m;
    }
    double acc = 0.0;
    std::vector<double> terms;
    for (;; ++m) {
        const double term = std::exp(-(s.rate(m) - r0) / t);
        terms.push_back(term);
        acc += term;
        const double next = std::exp(-(s.rate(m + 1) - r0) / t);
        const double ratio = std::exp(-(s.rate(m + 2) - s.rate(m + 1)) / t);
        const double tail = next / (1.0 - ratio);
        if (tail <= rel_tol * acc || (acc == 0.0 && next == 0.0)) {
            double sum = 0.0;
            for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
            return {sum, tail, static_cast<long>(terms.size())};
        }
        if (terms.size() > 100000) throw DomainError("theta-type sum did not converge");
    }
}

// The smallest rate above thr in a family.
double min_rate(const Family& f, double thr) {
    auto first_above = [](const Single& s, double th) {
        if (th < 0.0) return s.rate(1);
        long m = std::max(1L, static_cast<long>(std::sqrt(th / s.c) / (s.odd ? 2.0 : 1.0)));
        while (s.rate(m) <= th) ++m;
        return s.rate(m);
    };
    if (!f.second) return first_above(f.first, thr);
    double best = std::numeric_limits<double>::infinity();
    for (long m1 = 1;; ++m1) {
        const double ra = f.first.rate(m1);
        if (ra > best) break;
        best = std::min(best, ra + first_above(*f.second, thr - ra));
    }
    return best;
}

SeriesValue family_sum(const Family& f, double t, double thr, double r0, double rel_tol) {
    if (!f.second) return single_sum(f.first, t, thr, r0, rel_tol);
    const Single& A = f.first;
    const Single& B = *f.second;
    // sum_{m2>=1} exp(-(rate_B(m2) - rate_B(1))/t), for bounding the outer tail
    const SeriesValue Bhat = single_sum(B, t, -1.0, B.rate(1), 1e-3);
    double acc = 0.0, bound = 0.0;
    std::vector<double> parts;
    for (long m1 = 1;; ++m1) {
        const double ra = A.rate(m1);
        const SeriesValue inner = single_sum(B, t, thr - ra, r0 - ra, rel_tol);
        parts.push_back(inner.value);
        acc += inner.value;
        bound += inner.tail_bound;
        const double ra_next = A.rate(m1 + 1);
        if (ra_next > thr) {
            const double ratio = std::exp(-(A.rate(m1 + 2) - ra_next) / t);
            const double tail = std::exp(-(ra_next + B.rate(1) - r0) / t) * (Bhat.value + Bhat.tail_bound) /
                                (1.0 - ratio);
            if (tail <= rel_tol * acc || (acc == 0.0 && tail == 0.0)) {
                bound += tail;
                break;
            }
        }
        if (m1 > 100000) throw DomainError("double theta-type sum did not converge");
    }
    double sum = 0.0;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) sum += *it;
    return {sum, bound, static_cast<long>(parts.size())};
}

double min_side(const ShapeSpec& shape) {
    if (const auto* r = shape.get_if<Rectangle>()) return std::min(r->a, r->b);
    if (const auto* e = shape.get_if<EquilateralTriangle>()) return e->l;
    if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) return t->a;
    if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) return h->l;
    if (const auto* b = shape.get_if<Box>()) return *std::min_element(b->dims.begin(), b->dims.end());
    throw Unsupported("heat traces are implemented for the integrable shapes and boxes");
}

void check_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t must be positive and finite");
}

HeatTraceValue transformed_value(const ShapeSpec& shape, BoundaryCondition bc, double t) {
    const Series s = transformed_series(shape, bc);
    double value = 0.0, magnitude = 0.0;
    for (const auto& w : s.weyl) {
        value += w.coeff * std::pow(t, w.t_power);
        magnitude += std::fabs(w.coeff * std::pow(t, w.t_power));
    }
    double bound = 0.0;
    // Add the smallest contributions first.
    std::vector<double> parts;
    for (const auto& f : s.families) {
        const SeriesValue v = family_sum(f, t, -1.0, 0.0, 1e-17);
        const double scale = f.coeff * std::pow(t, f.t_power);
        parts.push_back(scale * v.value);
        bound += std::fabs(scale) * v.tail_bound;
    }
    std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
    double fam = 0.0;
    for (double p : parts) {
        fam += p;
        magnitude += std::fabs(p);
    }
    value += fam;
    bound += 8.0 * std::numeric_limits<double>::epsilon() * magnitude;
    return {t, value, HeatMethod::TransformedSeries, bound};
}

struct ThetaPart {
    double v;
    double e;
};
ThetaPart t3m1(double rate, double tol) {
    const SeriesValue s = theta3_minus_one(Nome::from_rate(rate), tol);
    return {s.value, s.tail_bound};
}
ThetaPart t2(double rate, double tol) {
    const SeriesValue s = theta2(Nome::from_rate(rate), tol);
    return {s.value, s.tail_bound};
}

HeatTraceValue theta_value(const ShapeSpec& shape, BoundaryCondition bc, double t, double tol) {
    const bool dir = bc == BoundaryCondition::Dirichlet;
    const double ptol = 0.05 * tol;
    double value = 0.0, bound = 0.0;
    double magnitude = 0.0;  // size of the cancelling parts, for rounding
    if (const auto* r = shape.get_if<Rectangle>()) {
        const ThetaPart ua = t3m1(pi * pi * t / (r->a * r->a), ptol);
        const ThetaPart ub = t3m1(pi * pi * t / (r->b * r->b), ptol);
        const double shift = dir ? 0.0 : 2.0;
        value = (ua.v + shift) * (ub.v + shift) / 4.0;
        bound = (ua.e * std::fabs(ub.v + shift) + ub.e * std::fabs(ua.v + shift) + ua.e * ub.e) / 4.0;
        magnitude = std::fabs(value);
    } else if (shape.get_if<EquilateralTriangle>() || shape.get_if<HemiEquilateralTriangle>()) {
        const bool hemi = shape.get_if<HemiEquilateralTriangle>() != nullptr;
        const double l = hemi ? shape.get_if<HemiEquilateralTriangle>()->l : shape.get_if<EquilateralTriangle>()->l;
        const double x = 16.0 * pi * pi * t / (9.0 * l * l);
        const ThetaPart u = t3m1(x, ptol), w = t3m1(3.0 * x, ptol);
        const ThetaPart p = t2(x, ptol), p3 = t2(3.0 * x, ptol);
        const double cross = p.v * p3.v;
        const double cross_e = p.e * std::fabs(p3.v) + p3.e * std::fabs(p.v) + p.e * p3.e;
        const double uw_e = u.e * std::fabs(w.v) + w.e * std::fabs(u.v) + u.e * w.e;
        magnitude = 1.0 + std::fabs(u.v) + std::fabs(w.v) + cross;
        if (!hemi) {
            // (Theta3(q) Theta3(q^3) + Theta2(q) Theta2(q^3) - 3 Theta3(q) + 2)/6
            const double hd = (u.v * w.v + w.v - 2.0 * u.v + cross) / 6.0;
            const double hd_e = (uw_e + w.e + 2.0 * u.e + cross_e) / 6.0;
            value = dir ? hd : 1.0 + u.v + hd;
            bound = dir ? hd_e : hd_e + u.e;
        } else {
            // (... - 3 Theta3(q) - 3 Theta3(q^3) + 5)/12
            const double hd = (u.v * w.v - 2.0 * u.v - 2.0 * w.v + cross) / 12.0;
            const double hd_e = (uw_e + 2.0 * u.e + 2.0 * w.e + cross_e) / 12.0;
            value = dir ? hd : 1.0 + 0.5 * (u.v + w.v) + hd;
            bound = dir ? hd_e : hd_e + 0.5 * (u.e + w.e);
        }
    } else if (const auto* i = shape.get_if<IsoscelesRightTriangle>()) {
        const double x = pi * pi * t / (i->a * i->a);
        const ThetaPart u = t3m1(x, ptol), v = t3m1(2.0 * x, ptol);
        const double hd = (u.v * u.v - 2.0 * v.v) / 8.0;
        const double hd_e = (2.0 * u.e * std::fabs(u.v) + u.e * u.e + 2.0 * v.e) / 8.0;
        magnitude = 1.0 + u.v * u.v + std::fabs(u.v) + std::fabs(v.v);
        value = dir ? hd : 1.0 + 0.5 * (u.v + v.v) + hd;
        bound = dir ? hd_e : hd_e + 0.5 * (u.e + v.e);
    } else {
        throw Unsupported("theta form not available for this shape");
    }
    if (dir) magnitude -= 1.0;  // the Neumann constant 1 is not present
    bound += 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(value), magnitude);
    return {t, value, HeatMethod::ThetaForm, bound};
}

// Eigenvalues are kappa Q(i,j) with Q >= mu |(i,j)|^2.
struct LatticeScale {
    double kappa;
    double mu;
};
LatticeScale lattice_scale(const ShapeSpec& shape) {
    if (const auto* r = shape.get_if<Rectangle>()) {
        const double m = std::max(r->a, r->b);
        return {pi * pi, 1.0 / (m * m)};
    }
    if (const auto* e = shape.get_if<EquilateralTriangle>()) return {16.0 * pi * pi / (9.0 * e->l * e->l), 0.5};
    if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) return {pi * pi / (t->a * t->a), 1.0};
    if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) return {16.0 * pi * pi / (9.0 * h->l * h->l), 0.5};
    throw Unsupported("no lattice description for this shape");
}

// sum_{Q > X} exp(-beta Q) with #{Q <= x} <= pi (sqrt(x/mu) + c)^2, c = sqrt2/2.
double gaussian_count_tail(double beta, double mu, double X) {
    const double c = std::sqrt(0.5);
    const double e = std::exp(-beta * X);
    return pi * e *
           ((X + 1.0 / beta) / mu + 2.0 * c / std::sqrt(mu) * (2.0 * X + 1.0 / beta) / (2.0 * std::sqrt(X)) + c * c);
}

HeatTraceValue direct_value(const ShapeSpec& shape, BoundaryCondition bc, double t, double tol) {
    const LatticeScale ls = lattice_scale(shape);
    const double beta = ls.kappa * t;
    double X = 1.0 / beta;
    double tail = gaussian_count_tail(beta, ls.mu, X);
    for (double L = 5.0; tail > 0.5 * tol; L += 1.0) {
        X = L / beta;
        tail = gaussian_count_tail(beta, ls.mu, X);
    }
    const EigenvalueList list = enumerate(shape, bc, ls.kappa * X * (1.0 + 1e-12));
    double acc = 0.0;
    for (auto it = list.entries.rbegin(); it != list.entries.rend(); ++it)
        acc += static_cast<double>(it->multiplicity) * std::exp(-it->value * t);
    const double bound = tail + 8.0 * std::numeric_limits<double>::epsilon() * acc;
    return {t, acc, HeatMethod::DirectEigenSum, bound};
}

// One side of a box: sum over m >= 1 (Dirichlet) or m >= 0 (Neumann) of exp(-pi^2 m^2 t/a^2).
struct Factor {
    double v;
    double e;
};
Factor box_factor(double a, BoundaryCondition bc, double t, HeatMethod method, double tol) {
    const bool dir = bc == BoundaryCondition::Dirichlet;
    switch (method) {
        case HeatMethod::ThetaForm: {
            const SeriesValue u = theta3_minus_one(Nome::from_rate(pi * pi * t / (a * a)), tol);
            return {(u.value + (dir ? 0.0 : 2.0)) / 2.0, u.tail_bound / 2.0};
        }
        case HeatMethod::DirectEigenSum: {
            const SeriesValue s = single_sum(S(pi * pi * t / (a * a)), 1.0, -1.0, 0.0, 1e-17);
            return {s.value + (dir ? 0.0 : 1.0), s.tail_bound};
        }
        case HeatMethod::TransformedSeries: {
            // (A (1 + 2 S) -+ 1)/2, A = a/sqrt(pi t), S = sum exp(-a^2 m^2 / t)
            const double A = a / std::sqrt(pi * t);
            const SeriesValue s = single_sum(S(a * a), t, -1.0, 0.0, 1e-17);
            return {(A * (1.0 + 2.0 * s.value) + (dir ? -1.0 : 1.0)) / 2.0, A * s.tail_bound};
        }
        case HeatMethod::Auto: break;
    }
    throw std::logic_error("unresolved heat method");
}

HeatTraceValue box_value(const std::vector<double>& dims, BoundaryCondition bc, double t, HeatMethod method,
                         double tol) {
    double value = 1.0, bound = 0.0;
    for (double a : dims) {
        const Factor f = box_factor(a, bc, t, method, tol / (4.0 * static_cast<double>(dims.size())));
        bound = bound * std::fabs(f.v) + f.e * std::fabs(value) + bound * f.e;
        value *= f.v;
    }
    bound += 8.0 * static_cast<double>(dims.size()) * std::numeric_limits<double>::epsilon() * std::fabs(value);
    return {t, value, method, bound};
}

void check_box(const std::vector<double>& dims) {
    if (dims.empty()) throw DomainError("box needs at least one dimension");
    if (dims.size() > 16) throw Unsupported("boxes of dimension above 16 are not supported");
    for (double a : dims)
        if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("box dimensions must be positive");
}

struct Entry {
    double rate;
    double coeff;
    double t_power;
};

// Every exponential term coeff t^p exp(-rate/t) of the families with indices
// up to n; the n smallest distinct rates are complete in this list because
// each rate increases in every index.
std::vector<Entry> family_entries(const Series& s, int n) {
    std::vector<Entry> out;
    for (const auto& f : s.families) {
        for (long m1 = 1; m1 <= n; ++m1) {
            if (!f.second) {
                out.push_back({f.first.rate(m1), f.coeff, f.t_power});
                continue;
            }
            for (long m2 = 1; m2 <= n; ++m2)
                out.push_back({f.first.rate(m1) + f.second->rate(m2), f.coeff, f.t_power});
        }
    }
    std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) { return x.rate < y.rate; });
    return out;
}

bool same_rate(double x, double y) { return std::fabs(x - y) <= kRateMerge * std::max(x, y); }

// Distinct rates in ascending order (first n).
std::vector<double> level_rates(const std::vector<Entry>& entries, int n) {
    std::vector<double> levels;
    for (const auto& e : entries) {
        if (!levels.empty() && same_rate(levels.back(), e.rate)) continue;
        if (static_cast<int>(levels.size()) == n) break;
        levels.push_back(e.rate);
    }
    return levels;
}

double sharp_rate_of(const ShapeSpec& shape) {
    const GeometrySummary g = summarize(shape);
    const double L = g.shortest_geodesic.value_or(0.0);
    return 0.25 * L * L;
}

// Elementary symmetric polynomials e_0..e_n of xs.
std::vector<double> elementary_symmetric(const std::vector<double>& xs) {
    std::vector<double> e(xs.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * xs[i];
    return e;
}

HeatExpansion box_expansion(const std::vector<double>& dims, BoundaryCondition bc) {
    // 2^{-n} prod (a_j/sqrt(pi t) -+ 1)
    const std::size_t n = dims.size();
    std::vector<double> scaled;
    for (double a : dims) scaled.push_back(a / sqrt_pi);
    const std::vector<double> e = elementary_symmetric(scaled);
    const double sgn = bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
    HeatExpansion ex;
    ex.bc = bc;
    ex.levels = 0;
    ex.sharp_rate = *std::min_element(dims.begin(), dims.end());
    ex.sharp_rate *= ex.sharp_rate;
    for (std::size_t k = n + 1; k-- > 0;) {
        const double coeff = std::ldexp(std::pow(sgn, static_cast<double>(n - k)) * e[k], -static_cast<int>(n));
        ex.terms.push_back({coeff, k == 0 ? 0.0 : -0.5 * static_cast<double>(k), 0.0});
    }
    ex.constant_term = Rational((n % 2 == 1 && sgn < 0) ? -1 : 1, std::int64_t{1} << n);
    return ex;
}

struct Signed {
    int sign;
    double log_abs;
};

// log of |sum_i sign_i exp(l_i)| with max factoring.
Signed log_sum(const std::vector<Signed>& xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& x : xs)
        if (x.sign != 0) mx = std::max(mx, x.log_abs);
    if (!std::isfinite(mx)) return {0, -std::numeric_limits<double>::infinity()};
    double acc = 0.0;
    for (const auto& x : xs)
        if (x.sign != 0) acc += x.sign * std::exp(x.log_abs - mx);
    if (acc == 0.0) return {0, -std::numeric_limits<double>::infinity()};
    return {acc > 0.0 ? 1 : -1, mx + std::log(std::fabs(acc))};
}

RemainderValue make_remainder(double t, Signed s, double rel) {
    RemainderValue r;
    r.t = t;
    r.sign = s.sign;
    r.log_abs = s.log_abs;
    r.value = s.sign == 0 ? 0.0 : s.sign * std::exp(s.log_abs);
    r.relative_bound = rel;
    return r;
}

RemainderValue box_remainder(const std::vector<double>& dims, BoundaryCondition bc, double t) {
    // prod (L_j + E_j) - prod L_j with L_j = (A_j -+ 1)/2, E_j = A_j S_j
    const std::size_t n = dims.size();
    std::vector<Signed> L(n), E(n);
    double rel = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = dims[j];
        const double A = a / std::sqrt(pi * t);
        const double Lv = (A + (bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0)) / 2.0;
        L[j] = {Lv > 0.0 ? 1 : (Lv < 0.0 ? -1 : 0), std::log(std::fabs(Lv))};
        const SeriesValue Sh = single_sum(S(a * a), t, -1.0, a * a, 1e-17);
        E[j] = {1, std::log(A) - a * a / t + std::log(Sh.value)};
        rel = std::max(rel, Sh.tail_bound / Sh.value);
    }
    std::vector<Signed> parts;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Signed p{1, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const Signed& f = (mask >> j & 1u) ? E[j] : L[j];
            p.sign *= f.sign;
            p.log_abs += f.log_abs;
        }
        if (p.sign != 0) parts.push_back(p);
    }
    return make_remainder(t, log_sum(parts), static_cast<double>(n) * rel + 1e-15);
}

RateFit fit_points(const std::vector<RemainderValue>& rs, double p, double expected) {
    if (rs.size() < 3) throw DomainError("rate fit needs at least three grid points");
    RateFit fit;
    fit.t_power = p;
    fit.expected = expected;
    double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (const auto& r : rs) {
        if (r.sign == 0) throw DomainError("remainder vanished on the grid");
        RatePoint pt;
        pt.t = r.t;
        pt.minus_t_log_r = -r.t * r.log_abs;
        pt.corrected = pt.minus_t_log_r + p * r.t * std::log(r.t);
        if (!fit.points.empty()) {
            const RatePoint& q = fit.points.back();
            // line through the two corrected points, evaluated at t = 0
            pt.c_point = (pt.corrected * q.t - q.corrected * pt.t) / (q.t - pt.t);
        } else {
            pt.c_point = pt.corrected;
        }
        fit.points.push_back(pt);
        const double x = -r.t;
        s1 += 1;
        sx += x;
        sxx += x * x;
        sy += pt.corrected;
        sxy += x * pt.corrected;
    }
    const double det = s1 * sxx - sx * sx;
    fit.c_hat = (sxx * sy - sx * sxy) / det;
    fit.log_prefactor = (s1 * sxy - sx * sy) / det;
    return fit;
}

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 3) throw DomainError("rate fit needs at least three grid points");
    for (double t : grid)
        if (!(t > 0.0 && t <= 0.2)) throw DomainError("rate fit grid must lie in (0, 0.2]");
}

// Gram matrix G = B B^T of the row basis.
std::array<double, 3> gram(const LatticeBasis& B) {
    return {B[0][0] * B[0][0] + B[0][1] * B[0][1], B[0][0] * B[1][0] + B[0][1] * B[1][1],
            B[1][0] * B[1][0] + B[1][1] * B[1][1]};
}

double lattice_volume(const LatticeBasis& B) {
    const double v = std::fabs(B[0][0] * B[1][1] - B[0][1] * B[1][0]);
    const double scale = std::max({std::fabs(B[0][0]), std::fabs(B[0][1]), std::fabs(B[1][0]), std::fabs(B[1][1])});
    if (!(v > 1e-12 * scale * scale)) throw DomainError("lattice basis is singular");
    return v;
}

double gram_min_eigenvalue(const std::array<double, 3>& g) {
    const double tr = g[0] + g[2], det = g[0] * g[2] - g[1] * g[1];
    return det / (0.5 * tr + std::sqrt(std::max(0.0, 0.25 * tr * tr - det)));
}

// Tail of sum exp(-beta |k|^2) over integer points with |k| > R.
double gaussian_lattice_tail(double beta, double R) {
    const double c = std::sqrt(0.5);
    const double e = std::exp(-beta * R * R);
    return pi * ((R * R + 1.0 / beta) * e +
                 2.0 * c * (R * e + 0.5 * std::sqrt(pi / beta) * std::erfc(std::sqrt(beta) * R)) + c * c * e);
}

// sum over k in Z^2 (optionally excluding 0) of exp(-alpha (k^T G k - shift)).
SeriesValue gaussian_lattice_sum(const std::array<double, 3>& g, double alpha, double shift, bool skip_zero,
                                 double tol) {
    const double beta = alpha * gram_min_eigenvalue(g);
    double R = 1.0;
    while (std::exp(alpha * shift) * gaussian_lattice_tail(beta, R) > tol) R += 0.5;
    const long M = static_cast<long>(std::ceil(R));
    std::vector<double> terms;
    for (long m = -M; m <= M; ++m)
        for (long n = -M; n <= M; ++n) {
            if (skip_zero && m == 0 && n == 0) continue;
            const double q = g[0] * m * m + 2.0 * g[1] * m * n + g[2] * n * n;
            terms.push_back(std::exp(-alpha * (q - shift)));
        }
    std::sort(terms.begin(), terms.end());
    double acc = 0.0;
    for (double x : terms) acc += x;
    return {acc, std::exp(alpha * shift) * gaussian_lattice_tail(beta, R), static_cast<long>(terms.size())};
}

}  // namespace

HeatTraceValue heat_trace(const ShapeSpec& shape, BoundaryCondition bc, double t, HeatMethod method, double tol) {
    check_t(t);
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    const double side = min_side(shape);
    if (method == HeatMethod::Auto)
        method = t >= side * side / 8.0 ? HeatMethod::ThetaForm : HeatMethod::TransformedSeries;
    if (const auto* b = shape.get_if<Box>()) {
        check_box(b->dims);
        return box_value(b->dims, bc, t, method, tol);
    }
    switch (method) {
        case HeatMethod::ThetaForm: return theta_value(shape, bc, t, tol);
        case HeatMethod::DirectEigenSum: return direct_value(shape, bc, t, tol);
        case HeatMethod::TransformedSeries: return transformed_value(shape, bc, t);
        case HeatMethod::Auto: break;
    }
    throw std::logic_error("unresolved heat method");
}

HeatTraceValue box_heat_trace(const std::vector<double>& dims, BoundaryCondition bc, double t, double tol) {
    check_box(dims);
    return heat_trace(ShapeSpec::box(dims), bc, t, HeatMethod::Auto, tol);
}

HeatExpansion expansion(const ShapeSpec& shape, BoundaryCondition bc, int order) {
    if (order < 0) throw DomainError("expansion order must be non-negative");
    if (const auto* b = shape.get_if<Box>()) {
        check_box(b->dims);
        if (order > 0) throw Unsupported("box expansions carry the power terms only");
        return box_expansion(b->dims, bc);
    }
    const Series s = transformed_series(shape, bc);
    HeatExpansion ex;
    ex.bc = bc;
    ex.levels = order;
    ex.sharp_rate = sharp_rate_of(shape);
    const auto exact = corner_constant(summarize(shape)).exact;
    if (!exact) throw std::logic_error("integrable shape without exact angles");
    ex.constant_term = *exact;
    for (const auto& w : s.weyl) ex.terms.push_back({w.coeff, w.t_power, 0.0});

    const std::vector<Entry> entries = family_entries(s, order);
    const std::vector<double> levels = level_rates(entries, order);
    for (double level : levels) {
        std::vector<HeatTerm> at;
        for (const auto& e : entries) {
            if (!same_rate(e.rate, level)) continue;
            auto it = std::find_if(at.begin(), at.end(), [&](const HeatTerm& h) { return h.t_power == e.t_power; });
            if (it == at.end())
                at.push_back({e.coeff, e.t_power, level});
            else
                it->coeff += e.coeff;
        }
        ex.terms.insert(ex.terms.end(), at.begin(), at.end());
    }
    std::stable_sort(ex.terms.begin(), ex.terms.end(), [](const HeatTerm& x, const HeatTerm& y) {
        return x.exp_rate != y.exp_rate ? x.exp_rate < y.exp_rate : x.t_power < y.t_power;
    });
    return ex;
}

RemainderValue remainder(const ShapeSpec& shape, BoundaryCondition bc, double t, int k_levels, double tol) {
    check_t(t);
    if (k_levels < 0) throw DomainError("k_levels must be non-negative");
    if (const auto* b = shape.get_if<Box>()) {
        check_box(b->dims);
        if (k_levels > 0) throw Unsupported("box remainders are taken after the power terms only");
        return box_remainder(b->dims, bc, t);
    }
    const Series s = transformed_series(shape, bc);
    double thr = -1.0;
    if (k_levels > 0) {
        const std::vector<double> levels = level_rates(family_entries(s, k_levels), k_levels);
        thr = levels.back() * (1.0 + kRateMerge);
    }
    double r0 = std::numeric_limits<double>::infinity();
    for (const auto& f : s.families) r0 = std::min(r0, min_rate(f, thr));

    std::vector<Signed> parts;
    double abs_sum = 0.0, err = 0.0;
    std::vector<double> scaled;
    for (const auto& f : s.families) {
        const SeriesValue v = family_sum(f, t, thr, r0, tol);
        const double c = f.coeff * std::pow(t, f.t_power);
        scaled.push_back(c * v.value);
        abs_sum += std::fabs(c * v.value);
        err += std::fabs(c) * v.tail_bound;
    }
    std::sort(scaled.begin(), scaled.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
    double total = 0.0;
    for (double x : scaled) total += x;
    Signed out{0, -std::numeric_limits<double>::infinity()};
    if (total != 0.0) out = {total > 0.0 ? 1 : -1, -r0 / t + std::log(std::fabs(total))};
    const double rel = total != 0.0 ? (err + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum) / std::fabs(total)
                                    : std::numeric_limits<double>::infinity();
    return make_remainder(t, out, rel);
}

RateFit fit_sharp_rate(const ShapeSpec& shape, BoundaryCondition bc, const std::vector<double>& t_grid) {
    check_grid(t_grid);
    double p = 0.0;
    double expected = 0.0;
    if (const auto* b = shape.get_if<Box>()) {
        check_box(b->dims);
        p = -0.5 * static_cast<double>(b->dims.size());
        expected = box_expansion(b->dims, bc).sharp_rate;
    } else {
        const HeatExpansion ex = expansion(shape, bc, 1);
        p = std::numeric_limits<double>::infinity();
        for (const auto& term : ex.terms)
            if (term.exp_rate > 0.0 && term.coeff != 0.0) p = std::min(p, term.t_power);
        expected = ex.sharp_rate;
    }
    std::vector<RemainderValue> rs;
    for (double t : t_grid) rs.push_back(remainder(shape, bc, t, 0));
    return fit_points(rs, p, expected);
}

ShortestVectors torus_shortest_vectors(const LatticeBasis& basis) {
    ShortestVectors out;
    out.volume = lattice_volume(basis);
    const auto g = gram(basis);
    const double qmin = QuadraticForm(g[0], 2.0 * g[1], g[2]).reduced().a();
    const long M = static_cast<long>(std::ceil(std::sqrt(qmin / gram_min_eigenvalue(g)))) + 1;
    for (long m = -M; m <= M; ++m)
        for (long n = -M; n <= M; ++n) {
            if (m == 0 && n == 0) continue;
            const double q = g[0] * m * m + 2.0 * g[1] * m * n + g[2] * n * n;
            if (q <= qmin * (1.0 + 1e-12)) ++out.multiplicity;
        }
    out.length = std::sqrt(qmin);
    return out;
}

TorusHeatTrace torus_heat_trace(const LatticeBasis& basis, double t, double tol) {
    check_t(t);
    const double vol = lattice_volume(basis);
    const auto g = gram(basis);
    // dual Gram matrix G^{-1}
    const double det = g[0] * g[2] - g[1] * g[1];
    const std::array<double, 3> gd = {g[2] / det, -g[1] / det, g[0] / det};
    const SeriesValue eig = gaussian_lattice_sum(gd, 4.0 * pi * pi * t, 0.0, false, 0.25 * tol);
    const double pre = vol / (4.0 * pi * t);
    const SeriesValue lat = gaussian_lattice_sum(g, 1.0 / (4.0 * t), 0.0, false, 0.25 * tol / pre);
    TorusHeatTrace out;
    out.t = t;
    out.eigen_side = eig.value;
    out.lattice_side = pre * lat.value;
    out.tail_bound = eig.tail_bound + pre * lat.tail_bound;
    const double rounding = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(eig.value));
    out.agree = std::fabs(out.eigen_side - out.lattice_side) <= std::max(tol, out.tail_bound + rounding);
    return out;
}

RemainderValue torus_remainder(const LatticeBasis& basis, double t) {
    check_t(t);
    const double vol = lattice_volume(basis);
    const auto g = gram(basis);
    const double qmin = torus_shortest_vectors(basis).length;
    const SeriesValue s = gaussian_lattice_sum(g, 1.0 / (4.0 * t), qmin * qmin, true, 1e-17);
    const Signed out{1, std::log(vol / (4.0 * pi * t)) - qmin * qmin / (4.0 * t) + std::log(s.value)};
    return make_remainder(t, out, s.tail_bound / s.value);
}

RateFit fit_torus_rate(const LatticeBasis& basis, const std::vector<double>& t_grid) {
    check_grid(t_grid);
    std::vector<RemainderValue> rs;
    for (double t : t_grid) rs.push_back(torus_remainder(basis, t));
    const double L = torus_shortest_vectors(basis).length;
    return fit_points(rs, -1.0, 0.25 * L * L);
}

}  // namespace polyspec
