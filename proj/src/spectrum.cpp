#include "polyspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "polyspec/errors.hpp"
#include "polyspec/special_fn.hpp"

namespace polyspec {

using constants::pi;
using constants::sqrt3;

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

BoundaryCondition parse_boundary_condition(const std::string& s) {
    if (s == "dirichlet" || s == "D") return BoundaryCondition::Dirichlet;
    if (s == "neumann" || s == "N") return BoundaryCondition::Neumann;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

std::int64_t EigenvalueList::total_count() const {
    std::int64_t c = 0;
    for (const auto& e : entries) c += e.multiplicity;
    return c;
}

namespace {

// Values within this relative distance above the cutoff are kept, so a
// cutoff that equals an eigenvalue up to rounding includes it.
constexpr double kCutoffSlack = 1e-13;

void check_pair_budget(double pairs, std::size_t max_pairs) {
    if (pairs > static_cast<double>(max_pairs))
        throw DomainError("cutoff implies more than " + std::to_string(max_pairs) + " index pairs");
}

// Run-length merge of integer keys into eigenvalues prefactor * key.
std::vector<Eigenvalue> merge_keys(std::vector<std::int64_t> keys, double prefactor) {
    std::sort(keys.begin(), keys.end());
    std::vector<Eigenvalue> out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        out.push_back({prefactor * static_cast<double>(keys[i]), static_cast<std::int64_t>(j - i), keys[i]});
        i = j;
    }
    return out;
}

std::int64_t key_limit(double cutoff, double prefactor) {
    return static_cast<std::int64_t>(std::floor(cutoff / prefactor * (1.0 + kCutoffSlack)));
}

// Triangle index sets over an integer quadratic form.
enum class Order { Square, StrictlyDecreasing, Decreasing };

template <class Form>
std::vector<std::int64_t> triangle_keys(Form form, double min_eig, std::int64_t kmax,
                                        std::int64_t lo, Order order, std::size_t max_pairs) {
    const auto hi = static_cast<std::int64_t>(std::sqrt(static_cast<double>(kmax) / min_eig)) + 1;
    const double range = static_cast<double>(hi - lo + 1);
    check_pair_budget(range * range, max_pairs);
    std::vector<std::int64_t> keys;
    for (std::int64_t m = lo; m <= hi; ++m) {
        for (std::int64_t n = lo; n <= hi; ++n) {
            if (order == Order::StrictlyDecreasing && !(m > n)) continue;
            if (order == Order::Decreasing && !(m >= n)) continue;
            const std::int64_t k = form(m, n);
            if (k <= kmax && k > 0) keys.push_back(k);
            if (k == 0 && lo == 0) keys.push_back(0);
        }
    }
    return keys;
}

// Continued-fraction rationalisation of r with denominator <= max_den.
std::optional<std::pair<std::int64_t, std::int64_t>> rationalize(double r, std::int64_t max_den) {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = r;
    for (int it = 0; it < 40; ++it) {
        const double a = std::floor(x);
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t p2 = ai * p1 + p0;
        const std::int64_t q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        if (std::fabs(r - static_cast<double>(p2) / static_cast<double>(q2)) <= 1e-13 * r)
            return std::make_pair(p2, q2);
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = x - a;
        if (frac <= 0.0) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

// Box eigenvalues pi^2 sum m_j^2 / d_j^2. Dimensions whose squared ratios
// are rational share one integer key; the value is sum_c kappa_c key_c.
std::vector<Eigenvalue> box_eigenvalues(const std::vector<double>& dims, bool neumann,
                                        double cutoff, std::size_t max_pairs) {
    struct Class {
        double base;
        std::int64_t lcm = 1;
        std::vector<std::pair<std::size_t, std::pair<std::int64_t, std::int64_t>>> members;
    };
    std::vector<Class> classes;
    std::vector<std::size_t> class_of(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        bool placed = false;
        for (std::size_t c = 0; c < classes.size() && !placed; ++c) {
            const double r = (classes[c].base / dims[j]) * (classes[c].base / dims[j]);
            if (auto pq = rationalize(r, 10000)) {
                classes[c].members.push_back({j, *pq});
                classes[c].lcm = std::lcm(classes[c].lcm, pq->second);
                class_of[j] = c;
                placed = true;
            }
        }
        if (!placed) {
            classes.push_back({dims[j], 1, {{j, {1, 1}}}});
            class_of[j] = classes.size() - 1;
        }
    }
    std::vector<std::int64_t> weight(dims.size());
    std::vector<double> kappa(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        kappa[c] = pi * pi / (classes[c].base * classes[c].base * static_cast<double>(classes[c].lcm));
        for (const auto& [j, pq] : classes[c].members)
            weight[j] = pq.first * (classes[c].lcm / pq.second);
    }

    const std::int64_t lo = neumann ? 0 : 1;
    std::vector<std::int64_t> hi(dims.size());
    double pairs = 1.0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        hi[j] = static_cast<std::int64_t>(dims[j] * std::sqrt(cutoff) / pi) + 1;
        pairs *= static_cast<double>(hi[j] - lo + 1);
    }
    check_pair_budget(pairs, max_pairs);

    const double limit = cutoff * (1.0 + kCutoffSlack);
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> keys(classes.size(), 0);
    auto value_of = [&](const std::vector<std::int64_t>& k) {
        double v = 0.0;
        for (std::size_t c = 0; c < k.size(); ++c) v += kappa[c] * static_cast<double>(k[c]);
        return v;
    };
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == dims.size()) {
            found.push_back(keys);
            return;
        }
        const std::size_t c = class_of[j];
        for (std::int64_t m = lo; m <= hi[j]; ++m) {
            keys[c] += weight[j] * m * m;
            const bool within = value_of(keys) <= limit;
            if (within) self(self, j + 1);
            keys[c] -= weight[j] * m * m;
            if (!within) break;
        }
    };
    rec(rec, 0);

    std::sort(found.begin(), found.end());
    std::vector<Eigenvalue> out;
    for (std::size_t i = 0; i < found.size();) {
        std::size_t k = i;
        while (k < found.size() && found[k] == found[i]) ++k;
        out.push_back({value_of(found[i]), static_cast<std::int64_t>(k - i),
                       classes.size() == 1 ? found[i][0] : -1});
        i = k;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Eigenvalue& a, const Eigenvalue& b) { return a.value < b.value; });
    return out;
}

bool satisfies_conditions(std::int64_t m, std::int64_t n, PinskyCondition* violated) {
    auto fail = [&](PinskyCondition c) {
        if (violated) *violated = c;
        return false;
    };
    if (((m + n) % 3 + 3) % 3 != 0) return fail(PinskyCondition::A);
    if (m == 2 * n) return fail(PinskyCondition::B);
    if (n == 2 * m) return fail(PinskyCondition::C);
    if (m == -n) return fail(PinskyCondition::D);
    return true;
}

bool is_canonical(std::int64_t m, std::int64_t n) {
    const auto pairs = six_pairs(m, n);
    return *std::min_element(pairs.begin(), pairs.end()) == IndexPair{m, n};
}

std::vector<std::int64_t> pinsky_keys(std::int64_t kmax, std::size_t max_pairs) {
    // M^2 - MN + N^2 >= (M^2 + N^2)/2 and M^2 - MN + N^2 = 3 key.
    const auto B = static_cast<std::int64_t>(std::sqrt(6.0 * static_cast<double>(kmax))) + 1;
    const double range = static_cast<double>(2 * B + 1);
    check_pair_budget(range * range, max_pairs);
    std::vector<std::int64_t> keys;
    for (std::int64_t M = -B; M <= B; ++M) {
        for (std::int64_t N = -B; N <= B; ++N) {
            if ((M == 0 && N == 0) || !satisfies_conditions(M, N, nullptr)) continue;
            const std::int64_t Q = M * M - M * N + N * N;
            if (Q / 3 > kmax || !is_canonical(M, N)) continue;
            keys.push_back(Q / 3);
        }
    }
    return keys;
}

}  // namespace

EigenvalueList enumerate(const ShapeSpec& shape, BoundaryCondition bc, double cutoff,
                         Parametrization param, std::size_t max_pairs) {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("cutoff must be positive");
    const bool neumann = bc == BoundaryCondition::Neumann;
    EigenvalueList out{{}, cutoff, shape, bc, {}};
    auto mn_form = [](std::int64_t m, std::int64_t n) { return m * m + m * n + n * n; };
    auto sq_form = [](std::int64_t m, std::int64_t n) { return m * m + n * n; };

    if (param == Parametrization::PinskyOrbits && !shape.get_if<EquilateralTriangle>())
        throw Unsupported("orbit parametrization applies to the equilateral triangle only");

    if (const auto* r = shape.get_if<Rectangle>()) {
        out.entries = box_eigenvalues({r->a, r->b}, neumann, cutoff, max_pairs);
        out.provenance = neumann ? "rectangle m,n>=0" : "rectangle m,n>=1";
    } else if (const auto* b = shape.get_if<Box>()) {
        out.entries = box_eigenvalues(b->dims, neumann, cutoff, max_pairs);
        out.provenance = neumann ? "box m_j>=0" : "box m_j>=1";
    } else if (const auto* e = shape.get_if<EquilateralTriangle>()) {
        const double kappa = 16.0 * pi * pi / (9.0 * e->l * e->l);
        const std::int64_t kmax = key_limit(cutoff, kappa);
        if (param == Parametrization::PinskyOrbits) {
            if (neumann) throw Unsupported("orbit parametrization is Dirichlet only");
            out.entries = merge_keys(pinsky_keys(kmax, max_pairs), kappa);
            out.provenance = "equilateral canonical (A)-(D) orbits";
        } else {
            out.entries = merge_keys(
                triangle_keys(mn_form, 0.5, kmax, neumann ? 0 : 1, Order::Square, max_pairs), kappa);
            out.provenance = neumann ? "equilateral m,n>=0" : "equilateral m,n>=1";
        }
    } else if (const auto* t = shape.get_if<IsoscelesRightTriangle>()) {
        const double kappa = pi * pi / (t->a * t->a);
        const std::int64_t kmax = key_limit(cutoff, kappa);
        out.entries = merge_keys(
            triangle_keys(sq_form, 1.0, kmax, neumann ? 0 : 1,
                          neumann ? Order::Decreasing : Order::StrictlyDecreasing, max_pairs),
            kappa);
        out.provenance = neumann ? "isosceles-right m>=n>=0" : "isosceles-right m>n>=1";
    } else if (const auto* h = shape.get_if<HemiEquilateralTriangle>()) {
        const double kappa = 16.0 * pi * pi / (9.0 * h->l * h->l);
        const std::int64_t kmax = key_limit(cutoff, kappa);
        out.entries = merge_keys(
            triangle_keys(mn_form, 0.5, kmax, neumann ? 0 : 1,
                          neumann ? Order::Decreasing : Order::StrictlyDecreasing, max_pairs),
            kappa);
        out.provenance = neumann ? "hemi-equilateral m>=n>=0" : "hemi-equilateral m>n>=1";
    } else {
        throw Unsupported("no closed-form spectrum for a general convex polygon");
    }
    return out;
}

std::int64_t counting_function(const EigenvalueList& list, double lambda) {
    if (lambda > list.cutoff) throw std::out_of_range("lambda exceeds the enumeration cutoff");
    std::int64_t c = 0;
    for (const auto& e : list.entries) {
        if (e.value > lambda) break;
        c += e.multiplicity;
    }
    return c;
}

char condition_letter(PinskyCondition c) {
    switch (c) {
        case PinskyCondition::A: return 'A';
        case PinskyCondition::B: return 'B';
        case PinskyCondition::C: return 'C';
        case PinskyCondition::D: return 'D';
    }
    return '?';
}

std::array<IndexPair, 6> six_pairs(std::int64_t m, std::int64_t n) {
    return {IndexPair{-n, m - n}, IndexPair{-n, -m}, IndexPair{n - m, -m},
            IndexPair{n - m, n},  IndexPair{m, n},   IndexPair{m, m - n}};
}

OrbitCheck orbit_of(std::int64_t m, std::int64_t n) {
    if (m == 0 && n == 0) throw std::invalid_argument("orbit_of requires (m,n) != (0,0)");
    OrbitCheck out;
    PinskyCondition bad{};
    if (!satisfies_conditions(m, n, &bad)) {
        out.violated = bad;
        return out;
    }
    OrbitRep rep;
    rep.orbit = six_pairs(m, n);
    rep.rep = *std::min_element(rep.orbit.begin(), rep.orbit.end());
    rep.form_value = m * m - m * n + n * n;
    rep.eigenvalue = 16.0 * pi * pi / 27.0 * static_cast<double>(rep.form_value);
    out.orbit = rep;
    return out;
}

OrbitBijectionReport verify_orbit_bijection(int M) {
    if (M < 1) throw DomainError("orbit bijection bound must be >= 1");
    OrbitBijectionReport rep;
    rep.bound = M;
    std::set<IndexPair> used;
    std::set<std::int64_t> values;
    for (std::int64_t m = 1; m <= M; ++m) {
        for (std::int64_t n = 1; n <= M; ++n) {
            ++rep.pairs_checked;
            const std::int64_t v = m * m + m * n + n * n;
            values.insert(v);
            const OrbitCheck oc = orbit_of(2 * m + n, m - n);
            if (!oc.accepted()) {
                rep.violations.push_back("pair (" + std::to_string(m) + "," + std::to_string(n) +
                                         ") maps to a rejected index pair");
                continue;
            }
            if (oc.orbit->form_value != 3 * v)
                rep.violations.push_back("pair (" + std::to_string(m) + "," + std::to_string(n) +
                                         ") maps to an orbit with the wrong eigenvalue");
            if (!used.insert(oc.orbit->rep).second)
                rep.violations.push_back("pair (" + std::to_string(m) + "," + std::to_string(n) +
                                         ") shares its orbit with another pair");
        }
    }
    rep.distinct_orbits = static_cast<std::int64_t>(used.size());

    // Exhaustive counts for every value reached.
    const std::int64_t vmax = *values.rbegin();
    std::map<std::int64_t, std::int64_t> pair_count, orbit_count;
    for (std::int64_t m = 1; m * m < vmax + 1; ++m)
        for (std::int64_t n = 1; m * m + m * n + n * n <= vmax; ++n) ++pair_count[m * m + m * n + n * n];
    const auto B = static_cast<std::int64_t>(std::sqrt(6.0 * static_cast<double>(vmax))) + 1;
    for (std::int64_t a = -B; a <= B; ++a) {
        for (std::int64_t b = -B; b <= B; ++b) {
            if ((a == 0 && b == 0) || !satisfies_conditions(a, b, nullptr) || !is_canonical(a, b)) continue;
            const std::int64_t Q = a * a - a * b + b * b;
            if (Q <= 3 * vmax) ++orbit_count[Q / 3];
        }
    }
    for (std::int64_t v : values) {
        ++rep.values_checked;
        if (pair_count[v] != orbit_count[v])
            rep.violations.push_back("value " + std::to_string(v) + ": " + std::to_string(pair_count[v]) +
                                     " pairs vs " + std::to_string(orbit_count[v]) + " orbits");
    }
    return rep;
}

ParametrizationComparison compare_equilateral_parametrizations(double l, double cutoff) {
    const ShapeSpec tri = ShapeSpec::equilateral(l);
    const EigenvalueList a = enumerate(tri, BoundaryCondition::Dirichlet, cutoff, Parametrization::Standard);
    const EigenvalueList b = enumerate(tri, BoundaryCondition::Dirichlet, cutoff, Parametrization::PinskyOrbits);
    ParametrizationComparison cmp;
    cmp.entries_standard = a.entries.size();
    cmp.entries_orbits = b.entries.size();
    const std::size_t n = std::max(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= a.entries.size() || i >= b.entries.size()) {
            cmp.mismatches.push_back("length differs at entry " + std::to_string(i));
            break;
        }
        const auto& x = a.entries[i];
        const auto& y = b.entries[i];
        if (x.key != y.key || x.multiplicity != y.multiplicity)
            cmp.mismatches.push_back("key " + std::to_string(x.key) + " (x" + std::to_string(x.multiplicity) +
                                     ") vs key " + std::to_string(y.key) + " (x" +
                                     std::to_string(y.multiplicity) + ")");
    }
    return cmp;
}

namespace {

struct Wave {
    double sign;
    double kx;
    double ky;
};

// Pair (p,q) contributes e^{(2 pi i / 3)(q x + (2p - q) y / sqrt3)} with
// alternating signs along the six-pair list.
std::array<Wave, 6> waves(std::int64_t m, std::int64_t n) {
    const auto pairs = six_pairs(m, n);
    std::array<Wave, 6> w{};
    for (std::size_t k = 0; k < 6; ++k) {
        const auto p = static_cast<double>(pairs[k].first);
        const auto q = static_cast<double>(pairs[k].second);
        w[k] = {k % 2 == 0 ? 1.0 : -1.0, 2.0 * pi * q / 3.0, 2.0 * pi * (2.0 * p - q) / (3.0 * sqrt3)};
    }
    return w;
}

}  // namespace

std::complex<double> equilateral_eigenfunction(std::int64_t m, std::int64_t n, double x, double y) {
    std::complex<double> f = 0.0;
    for (const Wave& w : waves(m, n)) f += w.sign * std::polar(1.0, w.kx * x + w.ky * y);
    return f;
}

std::complex<double> equilateral_pde_residual(std::int64_t m, std::int64_t n, double x, double y) {
    const double lambda = 16.0 * pi * pi / 27.0 * static_cast<double>(m * m - m * n + n * n);
    std::complex<double> r = 0.0;
    for (const Wave& w : waves(m, n))
        r += w.sign * (lambda - (w.kx * w.kx + w.ky * w.ky)) * std::polar(1.0, w.kx * x + w.ky * y);
    return r;
}

BoundaryResidual eigenfunction_boundary_residual(std::int64_t m, std::int64_t n, int samples) {
    if (samples < 2) throw DomainError("need at least two samples per side");
    if ((m == 0 && n == 0) || !satisfies_conditions(m, n, nullptr))
        throw std::invalid_argument("(m,n) violates the eigenfunction conditions");
    BoundaryResidual r;
    r.eigenvalue = 16.0 * pi * pi / 27.0 * static_cast<double>(m * m - m * n + n * n);
    for (int k = 0; k < samples; ++k) {
        const double s = static_cast<double>(k) / (samples - 1);
        const double on_base = std::abs(equilateral_eigenfunction(m, n, s, 0.0));
        const double xl = 0.5 * s;
        const double on_left = std::abs(equilateral_eigenfunction(m, n, xl, xl * sqrt3));
        const double xr = 0.5 + 0.5 * s;
        const double on_right = std::abs(equilateral_eigenfunction(m, n, xr, sqrt3 * (1.0 - xr)));
        r.boundary_max = std::max({r.boundary_max, on_base, on_left, on_right});
    }
    // Interior grid in barycentric coordinates.
    for (int i = 1; i < samples; ++i) {
        for (int j = 1; i + j < samples; ++j) {
            const double u = static_cast<double>(i) / samples;
            const double v = static_cast<double>(j) / samples;
            const double x = u + 0.5 * v;
            const double y = v * sqrt3 / 2.0;
            r.pde_max = std::max(r.pde_max, std::abs(equilateral_pde_residual(m, n, x, y)));
            r.function_scale = std::max(r.function_scale, std::abs(equilateral_eigenfunction(m, n, x, y)));
        }
    }
    return r;
}

}  // namespace polyspec
