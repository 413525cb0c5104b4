#pragma once
// Exact Laplace eigenvalues of the integrable polygons and boxes.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyspec/shapes.hpp"

namespace polyspec {

enum class BoundaryCondition { Dirichlet, Neumann };

std::string to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(const std::string& s);

// Index set used for the equilateral triangle. Standard is m,n >= 1 with
// lambda = 16 pi^2 (m^2+mn+n^2) / (9 l^2); PinskyOrbits takes one pair per
// canonical six-pair orbit with lambda = 16 pi^2 (M^2-MN+N^2) / (27 l^2).
enum class Parametrization { Standard, PinskyOrbits };

struct Eigenvalue {
    double value = 0.0;
    std::int64_t multiplicity = 0;
    // Integer quadratic-form value with value = prefactor * key, or -1 when
    // the eigenvalue is not a single integer multiple of a common prefactor.
    std::int64_t key = -1;
};

struct EigenvalueList {
    std::vector<Eigenvalue> entries;
    double cutoff = 0.0;
    ShapeSpec shape;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    std::string provenance;

    std::int64_t total_count() const;
};

inline constexpr std::size_t kMaxIndexPairs = 10'000'000;

// All eigenvalues <= cutoff, equal values merged on exact integer keys.
EigenvalueList enumerate(const ShapeSpec& shape, BoundaryCondition bc, double cutoff,
                         Parametrization param = Parametrization::Standard,
                         std::size_t max_pairs = kMaxIndexPairs);

// Number of eigenvalues <= lambda counted with multiplicity.
std::int64_t counting_function(const EigenvalueList& list, double lambda);

using IndexPair = std::pair<std::int64_t, std::int64_t>;

// The conditions on (m,n) for the equilateral triangle:
// A: m + n = 0 mod 3, B: m != 2n, C: n != 2m, D: m != -n.
enum class PinskyCondition { A, B, C, D };
char condition_letter(PinskyCondition c);

struct OrbitRep {
    IndexPair rep;                   // lexicographically smallest member
    std::array<IndexPair, 6> orbit;  // (-n,m-n), (-n,-m), (n-m,-m), (n-m,n), (m,n), (m,m-n)
    std::int64_t form_value = 0;     // m^2 - mn + n^2
    double eigenvalue = 0.0;         // for side length 1
};

struct OrbitCheck {
    std::optional<OrbitRep> orbit;
    std::optional<PinskyCondition> violated;
    bool accepted() const { return orbit.has_value(); }
};

OrbitCheck orbit_of(std::int64_t m, std::int64_t n);
std::array<IndexPair, 6> six_pairs(std::int64_t m, std::int64_t n);

struct OrbitBijectionReport {
    int bound = 0;
    std::int64_t pairs_checked = 0;
    std::int64_t distinct_orbits = 0;
    std::int64_t values_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// For 1 <= m,n <= M, maps (m,n) to the orbit of (2m+n, m-n), checks the map
// is injective and value-preserving (M'^2 - M'N' + N'^2 = 3(m^2+mn+n^2)),
// and that for every value reached the number of pairs equals the number of
// canonical orbits found by exhaustive search.
OrbitBijectionReport verify_orbit_bijection(int M);

struct ParametrizationComparison {
    std::size_t entries_standard = 0;
    std::size_t entries_orbits = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};
ParametrizationComparison compare_equilateral_parametrizations(double l, double cutoff);

// f_{m,n} on the triangle with vertices (0,0), (1,0), (1/2, sqrt3/2).
std::complex<double> equilateral_eigenfunction(std::int64_t m, std::int64_t n, double x, double y);
// Delta f + lambda f evaluated from the analytic second derivatives.
std::complex<double> equilateral_pde_residual(std::int64_t m, std::int64_t n, double x, double y);

struct BoundaryResidual {
    double boundary_max = 0.0;  // max |f| over the boundary samples
    double pde_max = 0.0;       // max |Delta f + lambda f| over interior samples
    double function_scale = 0.0;  // max |f| over the interior samples
    double eigenvalue = 0.0;
};
BoundaryResidual eigenfunction_boundary_residual(std::int64_t m, std::int64_t n, int samples);

}  // namespace polyspec
