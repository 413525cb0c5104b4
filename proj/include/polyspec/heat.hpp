#pragma once
// Heat traces h(t) = sum exp(-lambda t): theta forms, eigenvalue sums and the
// Poisson-transformed series, the short-time expansions, their exponentially
// small remainders and a fit of the remainder rate.

#include <array>
#include <string>
#include <vector>

#include "polyspec/shapes.hpp"
#include "polyspec/spectrum.hpp"

namespace polyspec {

enum class HeatMethod { Auto, ThetaForm, DirectEigenSum, TransformedSeries };
std::string to_string(HeatMethod m);
HeatMethod parse_heat_method(const std::string& s);

struct HeatTraceValue {
    double t = 0.0;
    double value = 0.0;
    HeatMethod method = HeatMethod::ThetaForm;
    double tail_bound = 0.0;
};

// Supports the four integrable shapes and boxes. Auto picks the theta form
// for t >= s^2/8 (s the shortest side) and the transformed series below.
HeatTraceValue heat_trace(const ShapeSpec& shape, BoundaryCondition bc, double t,
                          HeatMethod method = HeatMethod::Auto, double tol = 1e-14);

// coeff * t^t_power * exp(-exp_rate / t)
struct HeatTerm {
    double coeff = 0.0;
    double t_power = 0.0;
    double exp_rate = 0.0;
};

struct HeatExpansion {
    std::vector<HeatTerm> terms;  // sorted by (exp_rate, t_power)
    Rational constant_term;       // the t^0 coefficient, exactly
    double sharp_rate = 0.0;      // (L/2)^2, L the shortest closed geodesic
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    int levels = 0;               // exponential levels included beyond the power terms
};

// Power terms plus all terms at the `order` smallest exponential rates.
HeatExpansion expansion(const ShapeSpec& shape, BoundaryCondition bc, int order);

// R(t) = sign * exp(log_abs); `value` underflows to 0 below ~1e-308 while
// log_abs stays finite.
struct RemainderValue {
    double t = 0.0;
    int sign = 0;
    double log_abs = 0.0;
    double value = 0.0;
    double relative_bound = 0.0;
};

// h(t) minus expansion(shape, bc, k_levels), summed directly from the
// terms the expansion leaves out.
RemainderValue remainder(const ShapeSpec& shape, BoundaryCondition bc, double t, int k_levels = 0,
                         double tol = 1e-15);

struct RatePoint {
    double t = 0.0;
    double minus_t_log_r = 0.0;
    double corrected = 0.0;  // minus_t_log_r + p t log t
    double c_point = 0.0;    // running two-point extrapolation to t = 0
};

struct RateFit {
    double c_hat = 0.0;
    double log_prefactor = 0.0;
    double t_power = 0.0;  // p in R ~ C t^p exp(-c/t)
    double expected = 0.0;
    std::vector<RatePoint> points;
};

// Least squares of -t log|R| + p t log t = c - t log C over the grid, with p
// the leading power of t among the slowest decaying remainder terms.
RateFit fit_sharp_rate(const ShapeSpec& shape, BoundaryCondition bc, const std::vector<double>& t_grid);

// Rows are the basis vectors of the lattice.
using LatticeBasis = std::array<std::array<double, 2>, 2>;

struct TorusHeatTrace {
    double t = 0.0;
    double eigen_side = 0.0;    // sum over the dual lattice of exp(-4 pi^2 t |y|^2)
    double lattice_side = 0.0;  // vol/(4 pi t) sum over the lattice of exp(-|g|^2/(4t))
    double tail_bound = 0.0;
    bool agree = false;
};
TorusHeatTrace torus_heat_trace(const LatticeBasis& basis, double t, double tol = 1e-14);

struct ShortestVectors {
    double length = 0.0;
    int multiplicity = 0;
    double volume = 0.0;
};
ShortestVectors torus_shortest_vectors(const LatticeBasis& basis);

// h(t) - vol/(4 pi t) from the nonzero lattice vectors.
RemainderValue torus_remainder(const LatticeBasis& basis, double t);
RateFit fit_torus_rate(const LatticeBasis& basis, const std::vector<double>& t_grid);

HeatTraceValue box_heat_trace(const std::vector<double>& dims, BoundaryCondition bc, double t,
                              double tol = 1e-14);

}  // namespace polyspec
