#ifndef BETHELAB_DISK_HPP
#define BETHELAB_DISK_HPP

#include <complex>
#include <vector>

#include "bethelab/green.hpp"
#include "bethelab/tree.hpp"

namespace bethe {

// Conformal coordinates: lambda = sqrt(2)(z + 1/z) maps the unit disk onto the
// complement of the band.  to_disk picks the root with |z| < 1.
Complex to_disk(Complex lambda);
Complex from_disk(Complex z);

// f(z) = -m(sqrt(2)(z + 1/z)) for 0 < |z| < 1; f(0) = 0 (removable).
// In the free case f(z) = z/sqrt(2).
Complex f_value(const TreePotential& v, Complex z);

// F(z) = -m_denominator(sqrt(2)(z + 1/z)); f = -1/F.
Complex F_value(const TreePotential& v, Complex z);

// ln|f(e^{i theta})| from the boundary values of m at lambda = 2*sqrt(2)*cos(theta).
double boundary_log_abs_f(const TreePotential& v, double theta);

struct BoundaryLogSample {
    double theta = 0.0;
    double log_modulus = 0.0;
};
// Uniform boundary samples of ln|f| on (0, pi), n of them.
std::vector<BoundaryLogSample> sample_boundary_log_modulus(const TreePotential& v, int n);

struct TaylorCoeffs {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;  // f(z) = a1 z + a2 z^2 + a3 z^3 + O(z^4)
};

// First three Taylor coefficients of f at the origin via trapezoid Cauchy
// integrals on |z| = 1e-2 (64 nodes, validated against 128).  For any
// finite-support potential a1 = 1/sqrt(2), a2 = V(O)/2, a3 = V(O)^2/(2 sqrt(2)).
TaylorCoeffs taylor_coeffs_f(const TreePotential& v, double tol = 1e-8);

// Real zeros and poles of f in the disk (equivalently of m off the band),
// with their energies.  Ordered outward-in as the interlacing statement reads:
// radii increasing in (0,1) on the + side, decreasing in (-1,0) on the - side.
struct ZeroPoleData {
    std::vector<double> zeros_pos, poles_pos;  // increasing in (0,1)
    std::vector<double> zeros_neg, poles_neg;  // decreasing in (-1,0)
    std::vector<double> zero_energies_pos, pole_energies_pos;  // decreasing, > 2*sqrt(2)
    std::vector<double> zero_energies_neg, pole_energies_neg;  // increasing, < -2*sqrt(2)
    double search_tol = 0.0;
};

// Scans |lambda| <= 2*sqrt(2) + sup_norm + 1 for sign changes of m (zeros) and
// 1/m (poles), then bisects; Herglotz monotonicity makes each bracket simple.
ZeroPoleData find_zeros_poles(const TreePotential& v, double tol = 1e-10);

// Alternation of poles and zeros moving away from the band edge on each side,
// outermost a pole.
bool interlacing_ok(const ZeroPoleData& zp);

// B(z) = B1(z) / B2(z) with the normalization |r|/r per factor.
Complex blaschke_eval(const ZeroPoleData& zp, Complex z);

// Max over samples of |f(z) - z B(z) exp(Poisson-Szego integral of ln|f|)|.
double verify_multiplicative_rep(const TreePotential& v, const std::vector<Complex>& samples,
                                 double quad_tol = 1e-10, double root_tol = 1e-12);

} // namespace bethe

#endif
