#ifndef BETHELAB_GREEN_HPP
#define BETHELAB_GREEN_HPP

#include <complex>
#include <vector>

#include "bethelab/tree.hpp"

namespace bethe {

using Complex = std::complex<double>;

inline constexpr double kBandEdge = 2.8284271247461903;  // 2*sqrt(2)
inline constexpr double kSqrt2 = 1.4142135623730951;

// Point where an m-function is evaluated: either off the band
// [-2*sqrt(2), 2*sqrt(2)], or a real point inside the band understood as the
// limit from the upper half-plane.
struct SpectralPoint {
    Complex lambda;
    bool boundary = false;

    // Throws BranchPointError at the band edges, std::domain_error for real
    // points inside the band (use boundary() for those).
    static SpectralPoint off_band(Complex lambda);
    static SpectralPoint on_band(double lambda);
};

struct MValue {
    Complex value;
    SpectralPoint point;
};

struct DensitySample {
    double lambda = 0.0;
    double density = 0.0;  // Im m(lambda + i0) / pi
};

// sqrt(lambda^2 - 8) on the branch analytic off the band and asymptotic to
// lambda; positive for lambda > 2*sqrt(2), negative for lambda < -2*sqrt(2).
Complex band_sqrt(Complex lambda);

// Free m-function: m0 = (-lambda + band_sqrt(lambda))/4, the Herglotz solution
// of m0 = -1/(2 m0 + lambda).
MValue m_free(const SpectralPoint& p);

// Root m-function by the recursion m = -1/(m1 + m2 - V(O) + lambda); branches
// with no potential support short-circuit to m_free, so the cost is
// proportional to the support size, not 2^radius.
MValue m_root(const TreePotential& v, const SpectralPoint& p);

// m-function of the subtree rooted at child O_1 (which=1) or O_2 (which=2).
MValue branch_m(const TreePotential& v, int which, const SpectralPoint& p);

// m1 + m2 - V(O) + lambda; satisfies m * m_denominator = -1.
Complex m_denominator(const TreePotential& v, const SpectralPoint& p);

// Boundary spectral density Im m(lambda + i0)/pi, lambda strictly inside the band.
DensitySample density(const TreePotential& v, double lambda);

struct AsymptoticCoeffs {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;  // m = -[c1/l + c2/l^2 + c3/l^3 + O(l^-4)]
};

// Fits the large-|lambda| expansion on the imaginary axis at |lambda| in
// {1e3, 2e3, 4e3} and validates against a fourth point.  For any finite-support
// potential c1 = 1, c2 = V(O), c3 = 2 + V(O)^2.
AsymptoticCoeffs asymptotic_coeffs(const TreePotential& v, double tol = 1e-6);

// Half-line continued fraction with diagonal q and hopping sqrt(2), run
// backward from the free tail: m_n = -1/(2 m_{n+1} - q_n + lambda).  Equals
// m_root for spherically symmetric tree potentials.
MValue jacobi_m(const std::vector<double>& diagonal, const SpectralPoint& p);

} // namespace bethe

#endif
