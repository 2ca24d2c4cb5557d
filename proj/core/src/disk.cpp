#include "bethelab/disk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "bethelab/errors.hpp"
#include "bethelab/quadrature.hpp"

namespace bethe {

Complex to_disk(Complex lambda) {
    if (lambda.imag() == 0.0 && std::abs(lambda.real()) <= kBandEdge) {
        if (std::abs(lambda.real()) == kBandEdge)
            throw BranchPointError("to_disk: lambda at a band edge");
        throw std::domain_error("to_disk: lambda on the band; parameterize the boundary instead");
    }
    // (lambda - band_sqrt(lambda)) / (2 sqrt 2) without the large-|lambda|
    // cancellation: z = 2 sqrt(2) / (lambda (1 + sqrt(1 - 8/lambda^2)))
    const Complex s = std::sqrt(Complex(1.0, 0.0) - 8.0 / (lambda * lambda));
    return 2.0 * kSqrt2 / (lambda * (1.0 + s));
}

Complex from_disk(Complex z) {
    if (z == 0.0) throw std::domain_error("from_disk: z = 0 maps to infinity");
    return kSqrt2 * (z + 1.0 / z);
}

Complex f_value(const TreePotential& v, Complex z) {
    if (z == 0.0) return 0.0;  // removable origin: f(0) = 0
    if (std::abs(z) >= 1.0)
        throw std::domain_error("f_value: interior evaluation needs |z| < 1");
    return -m_root(v, SpectralPoint::off_band(from_disk(z))).value;
}

Complex F_value(const TreePotential& v, Complex z) {
    if (z == 0.0 || std::abs(z) >= 1.0)
        throw std::domain_error("F_value: need 0 < |z| < 1");
    return -m_denominator(v, SpectralPoint::off_band(from_disk(z)));
}

double boundary_log_abs_f(const TreePotential& v, double theta) {
    const double lambda = kBandEdge * std::cos(theta);
    // |f(e^{i theta})| = |m(lambda + i0)| by conjugate symmetry
    return std::log(std::abs(m_root(v, SpectralPoint::on_band(lambda)).value));
}

std::vector<BoundaryLogSample> sample_boundary_log_modulus(const TreePotential& v, int n) {
    if (n < 1) throw std::invalid_argument("sample_boundary_log_modulus: n must be >= 1");
    std::vector<BoundaryLogSample> out(n);
    for (int k = 0; k < n; ++k) {
        const double theta = M_PI * (k + 0.5) / n;
        out[k] = {theta, boundary_log_abs_f(v, theta)};
    }
    return out;
}

TaylorCoeffs taylor_coeffs_f(const TreePotential& v, double tol) {
    const double r = 1e-2;
    const int n = 128;
    Complex fvals[n];
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * j / n;
        fvals[j] = f_value(v, Complex(r * std::cos(th), r * std::sin(th)));
    }
    auto coeff = [&](int k, int stride) {
        Complex s = 0.0;
        const int m = n / stride;
        for (int j = 0; j < n; j += stride) {
            const double th = 2.0 * M_PI * j / n;
            s += fvals[j] * Complex(std::cos(k * th), -std::sin(k * th));
        }
        return s / (double(m) * std::pow(r, k));
    };
    Complex full[3], half[3];
    for (int k = 1; k <= 3; ++k) {
        full[k - 1] = coeff(k, 1);   // 128 nodes
        half[k - 1] = coeff(k, 2);   // the 64-node subset
    }
    double residual = 0.0;
    for (int k = 0; k < 3; ++k)
        residual = std::max({residual, std::abs(full[k] - half[k]), std::abs(full[k].imag())});
    if (residual > tol)
        throw ExtrapolationError("taylor_coeffs_f: extraction residual " +
                                 std::to_string(residual) + " above tolerance");
    return {full[0].real(), full[1].real(), full[2].real()};
}

namespace {

// Real m along the real axis off the band; +-inf at an exact pole hit.
double m_real(const TreePotential& v, double lambda) {
    try {
        return m_root(v, SpectralPoint::off_band(Complex(lambda, 0.0))).value.real();
    } catch (const PoleHitError&) {
        return std::numeric_limits<double>::infinity();
    }
}

double bisect(const std::function<double(double)>& g, double a, double b, double tol) {
    double ga = g(a);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((ga < 0) == (gm < 0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

struct SideRoots {
    std::vector<double> zeros, poles;  // ascending lambda
};

// Scan [lo, hi] (entirely off the band) on an ascending grid.  m is real and
// strictly increasing between its poles there, so a -+ sign change brackets a
// zero and a +- change brackets a pole.
SideRoots scan_interval(const TreePotential& v, double lo, double hi, double step, double tol) {
    SideRoots out;
    const long cells = std::max(2L, static_cast<long>(std::ceil((hi - lo) / step)));
    double xprev = lo;
    double mprev = m_real(v, xprev);
    if (mprev == 0.0) out.zeros.push_back(xprev);
    if (std::isinf(mprev)) out.poles.push_back(xprev);
    for (long i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * double(i) / double(cells);
        const double m = m_real(v, x);
        if (m == 0.0) {
            out.zeros.push_back(x);
        } else if (std::isinf(m)) {
            out.poles.push_back(x);
        } else if (std::isfinite(mprev) && mprev != 0.0 && (mprev < 0) != (m < 0)) {
            if (mprev < 0)
                out.zeros.push_back(
                    bisect([&](double t) { return m_real(v, t); }, xprev, x, tol));
            else
                out.poles.push_back(
                    bisect([&](double t) { return 1.0 / m_real(v, t); }, xprev, x, tol));
        }
        xprev = x;
        mprev = m;
    }
    return out;
}

} // namespace

ZeroPoleData find_zeros_poles(const TreePotential& v, double tol) {
    if (tol <= 0) throw std::invalid_argument("find_zeros_poles: tol must be > 0");
    const double window = kBandEdge + v.sup_norm() + 1.0;
    double step = std::clamp(tol * 1e3, 1e-4, 1e-2);
    for (int attempt = 0;; ++attempt) {
        ZeroPoleData zp;
        zp.search_tol = tol;
        for (int sgn : {+1, -1}) {
            const double lo = sgn > 0 ? kBandEdge + 1e-9 : -window;
            const double hi = sgn > 0 ? window : -kBandEdge - 1e-9;
            SideRoots side = scan_interval(v, lo, hi, step, tol);
            for (double e : side.zeros) {
                (sgn > 0 ? zp.zero_energies_pos : zp.zero_energies_neg).push_back(e);
                (sgn > 0 ? zp.zeros_pos : zp.zeros_neg)
                    .push_back(to_disk(Complex(e, 0.0)).real());
            }
            for (double e : side.poles) {
                (sgn > 0 ? zp.pole_energies_pos : zp.pole_energies_neg).push_back(e);
                (sgn > 0 ? zp.poles_pos : zp.poles_neg)
                    .push_back(to_disk(Complex(e, 0.0)).real());
            }
        }
        // index 1 = farthest from the band: energies_pos descending, radii
        // ascending (the disk radius shrinks as |E| grows)
        std::sort(zp.zero_energies_pos.begin(), zp.zero_energies_pos.end(), std::greater<>());
        std::sort(zp.pole_energies_pos.begin(), zp.pole_energies_pos.end(), std::greater<>());
        std::sort(zp.zero_energies_neg.begin(), zp.zero_energies_neg.end());
        std::sort(zp.pole_energies_neg.begin(), zp.pole_energies_neg.end());
        std::sort(zp.zeros_pos.begin(), zp.zeros_pos.end());
        std::sort(zp.poles_pos.begin(), zp.poles_pos.end());
        std::sort(zp.zeros_neg.begin(), zp.zeros_neg.end(), std::greater<>());
        std::sort(zp.poles_neg.begin(), zp.poles_neg.end(), std::greater<>());
        if (interlacing_ok(zp)) return zp;
        if (attempt >= 2)
            throw BracketError("find_zeros_poles: unresolved bracket after grid refinement");
        step *= 0.1;
    }
}

bool interlacing_ok(const ZeroPoleData& zp) {
    auto side_ok = [](const std::vector<double>& zeros, const std::vector<double>& poles) {
        // outermost-in: poles at |r| p1 < p2 < ..., zeros interlaced after each pole
        if (zeros.size() + 1 < poles.size() || zeros.size() > poles.size()) return false;
        if (poles.empty()) return zeros.empty();
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            if (!(std::abs(poles[k]) < std::abs(zeros[k]))) return false;
            if (k + 1 < poles.size() && !(std::abs(zeros[k]) < std::abs(poles[k + 1])))
                return false;
        }
        return true;
    };
    return side_ok(zp.zeros_pos, zp.poles_pos) && side_ok(zp.zeros_neg, zp.poles_neg);
}

Complex blaschke_eval(const ZeroPoleData& zp, Complex z) {
    auto factor = [&](double r) {
        return (std::abs(r) / r) * (r - z) / (1.0 - r * z);
    };
    Complex b = 1.0;
    for (double r : zp.zeros_pos) b *= factor(r);
    for (double r : zp.zeros_neg) b *= factor(r);
    for (double r : zp.poles_pos) {
        if (z == Complex(r, 0.0)) throw std::domain_error("blaschke_eval: z collides with a pole");
        b /= factor(r);
    }
    for (double r : zp.poles_neg) {
        if (z == Complex(r, 0.0)) throw std::domain_error("blaschke_eval: z collides with a pole");
        b /= factor(r);
    }
    return b;
}

double verify_multiplicative_rep(const TreePotential& v, const std::vector<Complex>& samples,
                                 double quad_tol, double root_tol) {
    const ZeroPoleData zp = find_zeros_poles(v, root_tol);
    double worst = 0.0;
    for (Complex z : samples) {
        // (1/2pi) int_{-pi}^{pi} (t+z)/(t-z) ln|f(t)| dtheta, folded onto [0,pi]
        const Complex poisson =
            adaptive_quad_complex(
                [&](double th) {
                    const Complex t(std::cos(th), std::sin(th));
                    const Complex tc = std::conj(t);
                    const double lf = boundary_log_abs_f(v, th);
                    return ((t + z) / (t - z) + (tc + z) / (tc - z)) * lf;
                },
                0.0, M_PI, quad_tol) /
            (2.0 * M_PI);
        const Complex rhs = z * blaschke_eval(zp, z) * std::exp(poisson);
        worst = std::max(worst, std::abs(f_value(v, z) - rhs));
    }
    return worst;
}

} // namespace bethe
