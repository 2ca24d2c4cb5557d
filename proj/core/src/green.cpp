#include "bethelab/green.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "bethelab/errors.hpp"

namespace bethe {

SpectralPoint SpectralPoint::off_band(Complex lambda) {
    if (lambda.imag() == 0.0) {
        const double x = std::abs(lambda.real());
        if (x == kBandEdge)
            throw BranchPointError("evaluation exactly at a band edge +-2*sqrt(2)");
        if (x < kBandEdge)
            throw std::domain_error(
                "real point inside the band; use SpectralPoint::on_band for the i0 limit");
    }
    return {lambda, false};
}

SpectralPoint SpectralPoint::on_band(double lambda) {
    if (std::abs(lambda) >= kBandEdge) {
        if (std::abs(lambda) == kBandEdge)
            throw BranchPointError("boundary evaluation at a band edge +-2*sqrt(2)");
        throw std::domain_error("boundary point must lie strictly inside the band");
    }
    return {Complex(lambda, 0.0), true};
}

Complex band_sqrt(Complex lambda) {
    // lambda * principal_sqrt(1 - 8/lambda^2) is analytic off the band and ~ lambda
    return lambda * std::sqrt(Complex(1.0, 0.0) - 8.0 / (lambda * lambda));
}

static Complex free_value(const SpectralPoint& p) {
    if (p.boundary) {
        const double x = p.lambda.real();
        return Complex(-x, std::sqrt(8.0 - x * x)) / 4.0;
    }
    // (-lambda + band_sqrt(lambda))/4, written so the two ~lambda terms never
    // cancel: m0 = -2 / (lambda (1 + sqrt(1 - 8/lambda^2)))
    const Complex s = std::sqrt(Complex(1.0, 0.0) - 8.0 / (p.lambda * p.lambda));
    return -2.0 / (p.lambda * (1.0 + s));
}

MValue m_free(const SpectralPoint& p) { return {free_value(p), p}; }

namespace {

class Recursion {
public:
    Recursion(const TreePotential& v, const SpectralPoint& p)
        : v_(v), lambda_(p.lambda), free_(free_value(p)) {}

    Complex eval(const VertexAddress& a) const {
        if (!v_.subtree_has_support(a)) return free_;
        const Complex children = eval(a.child(0)) + eval(a.child(1));
        const Complex den = children - v_.value(a) + lambda_;
        if (den == 0.0)
            throw PoleHitError("m recursion hit a pole at lambda = " +
                                   std::to_string(lambda_.real()),
                               lambda_.real());
        return -1.0 / den;
    }

    Complex free_tail() const { return free_; }
    Complex lambda() const { return lambda_; }

private:
    const TreePotential& v_;
    Complex lambda_;
    Complex free_;
};

} // namespace

MValue m_root(const TreePotential& v, const SpectralPoint& p) {
    Recursion rec(v, p);
    return {rec.eval(VertexAddress::root()), p};
}

MValue branch_m(const TreePotential& v, int which, const SpectralPoint& p) {
    return m_root(v.branch(which), p);
}

Complex m_denominator(const TreePotential& v, const SpectralPoint& p) {
    Recursion rec(v, p);
    const Complex children =
        rec.eval(VertexAddress::root().child(0)) + rec.eval(VertexAddress::root().child(1));
    return children - v.value_at_root() + p.lambda;
}

DensitySample density(const TreePotential& v, double lambda) {
    const SpectralPoint p = SpectralPoint::on_band(lambda);
    return {lambda, m_root(v, p).value.imag() / M_PI};
}

AsymptoticCoeffs asymptotic_coeffs(const TreePotential& v, double tol) {
    if (v.support_radius() > 24)
        throw std::invalid_argument("asymptotic_coeffs: potential support too deep");
    // On the imaginary axis the moment expansion splits:
    //   t * Im m(it)   = c1 - c3 x + c5 x^2 - ...,   x = 1/t^2
    //   t^2 * Re m(it) = c2 - c4 x + c6 x^2 - ...
    // so quadratic Richardson fits in x at t = 1e3, 2e3, 4e3 recover c1..c3
    // with aliasing only from the x^3 terms.
    const double base = 1e3;
    double x[4], phi[4], psi[4];
    for (int j = 0; j < 4; ++j) {
        const double t = base * double(1 << j);
        const Complex m = m_root(v, SpectralPoint::off_band(Complex(0.0, t))).value;
        x[j] = 1.0 / (t * t);
        phi[j] = t * m.imag();
        psi[j] = t * t * m.real();
    }
    Eigen::Matrix3d A;
    Eigen::Vector3d bphi, bpsi;
    for (int j = 0; j < 3; ++j) {
        A(j, 0) = 1.0;
        A(j, 1) = x[j];
        A(j, 2) = x[j] * x[j];
        bphi(j) = phi[j];
        bpsi(j) = psi[j];
    }
    const auto lu = A.partialPivLu();
    const Eigen::Vector3d cphi = lu.solve(bphi);
    const Eigen::Vector3d cpsi = lu.solve(bpsi);
    // validate on the held-out fourth point
    const double rphi = std::abs(cphi(0) + cphi(1) * x[3] + cphi(2) * x[3] * x[3] - phi[3]);
    const double rpsi = std::abs(cpsi(0) + cpsi(1) * x[3] + cpsi(2) * x[3] * x[3] - psi[3]);
    if (rphi > tol || rpsi > tol)
        throw ExtrapolationError("asymptotic_coeffs: fit residual " +
                                 std::to_string(std::max(rphi, rpsi)) + " above tolerance");
    return {cphi(0), cpsi(0), -cphi(1)};
}

MValue jacobi_m(const std::vector<double>& diagonal, const SpectralPoint& p) {
    Complex m = free_value(p);
    const Complex lambda = p.lambda;
    for (std::size_t i = diagonal.size(); i-- > 0;) {
        const Complex den = (m + m) - diagonal[i] + lambda;
        if (den == 0.0)
            throw PoleHitError("jacobi_m hit a pole at lambda = " + std::to_string(lambda.real()),
                               lambda.real());
        m = -1.0 / den;
    }
    return {m, p};
}

} // namespace bethe
