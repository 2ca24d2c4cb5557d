#include "bethelab/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include "bethelab/errors.hpp"

namespace bethe {

namespace {

// Gauss-Legendre nodes/weights on [-1,1].
constexpr double kX7[7] = {-9.49107912342758486e-01, -7.41531185599394460e-01,
                           -4.05845151377397184e-01, 0.0,
                           4.05845151377397184e-01,  7.41531185599394460e-01,
                           9.49107912342758486e-01};
constexpr double kW7[7] = {1.29484966168870647e-01, 2.79705391489276589e-01,
                           3.81830050505118312e-01, 4.17959183673468959e-01,
                           3.81830050505118312e-01, 2.79705391489276589e-01,
                           1.29484966168870647e-01};

constexpr double kX15[15] = {-9.87992518020485377e-01, -9.37273392400705951e-01,
                             -8.48206583410427206e-01, -7.24417731360170070e-01,
                             -5.70972172608538830e-01, -3.94151347077563385e-01,
                             -2.01194093997434514e-01, 0.0,
                             2.01194093997434514e-01,  3.94151347077563385e-01,
                             5.70972172608538830e-01,  7.24417731360170070e-01,
                             8.48206583410427206e-01,  9.37273392400705951e-01,
                             9.87992518020485377e-01};
constexpr double kW15[15] = {3.07532419961186465e-02, 7.03660474881080689e-02,
                             1.07159220467171773e-01, 1.39570677926153908e-01,
                             1.66269205816993781e-01, 1.86161000015561878e-01,
                             1.98431485327111246e-01, 2.02578241925560898e-01,
                             1.98431485327111246e-01, 1.86161000015561878e-01,
                             1.66269205816993781e-01, 1.39570677926153908e-01,
                             1.07159220467171773e-01, 7.03660474881080689e-02,
                             3.07532419961186465e-02};

constexpr double kX16[16] = {-9.89400934991649939e-01, -9.44575023073232600e-01,
                             -8.65631202387831755e-01, -7.55404408355002999e-01,
                             -6.17876244402643771e-01, -4.58016777657227370e-01,
                             -2.81603550779258915e-01, -9.50125098376374544e-02,
                             9.50125098376374544e-02,  2.81603550779258915e-01,
                             4.58016777657227370e-01,  6.17876244402643771e-01,
                             7.55404408355002999e-01,  8.65631202387831755e-01,
                             9.44575023073232600e-01,  9.89400934991649939e-01};
constexpr double kW16[16] = {2.71524594117540374e-02, 6.22535239386477063e-02,
                             9.51585116824925914e-02, 1.24628971255534030e-01,
                             1.49595988816576764e-01, 1.69156519395002619e-01,
                             1.82603415044923612e-01, 1.89450610455068585e-01,
                             1.89450610455068585e-01, 1.82603415044923612e-01,
                             1.69156519395002619e-01, 1.49595988816576764e-01,
                             1.24628971255534030e-01, 9.51585116824925914e-02,
                             6.22535239386477063e-02, 2.71524594117540374e-02};

template <typename Value, typename Fn>
struct Adaptive {
    const Fn& f;
    std::size_t evals = 0;
    std::size_t max_evals;

    Value segment(double a, double b, double tol, int depth, double* err_out) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        Value g7{}, g15{};
        for (int i = 0; i < 7; ++i) g7 += kW7[i] * f(mid + half * kX7[i]);
        for (int i = 0; i < 15; ++i) g15 += kW15[i] * f(mid + half * kX15[i]);
        evals += 22;
        g7 *= half;
        g15 *= half;
        const double err = std::abs(g15 - g7);
        if (err <= tol || half * 2 < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) {
            *err_out = err;
            return g15;
        }
        if (depth <= 0 || evals > max_evals)
            throw QuadratureError("adaptive quadrature did not converge", std::abs(g15), err);
        double e1 = 0, e2 = 0;
        const Value left = segment(a, mid, 0.5 * tol, depth - 1, &e1);
        const Value right = segment(mid, b, 0.5 * tol, depth - 1, &e2);
        *err_out = e1 + e2;
        return left + right;
    }
};

} // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth) {
    Adaptive<double, std::function<double(double)>> ad{f, 0, 20'000'000};
    double err = 0;
    return ad.segment(a, b, tol, max_depth, &err);
}

std::complex<double> adaptive_quad_complex(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, double tol, int max_depth) {
    Adaptive<std::complex<double>, std::function<std::complex<double>(double)>> ad{f, 0,
                                                                                   20'000'000};
    double err = 0;
    return ad.segment(a, b, tol, max_depth, &err);
}

double gauss16(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 16; ++i) s += kW16[i] * f(mid + half * kX16[i]);
    return s * half;
}

PanelRule gauss16_panel(double a, double b) {
    PanelRule r;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) {
        r.node[i] = mid + half * kX16[i];
        r.weight[i] = half * kW16[i];
    }
    return r;
}

} // namespace bethe
