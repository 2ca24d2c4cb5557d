#ifndef BETHELAB_QUADRATURE_HPP
#define BETHELAB_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace bethe {

// Adaptive quadrature on [a,b] with a Gauss 7/15 pair and recursive bisection.
// The tolerance is absolute; throws QuadratureError (carrying the best
// estimate) if the interval budget is exhausted.  Handles integrable
// endpoint/log singularities by digging in.
double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth = 40);

std::complex<double> adaptive_quad_complex(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, double tol, int max_depth = 40);

// Fixed 16-point Gauss-Legendre rule on [a,b].
double gauss16(const std::function<double(double)>& f, double a, double b);

// Nodes/weights of the 16-point rule mapped to [a,b] (for quadratures whose
// integrand evaluation is a linear solve rather than a scalar call).
struct PanelRule {
    double node[16];
    double weight[16];
};
PanelRule gauss16_panel(double a, double b);

} // namespace bethe

#endif
