#include "bethelab/strip.hpp"

#include <cmath>
#include <stdexcept>

#include "bethelab/errors.hpp"
#include "bethelab/quadrature.hpp"

namespace bethe {

double mode_coupling(const StripPotential& Q, int l, int j, double x, double tol) {
    if (l < 1 || j < 1) throw std::invalid_argument("mode_coupling: l, j must be >= 1");
    return (2.0 / M_PI) * adaptive_quad(
                              [&](double y) {
                                  return Q(x, y) * std::sin(l * y) * std::sin(j * y);
                              },
                              0.0, M_PI, tol);
}

Eigen::MatrixXd strip_matrix(const StripPotential& Q, int n_modes, const StripGrid& grid,
                             long max_dim) {
    if (n_modes < 1) throw std::invalid_argument("strip_matrix: n_modes must be >= 1");
    if (grid.interior_points < 3)
        throw std::invalid_argument("strip_matrix: grid needs >= 3 interior points");
    const long G = grid.interior_points;
    const long dim = static_cast<long>(n_modes) * G;
    if (dim > max_dim)
        throw ResourceError("strip_matrix: dimension " + std::to_string(dim) +
                            " exceeds the configured limit");
    const double h = grid.length / (G + 1);
    const double inv_h2 = 1.0 / (h * h);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    for (int l = 1; l <= n_modes; ++l) {
        const long off_l = static_cast<long>(l - 1) * G;
        // channel block: Dirichlet second difference + n^2 threshold + Q_ll
        for (long i = 0; i < G; ++i) {
            const double x = (i + 1) * h;
            A(off_l + i, off_l + i) = 2.0 * inv_h2 + double(l) * double(l) +
                                      mode_coupling(Q, l, l, x);
            if (i + 1 < G) {
                A(off_l + i, off_l + i + 1) = -inv_h2;
                A(off_l + i + 1, off_l + i) = -inv_h2;
            }
        }
        for (int j = l + 1; j <= n_modes; ++j) {
            const long off_j = static_cast<long>(j - 1) * G;
            for (long i = 0; i < G; ++i) {
                const double x = (i + 1) * h;
                const double q = mode_coupling(Q, l, j, x);
                A(off_l + i, off_j + i) = q;
                A(off_j + i, off_l + i) = q;
            }
        }
    }
    return A;
}

} // namespace bethe
