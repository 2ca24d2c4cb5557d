#ifndef BETHELAB_STRIP_HPP
#define BETHELAB_STRIP_HPP

#include <Eigen/Dense>
#include <functional>

namespace bethe {

using StripPotential = std::function<double(double x, double y)>;

// Transverse coupling coefficient of the strip operator:
//   Q_lj(x) = (2/pi) int_0^pi Q(x,y) sin(l y) sin(j y) dy,  l, j >= 1.
double mode_coupling(const StripPotential& Q, int l, int j, double x, double tol = 1e-10);

// Dirichlet grid on [0, length] with interior_points interior nodes,
// spacing h = length / (interior_points + 1).
struct StripGrid {
    double length = 1.0;
    int interior_points = 3;
};

// Dense matrix of the strip operator truncated to n_modes transverse channels:
// diagonal blocks are the second-difference Dirichlet Laplacian plus
// diag(Q_nn(x_i)) + n^2 I, off-diagonal blocks diag(Q_lj(x_i)).
// Dimension n_modes * interior_points; refuses oversized requests.
Eigen::MatrixXd strip_matrix(const StripPotential& Q, int n_modes, const StripGrid& grid,
                             long max_dim = 4096);

} // namespace bethe

#endif
