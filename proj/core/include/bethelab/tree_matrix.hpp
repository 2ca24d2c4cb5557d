#ifndef BETHELAB_TREE_MATRIX_HPP
#define BETHELAB_TREE_MATRIX_HPP

#include <Eigen/Dense>
#include <complex>

#include "bethelab/tree.hpp"

namespace bethe {

// Matrix of H = adjacency + diag(V) on the depth-truncated half-tree,
// vertices in breadth-first order (root 0, children of i at 2i+1, 2i+2).
// Dimension 2^(depth+1) - 1; refuses depths whose dense matrix would not fit
// in max_bytes.
Eigen::MatrixXd finite_tree_matrix(const TreePotential& v, int depth,
                                   std::size_t max_bytes = std::size_t(1) << 31);

// Resolvent diagonal entry ((H_d - lambda)^-1 delta_root, delta_root) of the
// depth-d truncated tree, computed exactly at any depth by folding the free
// subtrees below the potential support into equivalent half-line chains with
// hopping sqrt(2).  Serves as the independent oracle for the recursion.
std::complex<double> tree_resolvent_root(const TreePotential& v, int depth,
                                         std::complex<double> lambda);

// Number of eigenvalues of the depth-truncated tree matrix strictly below
// sigma, by Sylvester inertia of the fill-in-free tree factorization.  Levels
// below the potential support share one pivot per level, so the cost is
// O(2^support_radius + depth).  sigma must not itself be an eigenvalue.
long count_eigenvalues_below(const TreePotential& v, int depth, double sigma);

} // namespace bethe

#endif
