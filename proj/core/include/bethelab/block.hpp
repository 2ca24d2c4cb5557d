#ifndef BETHELAB_BLOCK_HPP
#define BETHELAB_BLOCK_HPP

#include <Eigen/Dense>

namespace bethe {

// Self-adjoint 2x2 block operator [[H1, V], [V^T, H2]] on R^n + R^n.
struct BlockOperator {
    Eigen::MatrixXd H1, H2, V;

    BlockOperator(Eigen::MatrixXd h1, Eigen::MatrixXd h2, Eigen::MatrixXd v);
    long block_size() const { return H1.rows(); }
    Eigen::MatrixXd assemble() const;
};

// Rectangle [left, b_eps] x [-half_height, half_height], traversed
// counterclockwise; the right side crosses the real axis exactly at b_eps,
// where the (z - b_eps)^2 factor regularizes the resolvent.
struct ContourSpec {
    double b_eps = 0.0;
    double left = 0.0;
    double half_height = 1.0;
    int nodes_per_side = 512;
};

// (H - b_eps)^2 P_(-inf, b_eps] via the eigendecomposition of H.
Eigen::MatrixXd M_spectral(const Eigen::MatrixXd& H, double b_eps);

// Same object as the contour integral (1/2pi i) Int (z-b)^2 (z-H)^-1 dz over
// the rectangle, with Gauss-Legendre panels graded toward the real-axis
// crossing where the integrand has a |z - b| kink.  Throws ContourError if a
// side other than the regularized right one passes within 1e-6 of an
// eigenvalue of H or H1, or if the rectangle does not enclose all eigenvalues
// below b_eps.
Eigen::MatrixXd M_contour(const BlockOperator& block, const ContourSpec& contour);

// S = sum_{lambda_i <= b_eps} (lambda_i - b_eps)^2 u_i u_i^T V (H2 - lambda_i)^-1
// over eigenpairs of H1; requires the spectrum of H2 strictly above b_eps.
Eigen::MatrixXd S_matrix(const BlockOperator& block, double b_eps);

// H1 with the spectral part above b_eps flattened to the constant
// b_eps + eps/4; leaves S and M0 invariant.
BlockOperator hat_operator(const BlockOperator& block, double b_eps, double eps);

struct DecompositionReport {
    Eigen::MatrixXd M;    // contour value of (H-b)^2 P
    Eigen::MatrixXd M0;   // [[ (H1-b)^2 P1, -S ], [ -S^T, 0 ]]
    Eigen::MatrixXd S;    // the S_matrix block
    Eigen::MatrixXd T;    // M - M0
    Eigen::MatrixXd T11, T12, T22;  // second-order contour integrals
    double schatten1_T = 0.0;
    double schatten2_T = 0.0;
    double residual_contour = 0.0;  // max |assembled T-terms - T|
};

// Splits M = M0 + T and cross-checks T against its block-wise contour
// definition; Schatten norms of T from its singular values.
DecompositionReport T_decomposition(const BlockOperator& block, const ContourSpec& contour);

// Assembles the closed-form inverse of Z = [[A1, B], [B^T, A2]] through the
// Schur complements and returns max |Z Z_formula^-1 - I|.
double block_inverse_identity(const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2,
                              const Eigen::MatrixXd& B);

// p = 1: sum of singular values; p = 2: Frobenius.
double schatten_norm(const Eigen::MatrixXd& A, int p);

// Seeded test operator with separated spectra: H1 random symmetric with
// eigenvalues in [-3, 1], H2 in [4, 8], V scaled to ||V||_2 = coupling.
BlockOperator random_separated_block(long n, std::uint64_t seed, double coupling);

} // namespace bethe

#endif
