#include "bethelab/block.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bethelab/errors.hpp"
#include "bethelab/quadrature.hpp"

namespace bethe {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Cplx = std::complex<double>;

BlockOperator::BlockOperator(MatrixXd h1, MatrixXd h2, MatrixXd v)
    : H1(std::move(h1)), H2(std::move(h2)), V(std::move(v)) {
    const long n = H1.rows();
    if (H1.cols() != n || H2.rows() != n || H2.cols() != n || V.rows() != n || V.cols() != n)
        throw std::invalid_argument("BlockOperator: blocks must be square and of equal size");
    const double scale = H1.norm() + H2.norm() + 1.0;
    if ((H1 - H1.transpose()).norm() > 1e-12 * scale ||
        (H2 - H2.transpose()).norm() > 1e-12 * scale)
        throw std::invalid_argument("BlockOperator: H1 and H2 must be symmetric");
}

MatrixXd BlockOperator::assemble() const {
    const long n = block_size();
    MatrixXd H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = H1;
    H.topRightCorner(n, n) = V;
    H.bottomLeftCorner(n, n) = V.transpose();
    H.bottomRightCorner(n, n) = H2;
    return H;
}

MatrixXd M_spectral(const MatrixXd& H, double b_eps) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("M_spectral: eigensolver failed");
    MatrixXd M = MatrixXd::Zero(H.rows(), H.cols());
    for (long i = 0; i < H.rows(); ++i) {
        const double l = es.eigenvalues()(i);
        if (l <= b_eps) {
            const double w = (l - b_eps) * (l - b_eps);
            M.noalias() += w * es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
        }
    }
    return M;
}

namespace {

struct ContourNode {
    Cplx z;
    Cplx weight;  // quadrature weight times dz direction
};

void append_segment(std::vector<ContourNode>& nodes, Cplx a, Cplx b, int panels) {
    const Cplx dir = b - a;
    for (int p = 0; p < panels; ++p) {
        const PanelRule rule = gauss16_panel(double(p) / panels, double(p + 1) / panels);
        for (int i = 0; i < 16; ++i)
            nodes.push_back({a + rule.node[i] * dir, rule.weight[i] * dir});
    }
}

// Right side split at the real-axis crossing, panels shrinking geometrically
// toward it.
void append_right_side(std::vector<ContourNode>& nodes, double b, double h, int panels_half) {
    std::vector<double> cuts{0.0};
    for (int j = panels_half - 1; j >= 1; --j) cuts.push_back(h * std::ldexp(1.0, -j));
    cuts.push_back(h);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        // ascending through the crossing: [-y1,-y0] mirrored, then [y0,y1]
        const PanelRule rule = gauss16_panel(cuts[s], cuts[s + 1]);
        for (int i = 0; i < 16; ++i) {
            nodes.push_back({Cplx(b, rule.node[i]), Cplx(0.0, rule.weight[i])});
            nodes.push_back({Cplx(b, -rule.node[i]), Cplx(0.0, rule.weight[i])});
        }
    }
}

std::vector<ContourNode> contour_nodes(const ContourSpec& c) {
    if (c.half_height <= 1e-6) throw ContourError("contour: half_height too small");
    if (c.left >= c.b_eps) throw ContourError("contour: left side must lie left of b_eps");
    const int panels = std::max(2, c.nodes_per_side / 16);
    std::vector<ContourNode> nodes;
    nodes.reserve(static_cast<std::size_t>(4) * panels * 16);
    append_right_side(nodes, c.b_eps, c.half_height, std::max(2, panels / 2));
    append_segment(nodes, Cplx(c.b_eps, c.half_height), Cplx(c.left, c.half_height), panels);
    append_segment(nodes, Cplx(c.left, c.half_height), Cplx(c.left, -c.half_height), panels);
    append_segment(nodes, Cplx(c.left, -c.half_height), Cplx(c.b_eps, -c.half_height), panels);
    return nodes;
}

VectorXd eigenvalues_of(const MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(A, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

void validate_contour(const BlockOperator& block, const ContourSpec& c) {
    if (c.left >= c.b_eps || c.half_height <= 1e-6)
        throw ContourError("contour rectangle is degenerate");
    const VectorXd full = eigenvalues_of(block.assemble());
    const VectorXd h1 = eigenvalues_of(block.H1);
    auto check = [&](const VectorXd& eigs) {
        for (long i = 0; i < eigs.size(); ++i) {
            const double l = eigs(i);
            if (l < c.b_eps && l <= c.left + 1e-6)
                throw ContourError("contour does not enclose an eigenvalue below b_eps");
            if (std::abs(l - c.left) <= 1e-6)
                throw ContourError("eigenvalue within 1e-6 of the left contour side");
        }
    };
    check(full);
    check(h1);
}

} // namespace

MatrixXd M_contour(const BlockOperator& block, const ContourSpec& contour) {
    validate_contour(block, contour);
    const MatrixXd H = block.assemble();
    const long n = H.rows();
    const MatrixXcd I = MatrixXcd::Identity(n, n);
    MatrixXcd acc = MatrixXcd::Zero(n, n);
    for (const ContourNode& node : contour_nodes(contour)) {
        const Cplx reg = (node.z - contour.b_eps) * (node.z - contour.b_eps);
        const MatrixXcd R = (node.z * I - H.cast<Cplx>()).partialPivLu().solve(I);
        acc.noalias() += (node.weight * reg) * R;
    }
    acc /= Cplx(0.0, 2.0 * M_PI);
    const MatrixXd M = acc.real();
    return 0.5 * (M + M.transpose());
}

MatrixXd S_matrix(const BlockOperator& block, double b_eps) {
    const long n = block.block_size();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es1(block.H1);
    const VectorXd h2_eigs = eigenvalues_of(block.H2);
    if (h2_eigs.minCoeff() <= b_eps)
        throw SeparationError("S_matrix: spectrum of H2 must lie strictly above b_eps");
    MatrixXd S = MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i) {
        const double l = es1.eigenvalues()(i);
        if (l > b_eps) continue;
        if ((h2_eigs.array() - l).abs().minCoeff() < 1e-12)
            throw SeparationError("S_matrix: H2 - lambda_i is singular");
        const double w = (l - b_eps) * (l - b_eps);
        // V (H2 - l)^-1 through a transposed solve, H2 symmetric
        const MatrixXd VR = (block.H2 - l * MatrixXd::Identity(n, n))
                                .partialPivLu()
                                .solve(block.V.transpose())
                                .transpose();
        S.noalias() += w * es1.eigenvectors().col(i) * (es1.eigenvectors().col(i).transpose() * VR);
    }
    return S;
}

BlockOperator hat_operator(const BlockOperator& block, double b_eps, double eps) {
    if (eps <= 0) throw std::invalid_argument("hat_operator: eps must be > 0");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(block.H1);
    const long n = block.block_size();
    MatrixXd H1hat = MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i) {
        const double l = es.eigenvalues()(i);
        const double v = l <= b_eps ? l : b_eps + eps / 4.0;
        H1hat.noalias() += v * es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
    }
    return BlockOperator(0.5 * (H1hat + H1hat.transpose()), block.H2, block.V);
}

DecompositionReport T_decomposition(const BlockOperator& block, const ContourSpec& contour) {
    const long n = block.block_size();
    DecompositionReport rep;
    rep.M = M_contour(block, contour);
    rep.S = S_matrix(block, contour.b_eps);
    rep.M0 = MatrixXd::Zero(2 * n, 2 * n);
    rep.M0.topLeftCorner(n, n) = M_spectral(block.H1, contour.b_eps);
    rep.M0.topRightCorner(n, n) = -rep.S;
    rep.M0.bottomLeftCorner(n, n) = -rep.S.transpose();
    rep.T = rep.M - rep.M0;

    // T blocks by their contour definitions, second order in V:
    //   T11 = -(1/2pi i) Int (z-b)^2 R1 V R2 V^T A11 dz   (and cyclically)
    const MatrixXcd I1 = MatrixXcd::Identity(n, n);
    const MatrixXcd I2 = MatrixXcd::Identity(2 * n, 2 * n);
    const MatrixXcd H = block.assemble().cast<Cplx>();
    const MatrixXcd H1 = block.H1.cast<Cplx>(), H2 = block.H2.cast<Cplx>();
    const MatrixXcd V = block.V.cast<Cplx>();
    MatrixXcd t11 = MatrixXcd::Zero(n, n), t12 = MatrixXcd::Zero(n, n),
              t22 = MatrixXcd::Zero(n, n);
    for (const ContourNode& node : contour_nodes(contour)) {
        const Cplx reg = (node.z - contour.b_eps) * (node.z - contour.b_eps);
        const MatrixXcd R = (H - node.z * I2).partialPivLu().solve(I2);
        const MatrixXcd R1 = (H1 - node.z * I1).partialPivLu().solve(I1);
        const MatrixXcd R2 = (H2 - node.z * I1).partialPivLu().solve(I1);
        const Cplx w = node.weight * reg;
        t11.noalias() += w * (R1 * V * R2 * V.adjoint() * R.topLeftCorner(n, n));
        t12.noalias() += w * (R1 * V * R2 * V.adjoint() * R.topRightCorner(n, n));
        t22.noalias() += w * (R2 * V.adjoint() * R1 * V * R.bottomRightCorner(n, n));
    }
    const Cplx norm = Cplx(0.0, -2.0 * M_PI);  // the leading minus sign and 1/(2 pi i)
    rep.T11 = (t11 / norm).real();
    rep.T12 = (t12 / norm).real();
    rep.T22 = (t22 / norm).real();

    MatrixXd assembled(2 * n, 2 * n);
    assembled.topLeftCorner(n, n) = rep.T11;
    assembled.topRightCorner(n, n) = rep.T12;
    assembled.bottomLeftCorner(n, n) = rep.T12.transpose();
    assembled.bottomRightCorner(n, n) = rep.T22;
    rep.residual_contour = (assembled - rep.T).cwiseAbs().maxCoeff();

    rep.schatten1_T = schatten_norm(rep.T, 1);
    rep.schatten2_T = schatten_norm(rep.T, 2);
    return rep;
}

double block_inverse_identity(const MatrixXd& A1, const MatrixXd& A2, const MatrixXd& B) {
    const long n = A1.rows(), m = A2.rows();
    if (A1.cols() != n || A2.cols() != m || B.rows() != n || B.cols() != m)
        throw std::invalid_argument("block_inverse_identity: incompatible shapes");
    auto inverse_checked = [](const MatrixXd& A, const char* name) {
        Eigen::FullPivLU<MatrixXd> lu(A);
        lu.setThreshold(1e-12);
        if (!lu.isInvertible())
            throw SingularMatrixError(std::string("block_inverse_identity: ") + name +
                                      " is numerically singular");
        return lu.inverse();
    };
    const MatrixXd A1i = inverse_checked(A1, "A1");
    const MatrixXd A2i = inverse_checked(A2, "A2");
    const MatrixXd S1i = inverse_checked(A1 - B * A2i * B.transpose(), "A1 - B A2^-1 B^T");
    const MatrixXd S2i = inverse_checked(A2 - B.transpose() * A1i * B, "A2 - B^T A1^-1 B");

    MatrixXd Z(n + m, n + m), Zi(n + m, n + m);
    Z.topLeftCorner(n, n) = A1;
    Z.topRightCorner(n, m) = B;
    Z.bottomLeftCorner(m, n) = B.transpose();
    Z.bottomRightCorner(m, m) = A2;
    Zi.topLeftCorner(n, n) = S1i;
    Zi.topRightCorner(n, m) = -A1i * B * S2i;
    Zi.bottomLeftCorner(m, n) = -A2i * B.transpose() * S1i;
    Zi.bottomRightCorner(m, m) = S2i;
    return (Z * Zi - MatrixXd::Identity(n + m, n + m)).cwiseAbs().maxCoeff();
}

double schatten_norm(const MatrixXd& A, int p) {
    Eigen::JacobiSVD<MatrixXd> svd(A);
    const VectorXd s = svd.singularValues();
    if (p == 1) return s.sum();
    if (p == 2) return std::sqrt(s.squaredNorm());
    throw std::invalid_argument("schatten_norm: only p = 1, 2 supported");
}

BlockOperator random_separated_block(long n, std::uint64_t seed, double coupling) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto random_sym = [&](double lo, double hi) {
        MatrixXd G(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) G(i, j) = unit(rng);
        const MatrixXd Q = Eigen::HouseholderQR<MatrixXd>(G).householderQ();
        VectorXd eigs(n);
        for (long i = 0; i < n; ++i) eigs(i) = lo + 0.5 * (hi - lo) * (unit(rng) + 1.0);
        const MatrixXd A = Q * eigs.asDiagonal() * Q.transpose();
        return MatrixXd(0.5 * (A + A.transpose()));
    };
    const MatrixXd H1 = random_sym(-3.0, 1.0);
    const MatrixXd H2 = random_sym(4.0, 8.0);
    MatrixXd V(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) V(i, j) = unit(rng);
    V *= coupling / schatten_norm(V, 2);
    return BlockOperator(H1, H2, V);
}

} // namespace bethe
