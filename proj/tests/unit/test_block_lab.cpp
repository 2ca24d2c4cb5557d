#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "bethelab/block.hpp"
#include "bethelab/errors.hpp"

using namespace bethe;
using Eigen::MatrixXd;
using Cplx = std::complex<double>;

namespace {

MatrixXd diag2(double a, double b) {
    MatrixXd m = MatrixXd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// Trapezoid rule on a circle enclosing the spectrum of H1 only: an
// independent route to S = -(1/2pi i) Int (z-b)^2 R1 V R2 dz.
MatrixXd s_matrix_circle_oracle(const BlockOperator& blk, double b_eps) {
    const long n = blk.block_size();
    const Cplx center(-1.0, 0.0);
    const double radius = 3.2;
    const int nodes = 2048;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const Cplx z = center + radius * Cplx(std::cos(th), std::sin(th));
        const Cplx dz = radius * Cplx(-std::sin(th), std::cos(th)) * (2.0 * M_PI / nodes);
        const Eigen::MatrixXcd R1 =
            (blk.H1.cast<Cplx>() - z * I).partialPivLu().solve(I);
        const Eigen::MatrixXcd R2 =
            (blk.H2.cast<Cplx>() - z * I).partialPivLu().solve(I);
        acc += dz * (z - b_eps) * (z - b_eps) * (R1 * blk.V.cast<Cplx>() * R2);
    }
    return (-acc / Cplx(0, 2.0 * M_PI)).real();
}

} // namespace

TEST_CASE("spectral calculus examples") {
    CHECK((M_spectral(diag2(0, 5), 2.0) - diag2(4, 0)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(M_spectral(diag2(3, 5), 2.0).cwiseAbs().maxCoeff() < 1e-14);  // empty projector

    // V = 0: block-diagonal spectral calculus
    const BlockOperator blk(diag2(0, 1), diag2(5, 6), MatrixXd::Zero(2, 2));
    const MatrixXd M = M_spectral(blk.assemble(), 2.0);
    MatrixXd want = MatrixXd::Zero(4, 4);
    want(0, 0) = 4.0;
    want(1, 1) = 1.0;
    CHECK((M - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("contour integral agrees with the spectral projector") {
    const ContourSpec contour{2.0, -6.0, 3.0, 512};
    {
        const BlockOperator blk(diag2(0, 1), diag2(5, 6), MatrixXd::Zero(2, 2));
        MatrixXd want = MatrixXd::Zero(4, 4);
        want(0, 0) = 4.0;
        want(1, 1) = 1.0;
        CHECK((M_contour(blk, contour) - want).cwiseAbs().maxCoeff() < 1e-8);
    }
    for (std::uint64_t seed : {1, 2, 3}) {
        const BlockOperator blk = random_separated_block(4, seed, 0.5);
        const MatrixXd diff = M_contour(blk, contour) - M_spectral(blk.assemble(), 2.0);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("an eigenvalue exactly at b_eps contributes nothing") {
    const BlockOperator blk(diag2(0, 2.0), diag2(5, 6), MatrixXd::Zero(2, 2));
    const ContourSpec contour{2.0, -6.0, 3.0, 512};
    const MatrixXd Ms = M_spectral(blk.assemble(), 2.0);
    CHECK(Ms(1, 1) == 0.0);  // (2 - 2)^2 kills it
    CHECK((M_contour(blk, contour) - Ms).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("contour validation rejects bad rectangles") {
    const BlockOperator blk = random_separated_block(3, 4, 0.3);
    CHECK_THROWS_AS(M_contour(blk, ContourSpec{2.0, 0.5, 3.0, 512}), ContourError);
    // an eigenvalue within 1e-6 of the left side
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(blk.assemble(), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    CHECK_THROWS_AS(M_contour(blk, ContourSpec{2.0, lmin + 5e-7, 3.0, 512}), ContourError);
}

TEST_CASE("S matrix: closed forms and the circle oracle") {
    {
        const BlockOperator blk(diag2(0, 1), diag2(5, 6), MatrixXd::Zero(2, 2));
        CHECK(S_matrix(blk, 2.0).cwiseAbs().maxCoeff() == 0.0);
    }
    {
        MatrixXd h1(1, 1), h2(1, 1), v(1, 1);
        h1 << 0.0;
        h2 << 5.0;
        v << 1.0;
        const BlockOperator blk(h1, h2, v);
        CHECK(S_matrix(blk, 2.0)(0, 0) == doctest::Approx(0.8).epsilon(1e-14));
    }
    for (std::uint64_t seed : {5, 6}) {
        const BlockOperator blk = random_separated_block(3, seed, 0.7);
        const MatrixXd diff = S_matrix(blk, 2.0) - s_matrix_circle_oracle(blk, 2.0);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-8);
    }
    // spectrum of H2 must sit strictly above b_eps
    const BlockOperator bad(diag2(0, 1), diag2(1.5, 6), MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(S_matrix(bad, 2.0), SeparationError);
}

TEST_CASE("T decomposition: difference vs contour assembly") {
    const ContourSpec contour{2.0, -6.0, 3.0, 512};
    {
        const BlockOperator blk(diag2(0, 1), diag2(5, 6), MatrixXd::Zero(2, 2));
        const DecompositionReport rep = T_decomposition(blk, contour);
        CHECK(rep.T.cwiseAbs().maxCoeff() < 1e-8);
        CHECK(rep.schatten1_T < 1e-8);
        CHECK(rep.schatten2_T < 1e-8);
    }
    for (std::uint64_t seed : {8, 9}) {
        const BlockOperator blk = random_separated_block(4, seed, 0.4);
        const DecompositionReport rep = T_decomposition(blk, contour);
        CHECK(rep.residual_contour < 1e-7);
        CHECK((rep.M - (rep.M0 + rep.T)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(rep.schatten2_T <= rep.schatten1_T + 1e-15);
        // M is the positive spectral object; its top-left block dominates M0's
        CHECK(rep.M.rows() == 8);
    }
}

TEST_CASE("||T(sV)||_1 scales as the square of the coupling") {
    const ContourSpec contour{2.0, -6.0, 3.0, 512};
    const BlockOperator base = random_separated_block(4, 12, 1.0);
    auto t1_at = [&](double s) {
        const BlockOperator blk(base.H1, base.H2, s * base.V);
        return T_decomposition(blk, contour).schatten1_T;
    };
    const double r2 = t1_at(1e-2) / 1e-4;
    const double r3 = t1_at(1e-3) / 1e-6;
    CHECK(std::abs(r2 / r3 - 1.0) < 0.1);
}

TEST_CASE("hat operator invariance") {
    {
        // spectrum already below b_eps: nothing changes
        const BlockOperator blk(diag2(0, 1), diag2(5, 6), 0.1 * MatrixXd::Identity(2, 2));
        const BlockOperator hat = hat_operator(blk, 2.0, 1.0);
        CHECK((hat.H1 - blk.H1).cwiseAbs().maxCoeff() < 1e-13);
    }
    {
        const BlockOperator blk(diag2(0, 10), diag2(5, 6), 0.1 * MatrixXd::Identity(2, 2));
        const BlockOperator hat = hat_operator(blk, 2.0, 1.0);
        CHECK((hat.H1 - diag2(0, 2.25)).cwiseAbs().maxCoeff() < 1e-13);
        // S and M0 pieces depend only on the spectral data of H1 below b_eps
        CHECK((S_matrix(hat, 2.0) - S_matrix(blk, 2.0)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((M_spectral(hat.H1, 2.0) - M_spectral(blk.H1, 2.0)).cwiseAbs().maxCoeff() <
              1e-12);
    }
    for (std::uint64_t seed : {13, 14}) {
        const BlockOperator blk = random_separated_block(4, seed, 0.6);
        const BlockOperator hat = hat_operator(blk, 2.0, 1.0);
        CHECK((S_matrix(hat, 2.0) - S_matrix(blk, 2.0)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((M_spectral(hat.H1, 2.0) - M_spectral(blk.H1, 2.0)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("separated spectra: eigenvalue shifts are O(||V||^2)") {
    const BlockOperator base = random_separated_block(4, 20, 1.0);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es0(
        BlockOperator(base.H1, base.H2, MatrixXd::Zero(4, 4)).assemble(),
        Eigen::EigenvaluesOnly);
    auto max_shift = [&](double s) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(
            BlockOperator(base.H1, base.H2, s * base.V).assemble(), Eigen::EigenvaluesOnly);
        return (es.eigenvalues() - es0.eigenvalues()).cwiseAbs().maxCoeff();
    };
    const double q1 = max_shift(1e-2) / 1e-4;
    const double q2 = max_shift(1e-3) / 1e-6;
    CHECK(q1 == doctest::Approx(q2).epsilon(0.05));
    CHECK(q1 < 2.0);  // the spectral gap is ~3, second order theory caps the shift
}

TEST_CASE("block inverse identity") {
    {
        MatrixXd a1 = 2.0 * MatrixXd::Identity(3, 3);
        MatrixXd a2 = 3.0 * MatrixXd::Identity(2, 2);
        CHECK(block_inverse_identity(a1, a2, MatrixXd::Zero(3, 2)) < 1e-14);
    }
    {
        MatrixXd a1(3, 3), a2(3, 3), b(3, 3);
        a1 << 4, 1, 0, 1, 5, 2, 0, 2, 6;
        a2 << 7, -1, 0, -1, 8, 1, 0, 1, 9;
        b << 0.5, 0.1, -0.2, 0.3, -0.4, 0.2, 0.1, 0.0, 0.6;
        CHECK(block_inverse_identity(a1, a2, b) < 1e-10);
    }
    // A1 = A2 = B = I makes the first Schur complement vanish
    CHECK_THROWS_AS(block_inverse_identity(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2),
                                           MatrixXd::Identity(2, 2)),
                    SingularMatrixError);
}
