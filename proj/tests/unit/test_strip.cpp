#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "bethelab/errors.hpp"
#include "bethelab/strip.hpp"

using namespace bethe;

namespace {

// plain composite Simpson oracle for the sine-sine integral
double coupling_oracle(const StripPotential& Q, int l, int j, double x) {
    const int n = 4096;  // even
    const double h = M_PI / n;
    auto f = [&](double y) { return Q(x, y) * std::sin(l * y) * std::sin(j * y); };
    double acc = f(0.0) + f(M_PI);
    for (int k = 1; k < n; ++k) acc += f(k * h) * (k % 2 ? 4.0 : 2.0);
    return (2.0 / M_PI) * acc * h / 3.0;
}

} // namespace

TEST_CASE("mode coupling: sine orthogonality for y-independent Q") {
    const StripPotential q = [](double x, double) { return std::exp(-x); };
    for (double x : {0.0, 0.7, 2.0}) {
        for (int l = 1; l <= 3; ++l) {
            for (int j = 1; j <= 3; ++j) {
                const double want = (l == j) ? std::exp(-x) : 0.0;
                CHECK(mode_coupling(q, l, j, x) == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("mode coupling: e^-x cos y couples neighboring channels only") {
    const StripPotential q = [](double x, double y) { return std::exp(-x) * std::cos(y); };
    for (double x : {0.25, 1.0}) {
        for (int l = 1; l <= 4; ++l) {
            for (int j = 1; j <= 4; ++j) {
                const double want = (std::abs(l - j) == 1) ? 0.5 * std::exp(-x) : 0.0;
                const double got = mode_coupling(q, l, j, x);
                CHECK(got == doctest::Approx(want).epsilon(1e-11));
                CHECK(got == doctest::Approx(coupling_oracle(q, l, j, x)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("mode coupling is symmetric in (l, j)") {
    const StripPotential q = [](double x, double y) {
        return std::exp(-0.5 * x) * (0.4 * std::cos(y) + 0.3 * std::cos(2 * y) + 0.1 * y);
    };
    for (int l = 1; l <= 3; ++l)
        for (int j = l + 1; j <= 4; ++j)
            CHECK(mode_coupling(q, l, j, 0.8) ==
                  doctest::Approx(mode_coupling(q, j, l, 0.8)).epsilon(1e-12));
    CHECK_THROWS_AS(mode_coupling(q, 0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("free strip matrix: block structure and the channel threshold") {
    const StripPotential zero = [](double, double) { return 0.0; };
    const double L = 150.0;

    const Eigen::MatrixXd A = strip_matrix(zero, 2, {L, 40});
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    // off-diagonal coupling blocks vanish
    CHECK(A.block(0, 40, 40, 40).cwiseAbs().maxCoeff() < 1e-12);
    // channel blocks differ by the threshold shift n^2: 4 - 1 = 3
    CHECK((A.block(40, 40, 40, 40) - A.block(0, 0, 40, 40) -
           3.0 * Eigen::MatrixXd::Identity(40, 40))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // grid refinement pushes the lowest eigenvalue to 1 + pi^2/L^2 + O(h^2);
    // Richardson in h^2 lands at the channel threshold 1
    double e1 = 0, e2 = 0;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(strip_matrix(zero, 1, {L, 300}),
                                                          Eigen::EigenvaluesOnly);
        e1 = es.eigenvalues().minCoeff();
    }
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(strip_matrix(zero, 1, {L, 600}),
                                                          Eigen::EigenvaluesOnly);
        e2 = es.eigenvalues().minCoeff();
    }
    const double h1 = L / 301, h2 = L / 601;
    const double r = (h1 * h1) / (h2 * h2);
    const double extrapolated = (r * e2 - e1) / (r - 1.0);
    CHECK(std::abs(extrapolated - 1.0) < 1e-3);
    CHECK(e2 > 1.0);  // discrete eigenvalue approaches the threshold from above
}

TEST_CASE("y-independent Q keeps the strip matrix block-diagonal") {
    const StripPotential q = [](double x, double) { return 0.3 * std::exp(-x); };
    const Eigen::MatrixXd A = strip_matrix(q, 3, {10.0, 12});
    for (int l = 0; l < 3; ++l)
        for (int j = 0; j < 3; ++j)
            if (l != j) CHECK(A.block(12 * l, 12 * j, 12, 12).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two channels expose thresholds near 1 and 4") {
    const StripPotential zero = [](double, double) { return 0.0; };
    const Eigen::MatrixXd A = strip_matrix(zero, 2, {60.0, 240});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff();
    CHECK(std::abs(emin - 1.0) < 0.01);
    // the free channel blocks differ by exactly 3I, so the second channel
    // opens at emin + 3, just above the threshold 4
    double nearest = 1e9;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        nearest = std::min(nearest, std::abs(es.eigenvalues()(i) - (emin + 3.0)));
    CHECK(nearest < 1e-9);
    CHECK(std::abs(emin + 3.0 - 4.0) < 0.01);
}

TEST_CASE("oversized assemblies are refused") {
    const StripPotential zero = [](double, double) { return 0.0; };
    CHECK_THROWS_AS(strip_matrix(zero, 8, {100.0, 1000}), ResourceError);
    CHECK_THROWS_AS(strip_matrix(zero, 1, {100.0, 2}), std::invalid_argument);
}
