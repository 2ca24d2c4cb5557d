// Acceptance suite: every check below pins its tolerance in code and prints
// one PASS/FAIL line.  Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "bethelab/block.hpp"
#include "bethelab/disk.hpp"
#include "bethelab/green.hpp"
#include "bethelab/io.hpp"
#include "bethelab/runner.hpp"
#include "bethelab/strip.hpp"
#include "bethelab/sum_rules.hpp"
#include "bethelab/tree_matrix.hpp"

using namespace bethe;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    int id;
    const char* label;
    Clock::time_point start = Clock::now();
    bool ok = true;
    std::string metrics;
    double budget_seconds = 0.0;  // 0: no runtime budget

    Criterion(int id_, const char* label_, double budget = 0.0)
        : id(id_), label(label_), budget_seconds(budget) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            metrics += (metrics.empty() ? "" : "; ") + what + " VIOLATED";
        }
    }
    void metric(const std::string& name, double value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.3g", name.c_str(), value);
        metrics += (metrics.empty() ? "" : ", ") + std::string(buf);
    }
    void finish() {
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (budget_seconds > 0 && secs > budget_seconds) {
            ok = false;
            metrics += ", runtime budget exceeded";
        }
        std::printf("%s  criterion %d: %s (%s) [%.2fs]\n", ok ? "PASS" : "FAIL", id, label,
                    metrics.c_str(), secs);
        if (!ok) ++failures;
    }
};

TreePotential site(double v0) {
    return TreePotential::finite_table({{VertexAddress::root(), v0}});
}

void criterion1_free_constants() {
    Criterion c(1, "free-case constants", 1.0);
    const TreePotential zero;
    double max_err = 0.0;
    for (int j = 0; j < 2048; ++j) {
        const double lambda = -kBandEdge + 2 * kBandEdge * (j + 1) / 2049.0;
        max_err = std::max(max_err, std::abs(density(zero, lambda).density -
                                             std::sqrt(8 - lambda * lambda) / (4 * M_PI)));
    }
    c.metric("density_err", max_err);
    c.require(max_err < 1e-10, "max density error < 1e-10");

    const double mass = band_quadrature([](double) { return 1.0 / (4.0 * M_PI); }, 1e-10);
    c.metric("norm_err", std::abs(mass - 1.0));
    c.require(std::abs(mass - 1.0) < 1e-8, "free density normalization < 1e-8");

    const double eq1_free = circle_log_integral(zero, 0, 1e-12) + 0.5 * std::log(2.0);
    c.metric("eq1_res", std::abs(eq1_free));
    c.require(std::abs(eq1_free) < 1e-10, "free eq1 residual < 1e-10");
    c.finish();
}

void criterion2_recursion_vs_oracle() {
    Criterion c(2, "recursion vs finite-tree resolvent", 10.0);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pot = TreePotential::seeded_random(42 + seed, {1.2, 0.9, 0.7, 0.5});
        const int R = pot.support_radius();
        for (const Complex lambda : {Complex(0, 1), Complex(1, 1), Complex(0, 3)}) {
            const Complex m = m_root(pot, SpectralPoint::off_band(lambda)).value;
            worst = std::max(worst, std::abs(m - tree_resolvent_root(pot, R + 40, lambda)));
        }
    }
    c.metric("worst_gap", worst);
    c.require(worst < 1e-8, "oracle gap < 1e-8");
    c.finish();
}

void criterion3_jacobi_equivalence() {
    Criterion c(3, "Jacobi equivalence for symmetric potentials", 5.0);
    const std::vector<std::vector<double>> diags = {
        {1.0},
        {0.5, -0.5},
        {1.0, 0.5, 0.25},
        {-0.8, 0.4, -0.2, 0.1},
        {2.0, 1.0, 0.5, 0.25, 0.125},
    };
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> re(-4.0, 4.0), im(0.02, 4.0);
    double worst = 0.0;
    for (const auto& q : diags) {
        const auto pot = TreePotential::symmetric(q);
        for (int k = 0; k < 100; ++k) {
            const SpectralPoint p = SpectralPoint::off_band(Complex(re(rng), im(rng)));
            worst = std::max(worst, std::abs(m_root(pot, p).value - jacobi_m(q, p).value));
        }
    }
    c.metric("worst_gap", worst);
    c.require(worst < 1e-12, "pointwise gap < 1e-12");
    c.finish();
}

void criterion4_asymptotics() {
    Criterion c(4, "asymptotic coefficients (1, V(O), 2+V(O)^2)");
    double worst = 0.0;
    for (double v0 : {0.0, 1.0, -2.0}) {
        const auto pot = v0 == 0.0 ? TreePotential() : site(v0);
        const AsymptoticCoeffs a = asymptotic_coeffs(pot);
        worst = std::max({worst, std::abs(a.c1 - 1.0), std::abs(a.c2 - v0),
                          std::abs(a.c3 - 2.0 - v0 * v0)});
    }
    c.metric("worst_err", worst);
    c.require(worst < 1e-6, "coefficient error < 1e-6");
    c.finish();
}

void criterion5_sum_rule_equalities() {
    Criterion c(5, "sum-rule equalities eq1/eq2/step-by-step", 30.0);
    RuleTolerances tols;  // quadrature 1e-8
    double worst = 0.0;
    bool interlaced = true;
    for (double v0 : {0.5, 1.0, 3.0}) {
        const TreePotential pot = site(v0);
        worst = std::max(worst, std::abs(coefficient_sumrule(pot, 0, tols).residual));
        worst = std::max(worst, std::abs(coefficient_sumrule(pot, 2, tols).residual));
        worst = std::max(worst, std::abs(step_by_step(pot, tols).residual));
        interlaced = interlaced && interlacing_ok(find_zeros_poles(pot, tols.root_search));
    }
    c.metric("worst_residual", worst);
    c.require(worst < 1e-6, "equality residual < 1e-6");
    c.require(interlaced, "interlacing predicate");
    c.finish();
}

void criterion6_inequalities() {
    Criterion c(6, "inequalities: jensen, single-branch, entropy bound", 120.0);
    RuleTolerances tols;
    double worst_violation = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<double> env;
        for (int n = 0; n <= 6; ++n) env.push_back(1.5 * std::pow(0.6, n));
        const auto pot = TreePotential::seeded_random(1000 + seed, env);
        for (const SumRuleReport& r :
             {jensen_split(pot, tols), single_branch_bound(pot, tols),
              entropy_bound(pot, 6, tols)}) {
            worst_violation = std::max(worst_violation, -r.residual);
        }
    }
    c.metric("worst_violation", worst_violation);
    c.require(worst_violation < 1e-6, "one-sided tolerance 1e-6");

    // single site saturates S >= -v^2/4 at the n = 0 term
    const double s = relative_entropy(site(1.0), 1e-10);
    c.metric("single_site_gap", std::abs(s + 0.25));
    c.require(s >= -0.25 - 1e-6, "S >= -1/4");
    c.require(std::abs(s + 0.25) < 1e-6, "n = 0 bound saturated");
    c.finish();
}

void criterion7_block_lab() {
    Criterion c(7, "block lab: contour, decomposition, hat, scaling", 60.0);
    const ContourSpec contour{2.0, -6.0, 3.0, 512};
    double worst_spectral = 0.0, worst_assembly = 0.0, worst_hat = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const BlockOperator blk = random_separated_block(4, seed, 0.5);
        const DecompositionReport rep = T_decomposition(blk, contour);
        worst_spectral = std::max(
            worst_spectral,
            (rep.M - M_spectral(blk.assemble(), contour.b_eps)).cwiseAbs().maxCoeff());
        worst_assembly = std::max(worst_assembly, rep.residual_contour);

        const BlockOperator hat = hat_operator(blk, contour.b_eps, 1.0);
        Eigen::MatrixXd M0hat = Eigen::MatrixXd::Zero(8, 8);
        M0hat.topLeftCorner(4, 4) = M_spectral(hat.H1, contour.b_eps);
        const Eigen::MatrixXd Shat = S_matrix(hat, contour.b_eps);
        M0hat.topRightCorner(4, 4) = -Shat;
        M0hat.bottomLeftCorner(4, 4) = -Shat.transpose();
        worst_hat = std::max(worst_hat, (M0hat - rep.M0).cwiseAbs().maxCoeff());
    }
    c.metric("contour_vs_spectral", worst_spectral);
    c.metric("t_assembly", worst_assembly);
    c.metric("hat_m0", worst_hat);
    c.require(worst_spectral < 1e-8, "contour vs spectral < 1e-8");
    c.require(worst_assembly < 1e-7, "T assembly < 1e-7");
    c.require(worst_hat < 1e-12, "hat M0 invariance < 1e-12");

    const BlockOperator base = random_separated_block(4, 12, 1.0);
    auto t1_at = [&](double s) {
        return T_decomposition(BlockOperator(base.H1, base.H2, s * base.V), contour)
            .schatten1_T;
    };
    const double dev = std::abs((t1_at(1e-2) / 1e-4) / (t1_at(1e-3) / 1e-6) - 1.0);
    c.metric("scaling_dev", dev);
    c.require(dev < 0.1, "||T(sV)||_1/s^2 stable within 10%");
    c.finish();
}

void criterion8_strip() {
    Criterion c(8, "strip assembly: couplings and channel threshold");
    const StripPotential xonly = [](double x, double) { return std::exp(-x); };
    const StripPotential expcos = [](double x, double y) { return std::exp(-x) * std::cos(y); };
    double worst = 0.0;
    for (double x : {0.5, 1.0}) {
        for (int l = 1; l <= 3; ++l) {
            for (int j = 1; j <= 3; ++j) {
                worst = std::max(worst, std::abs(mode_coupling(xonly, l, j, x) -
                                                 (l == j ? std::exp(-x) : 0.0)));
                worst = std::max(
                    worst, std::abs(mode_coupling(expcos, l, j, x) -
                                    (std::abs(l - j) == 1 ? 0.5 * std::exp(-x) : 0.0)));
            }
        }
    }
    c.metric("coupling_err", worst);
    c.require(worst < 1e-10, "coupling coefficients < 1e-10");

    const StripPotential zero = [](double, double) { return 0.0; };
    const double L = 150.0;
    auto emin = [&](int G) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(strip_matrix(zero, 1, {L, G}),
                                                          Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    };
    const double e1 = emin(500), e2 = emin(1000);
    const double h1 = L / 501, h2 = L / 1001;
    const double r = (h1 * h1) / (h2 * h2);
    const double extrapolated = (r * e2 - e1) / (r - 1.0);
    c.metric("threshold_err", std::abs(extrapolated - 1.0));
    c.require(std::abs(extrapolated - 1.0) < 1e-3, "channel threshold within 1e-3");
    c.finish();
}

void criterion9_determinism(const std::string& configs_dir) {
    Criterion c(9, "deterministic reports for every shipped config");
    std::vector<std::string> configs;
    for (const auto& entry : fs::directory_iterator(configs_dir))
        if (entry.path().extension() == ".json") configs.push_back(entry.path().string());
    std::sort(configs.begin(), configs.end());
    c.require(!configs.empty(), "shipped configs present");
    int compared = 0;
    for (const auto& path : configs) {
        const ValidationResult v = validate_config(read_file(path));
        if (!v.ok()) {
            c.require(false, "config " + path + " validates");
            continue;
        }
        const std::string stem = fs::path(path).stem().string();
        RunOptions a, b;
        a.out_dir_override =
            (fs::temp_directory_path() / ("bethelab_acc_a_" + stem)).string();
        b.out_dir_override =
            (fs::temp_directory_path() / ("bethelab_acc_b_" + stem)).string();
        fs::remove_all(a.out_dir_override);
        fs::remove_all(b.out_dir_override);
        const RunOutcome ra = run_experiment(*v.config, a);
        const RunOutcome rb = run_experiment(*v.config, b);
        c.require(ra.passed && rb.passed, "run of " + stem + " passes");
        c.require(ra.files.size() == rb.files.size(), stem + ": same file lists");
        for (std::size_t i = 0; i < ra.files.size() && i < rb.files.size(); ++i) {
            const bool same = read_file(ra.out_dir + "/" + ra.files[i].name) ==
                              read_file(rb.out_dir + "/" + rb.files[i].name);
            c.require(same, stem + ": " + ra.files[i].name + " byte-identical");
            ++compared;
        }
    }
    c.metric("files_compared", compared);
    c.finish();
}

} // namespace

int main(int argc, char** argv) {
    const std::string configs_dir = argc > 1 ? argv[1] : "configs";
    criterion1_free_constants();
    criterion2_recursion_vs_oracle();
    criterion3_jacobi_equivalence();
    criterion4_asymptotics();
    criterion5_sum_rule_equalities();
    criterion6_inequalities();
    criterion7_block_lab();
    criterion8_strip();
    criterion9_determinism(configs_dir);
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
