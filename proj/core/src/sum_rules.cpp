#include "bethelab/sum_rules.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bethelab/errors.hpp"
#include "bethelab/quadrature.hpp"

namespace bethe {

double Y_func(double E) {
    const double a = std::abs(E);
    if (a < kBandEdge) throw std::domain_error("Y_func: |E| must be >= 2*sqrt(2)");
    if (a == kBandEdge) return 0.0;
    const double r = (a - std::sqrt(E * E - 8.0)) / (2.0 * kSqrt2);
    return (r * r - 1.0 / (r * r)) / 4.0 - std::log(r);
}

double band_quadrature(const std::function<double(double)>& g, double tol) {
    return 8.0 * adaptive_quad(
                     [&](double th) {
                         const double s = std::sin(th);
                         return s * s * g(kBandEdge * std::cos(th));
                     },
                     0.0, M_PI, tol / 8.0);
}

double circle_log_integral(const TreePotential& v, int weight_k, double tol) {
    if (weight_k != 0 && weight_k != 2)
        throw std::invalid_argument("circle_log_integral: weight must be 0 or 2");
    const double integral = adaptive_quad(
        [&](double th) {
            const double lf = boundary_log_abs_f(v, th);
            return weight_k == 0 ? lf : lf * std::cos(2.0 * th);
        },
        0.0, M_PI, tol);
    // ln|f| is even in theta, so [0,pi] carries half of the full integral
    return weight_k == 0 ? integral / M_PI : 2.0 * integral / M_PI;
}

namespace {

// ln(pi sigma'(lambda)) for the density of the given (branch) potential
double log_pi_density(const TreePotential& v, double lambda) {
    const double im = m_root(v, SpectralPoint::on_band(lambda)).value.imag();
    return std::log(im);  // pi sigma' = Im m
}

double sum_Y(const std::vector<double>& energies) {
    double s = 0.0;
    for (double e : energies) s += Y_func(e);
    return s;
}

} // namespace

SumRuleReport coefficient_sumrule(const TreePotential& v, int order, const RuleTolerances& tols) {
    if (order != 0 && order != 2)
        throw std::invalid_argument("coefficient_sumrule: order must be 0 or 2");
    const ZeroPoleData zp = find_zeros_poles(v, tols.root_search);
    SumRuleReport rep;
    rep.direction = RuleDirection::Equality;
    rep.quadrature_tol = tols.quadrature;
    if (order == 0) {
        rep.rule_id = "eq1";
        rep.lhs = -0.5 * std::log(2.0);
        double roots = 0.0;
        for (double r : zp.zeros_pos) roots += std::log(std::abs(r));
        for (double r : zp.zeros_neg) roots += std::log(std::abs(r));
        for (double r : zp.poles_pos) roots -= std::log(std::abs(r));
        for (double r : zp.poles_neg) roots -= std::log(std::abs(r));
        rep.rhs = circle_log_integral(v, 0, tols.quadrature) + roots;
    } else {
        rep.rule_id = "eq2";
        const double v0 = v.value_at_root();
        rep.lhs = v0 * v0 / 4.0;
        auto term = [](double r) { return (r * r - 1.0 / (r * r)) / 2.0; };
        double roots = 0.0;
        for (double r : zp.zeros_pos) roots += term(r);
        for (double r : zp.zeros_neg) roots += term(r);
        for (double r : zp.poles_pos) roots -= term(r);
        for (double r : zp.poles_neg) roots -= term(r);
        rep.rhs = circle_log_integral(v, 2, tols.quadrature) + roots;
    }
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

SumRuleReport step_by_step(const TreePotential& v, const RuleTolerances& tols) {
    const ZeroPoleData zp = find_zeros_poles(v, tols.root_search);
    const TreePotential b1 = v.branch(1), b2 = v.branch(2);
    const double v0 = v.value_at_root();

    const double lhs =
        band_quadrature([&](double l) { return log_pi_density(v, l); }, tols.quadrature) /
        (8.0 * M_PI);
    // ln(pi (s1+s2)/2) = ln(Im m_1 + Im m_2) - ln 2
    const double branch_int = band_quadrature(
        [&](double l) {
            const SpectralPoint p = SpectralPoint::on_band(l);
            const double im1 = m_root(b1, p).value.imag();
            const double im2 = m_root(b2, p).value.imag();
            return std::log(im1 + im2) - std::log(2.0);
        },
        tols.quadrature);

    SumRuleReport rep;
    rep.rule_id = "step_by_step";
    rep.direction = RuleDirection::Equality;
    rep.quadrature_tol = tols.quadrature;
    rep.lhs = lhs;
    rep.rhs = branch_int / (8.0 * M_PI) - v0 * v0 / 8.0 +
              sum_Y(zp.zero_energies_pos) + sum_Y(zp.zero_energies_neg) -
              sum_Y(zp.pole_energies_pos) - sum_Y(zp.pole_energies_neg);
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

SumRuleReport jensen_split(const TreePotential& v, const RuleTolerances& tols) {
    const TreePotential b1 = v.branch(1), b2 = v.branch(2);
    const double v0 = v.value_at_root();
    SumRuleReport rep;
    rep.rule_id = "jensen_split";
    rep.direction = RuleDirection::LhsGeRhs;
    rep.quadrature_tol = tols.quadrature;
    rep.lhs = band_quadrature([&](double l) { return log_pi_density(v, l); }, tols.quadrature) /
              M_PI;
    const double i1 =
        band_quadrature([&](double l) { return log_pi_density(b1, l); }, tols.quadrature);
    const double i2 =
        band_quadrature([&](double l) { return log_pi_density(b2, l); }, tols.quadrature);
    rep.rhs = 0.5 * (i1 + i2) / M_PI - v0 * v0;
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

SumRuleReport single_branch_bound(const TreePotential& v, const RuleTolerances& tols) {
    const TreePotential b1 = v.branch(1);
    const double v0 = v.value_at_root();
    SumRuleReport rep;
    rep.rule_id = "single_branch";
    rep.direction = RuleDirection::LhsGeRhs;
    rep.quadrature_tol = tols.quadrature;
    rep.lhs = band_quadrature([&](double l) { return log_pi_density(v, l); }, tols.quadrature) /
              M_PI;
    const double i1 = band_quadrature(
        [&](double l) { return log_pi_density(b1, l) - std::log(2.0); }, tols.quadrature);
    rep.rhs = i1 / M_PI - v0 * v0;
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

double relative_entropy(const TreePotential& v, double tol) {
    bool collapsed = false;
    // ln(sigma'/sigma'_0) as a difference of logs; both densities vanish like
    // sin(theta) at the edges, the ratio does not
    const double integral = band_quadrature(
        [&](double l) {
            const double im = m_root(v, SpectralPoint::on_band(l)).value.imag();
            if (im <= 0.0 || !std::isfinite(im)) {
                collapsed = true;
                return 0.0;
            }
            const double im0 = std::sqrt(8.0 - l * l) / 4.0;  // Im m_0 on the band
            return std::log(im) - std::log(im0);
        },
        tol);
    if (collapsed) return -std::numeric_limits<double>::infinity();
    return integral / (4.0 * M_PI);
}

SumRuleReport entropy_bound(const TreePotential& v, int truncation_depth,
                            const RuleTolerances& tols) {
    const TreePotential vk = truncate(v, truncation_depth);
    SumRuleReport rep;
    rep.rule_id = "entropy_bound";
    rep.direction = RuleDirection::LhsGeRhs;
    rep.quadrature_tol = tols.quadrature;
    rep.lhs = relative_entropy(vk, tols.quadrature);
    rep.rhs = -0.25 * weighted_l2(vk, truncation_depth).value;
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

} // namespace bethe
