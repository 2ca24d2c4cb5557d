#ifndef BETHELAB_SUM_RULES_HPP
#define BETHELAB_SUM_RULES_HPP

#include <functional>
#include <string>

#include "bethelab/disk.hpp"
#include "bethelab/tree.hpp"

namespace bethe {

// Eigenvalue weight at energy |E| >= 2*sqrt(2):
//   Y(E) = (r^2 - r^-2)/4 - ln r,  r = (|E| - sqrt(E^2-8)) / (2*sqrt(2));
// even in E, zero at the band edge, negative and decreasing beyond it.
double Y_func(double E);

// Integral of sqrt(8 - lambda^2) * g(lambda) over the band, via the
// substitution lambda = 2*sqrt(2)*cos(theta) that makes the weight smooth:
// equals 8 * int_0^pi sin^2(theta) g(2*sqrt(2) cos theta) dtheta.
double band_quadrature(const std::function<double(double)>& g, double tol);

// k = 0: (1/2pi) int_{-pi}^{pi} ln|f(e^{i theta})| dtheta
// k = 2: (1/pi)  int_{-pi}^{pi} ln|f(e^{i theta})| cos(2 theta) dtheta
double circle_log_integral(const TreePotential& v, int weight_k, double tol);

enum class RuleDirection { Equality, LhsGeRhs };

struct SumRuleReport {
    std::string rule_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    RuleDirection direction = RuleDirection::Equality;
    double quadrature_tol = 0.0;

    bool passes(double tol) const {
        return direction == RuleDirection::Equality ? std::abs(residual) <= tol
                                                    : residual >= -tol;
    }
};

struct RuleTolerances {
    double quadrature = 1e-8;
    double root_search = 1e-10;
};

// order 0:  -ln(2)/2   = circle_log_integral(0) + sum ln|z_k| - sum ln|p_k|
// order 2:  V(O)^2 / 4 = circle_log_integral(2) + sum(|z_k|^2 - |z_k|^-2)/2
//                                               - sum(|p_k|^2 - |p_k|^-2)/2
SumRuleReport coefficient_sumrule(const TreePotential& v, int order,
                                  const RuleTolerances& tols = {});

// (1/8pi) I[ln pi s'_O] = (1/8pi) I[ln pi (s'_1 + s'_2)/2] - V(O)^2/8
//                         + sum Y(zero energies) - sum Y(pole energies),
// I[g] = band integral of sqrt(8 - lambda^2) g.
SumRuleReport step_by_step(const TreePotential& v, const RuleTolerances& tols = {});

// (1/pi) I[ln pi s'_O] >= (1/pi)(I[ln pi s'_1] + I[ln pi s'_2])/2 - V(O)^2
SumRuleReport jensen_split(const TreePotential& v, const RuleTolerances& tols = {});

// (1/pi) I[ln pi s'_O] >= (1/pi) I[ln(pi s'_1 / 2)] - V(O)^2
SumRuleReport single_branch_bound(const TreePotential& v, const RuleTolerances& tols = {});

// S(sigma_0 | sigma) = (1/4pi) I[ln(4 pi s' / sqrt(8 - lambda^2))] <= 0;
// returns -inf if the density collapses at a quadrature node.
double relative_entropy(const TreePotential& v, double tol = 1e-8);

// S(sigma_0 | sigma^(k)) >= -1/4 * weighted_l2(truncate(V,k), k)
SumRuleReport entropy_bound(const TreePotential& v, int truncation_depth,
                            const RuleTolerances& tols = {});

} // namespace bethe

#endif
