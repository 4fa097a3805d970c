#ifndef HEXOPT_OPTIMIZE_HPP
#define HEXOPT_OPTIMIZE_HPP

/// Power-density maximization at fixed pressure drop and fixed target
/// effectiveness. The effectiveness equality constraint is eliminated by a
/// monotone root-solve for the channel length, reducing each problem to a
/// bounded one-dimensional maximization over the plate spacing; a brute-force
/// logarithmic grid oracle provides an independent check of the fast path.

#include <optional>
#include <stdexcept>
#include <string>

#include "hexopt/thermal.hpp"

namespace hexopt {

/// Thrown when the target effectiveness is at or above the high-NTU ceiling
/// for every admissible spacing: no channel length can reach the target.
class Infeasible : public std::runtime_error {
public:
    Infeasible(double effectiveness_limit, const std::string& what)
        : std::runtime_error(what), limit_(effectiveness_limit) {}

    /// The ceiling (M+1)/(2M+1) that blocked the target.
    double effectiveness_limit() const { return limit_; }

private:
    double limit_;
};

/// Unconstrained sizing with the wall thickness tied to the spacing,
/// t* = gamma * D*, so the optimizer cannot drive the wall to zero.
struct GammaLinkedProblem {
    double eps_d;   ///< target effectiveness, in (0.5, 1)
    double gamma;   ///< thickness-to-spacing ratio, > 0
    MaterialSpec material;
    FluidProperties fluid;
    ReferenceScales scales;
    FlowConstants consts;

    GammaLinkedProblem(double eps_d, double gamma, MaterialSpec material,
                       FluidProperties fluid, ReferenceScales scales,
                       FlowConstants consts);
};

/// Sizing at a fixed manufacturable wall thickness t* = t_d/t_ref with an
/// optional fouling floor on the spacing, D* >= d_min_star (0 disables it).
struct ThicknessConstrainedProblem {
    double eps_d;       ///< target effectiveness, in (0.5, 1)
    double t_d_star;    ///< fixed nondimensional thickness, > 0
    double d_min_star;  ///< minimum nondimensional spacing, >= 0
    MaterialSpec material;
    FluidProperties fluid;
    ReferenceScales scales;
    FlowConstants consts;

    ThicknessConstrainedProblem(double eps_d, double t_d_star, double d_min_star,
                                MaterialSpec material, FluidProperties fluid,
                                ReferenceScales scales, FlowConstants consts);
};

struct OptimizationResult {
    NondimDesign design;
    DesignPerformance performance;
    bool fouling_active = false;
    /// Q relative to a baseline design; set by callers that have a baseline.
    std::optional<double> improvement_factor;
};

/// Search bounds, shared by the fast path and the oracle.
inline constexpr double kSpacingSearchMax = 1e6;   ///< upper bound on D*
inline constexpr double kLengthSearchMin = 1e-6;   ///< lower bound on L*
inline constexpr double kLengthSearchMax = 1e9;    ///< upper bound on L*

/// The unique L* at which the design (D*, t*) reaches effectiveness eps_d,
/// found by bracketing + bisection on log L*; residual |eps - eps_d| < 1e-12.
/// Throws Infeasible when eps_d >= effectiveness_limit(M(D*, t*)).
double solve_length_for_effectiveness(double d_star, double t_star, double eps_d,
                                      const MaterialSpec& material,
                                      const FluidProperties& fluid,
                                      const ReferenceScales& scales,
                                      const FlowConstants& consts);

/// The spacing at which the high-NTU ceiling equals eps_d for fixed t*:
/// D*^3 = fRe (k_w/k) (1/(psi Pi)) t* (2 eps_d - 1)/(1 - eps_d).
/// Below this spacing the target is unreachable at any length.
double feasibility_threshold(double t_star, double eps_d,
                             const MaterialSpec& material,
                             const FluidProperties& fluid,
                             const ReferenceScales& scales,
                             const FlowConstants& consts);

/// Maximize Q over (D*, L*) with t* = gamma D* and effectiveness pinned to
/// eps_d. Since the effectiveness is pinned, this maximizes (D*/L*(D*))^2 over
/// the feasible spacing interval. fouling_active is always false here.
OptimizationResult maximize_gamma_linked(const GammaLinkedProblem& problem);

/// Maximize Q at fixed t* with D* >= d_min_star. Computes the unconstrained
/// interior optimum first; if it falls below the floor, clamps to the floor,
/// re-solves L*, and flags the fouling constraint active.
OptimizationResult maximize_thickness_constrained(const ThicknessConstrainedProblem& problem);

/// Brute-force verification oracle: logarithmic grid over the feasible
/// spacing interval with an exact L* root-solve per point, argmax of Q, then
/// three rounds of grid refinement around the incumbent. Ties within 1e-12
/// relative prefer the smaller spacing. grid_resolution must be >= 64.
OptimizationResult grid_oracle(const GammaLinkedProblem& problem, int grid_resolution);
OptimizationResult grid_oracle(const ThicknessConstrainedProblem& problem, int grid_resolution);

/// q / q_baseline. Throws when the baseline is not strictly positive.
double improvement_factor(double q_nondim, double q_baseline);

}  // namespace hexopt

#endif  // HEXOPT_OPTIMIZE_HPP
