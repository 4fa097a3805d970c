#include "hexopt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace hexopt {

namespace {

constexpr double kThresholdMargin = 1.0001;  // keep the search strictly feasible
constexpr double kActiveSetTol = 1e-6;       // relative, for the fouling flag
constexpr double kTieTol = 1e-12;            // relative; ties prefer smaller D*
constexpr int kScanPoints = 160;
constexpr int kOracleRounds = 3;

void check_eps_d(double eps_d) {
    if (!(eps_d > 0.5 && eps_d < 1.0)) {
        throw std::invalid_argument(
            "target effectiveness must lie in (0.5, 1); the high-NTU ceiling "
            "analysis does not apply at or below 0.5");
    }
}

// M at the threshold satisfies (M+1)/(2M+1) = eps_d.
double critical_m(double eps_d) {
    return (1.0 - eps_d) / (2.0 * eps_d - 1.0);
}

// Reduced 1-D objective over the spacing: the length is eliminated by the
// effectiveness root-solve, the thickness follows either a fixed value or the
// gamma rule.
struct ReducedObjective {
    double eps_d;
    double fixed_thickness;  // < 0 selects the gamma rule
    double gamma;
    const MaterialSpec& material;
    const FluidProperties& fluid;
    const ReferenceScales& scales;
    const FlowConstants& consts;

    double thickness_at(double d_star) const {
        return fixed_thickness >= 0.0 ? fixed_thickness : gamma * d_star;
    }

    // Root of eps(L*) = eps_d on [kLengthSearchMin, kLengthSearchMax], or
    // nullopt when the target is unreachable there (above the ceiling, or the
    // required length exceeds the bound).
    std::optional<double> try_length(double d_star) const {
        const double t_star = thickness_at(d_star);
        const double m = axial_conduction_parameter(
            NondimDesign(1.0, d_star, t_star), fluid, material, scales, consts);
        if (eps_d >= effectiveness_limit(m)) {
            return std::nullopt;
        }
        const auto eps_at = [&](double log_l) {
            const NondimDesign d(std::exp(log_l), d_star, t_star);
            return effectiveness_kroeger(
                number_of_transfer_units(d, fluid, material, scales, consts), m);
        };
        double lo = std::log(kLengthSearchMin);
        double hi = std::log(kLengthSearchMax);
        if (eps_at(hi) < eps_d || eps_at(lo) >= eps_d) {
            return std::nullopt;
        }
        for (int i = 0; i < 120 && hi - lo > 1e-15; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (eps_at(mid) < eps_d) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return std::exp(0.5 * (lo + hi));
    }

    // Q at the pinned effectiveness; 0 marks an unreachable spacing.
    double q(double d_star) const {
        const auto l_star = try_length(d_star);
        if (!l_star) {
            return 0.0;
        }
        const NondimDesign d(*l_star, d_star, thickness_at(d_star));
        const double eps = effectiveness_kroeger(
            number_of_transfer_units(d, fluid, material, scales, consts),
            axial_conduction_parameter(d, fluid, material, scales, consts));
        return power_density_nondim(d, eps, scales, consts);
    }
};

// Coarse log-grid scan followed by golden-section refinement of the argmax
// cell. Returns the interior maximizer of obj.q over [lo, hi].
double maximize_spacing(const ReducedObjective& obj, double lo, double hi) {
    const double xlo = std::log(lo);
    const double xhi = std::log(hi);
    std::vector<double> xs(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        xs[i] = xlo + (xhi - xlo) * i / (kScanPoints - 1);
    }
    int best = -1;
    double best_q = 0.0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double qi = obj.q(std::exp(xs[i]));
        if (qi > best_q * (1.0 + kTieTol)) {
            best_q = qi;
            best = i;
        }
    }
    if (best < 0) {
        const double t_hi = obj.thickness_at(hi);
        const double m_hi = axial_conduction_parameter(
            NondimDesign(1.0, hi, t_hi), obj.fluid, obj.material, obj.scales, obj.consts);
        throw Infeasible(effectiveness_limit(m_hi),
                         "no spacing within the search bound reaches the target "
                         "effectiveness for material '" + obj.material.name + "'");
    }
    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, kScanPoints - 1)];
    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = obj.q(std::exp(c));
    double fd = obj.q(std::exp(d));
    for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = obj.q(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = obj.q(std::exp(d));
        }
    }
    return std::exp(0.5 * (a + b));
}

OptimizationResult finish(const ReducedObjective& obj, double d_star, bool fouling,
                          const MaterialSpec& material, const FluidProperties& fluid,
                          const ReferenceScales& scales, const FlowConstants& consts) {
    const double t_star = obj.thickness_at(d_star);
    const double l_star = solve_length_for_effectiveness(
        d_star, t_star, obj.eps_d, material, fluid, scales, consts);
    OptimizationResult result{NondimDesign(l_star, d_star, t_star),
                              DesignPerformance{}, fouling, std::nullopt};
    result.performance = evaluate(result.design, fluid, material, scales, consts);
    return result;
}

// Shared oracle body. Grid over [lo, hi] in log space with lo pinned exactly
// (it may be the fouling floor), argmax with smaller-spacing tie-break, then
// re-grid the incumbent's +-1-cell bracket.
OptimizationResult oracle_impl(const ReducedObjective& obj, double lo, double hi,
                               bool has_floor, double floor, int resolution,
                               const MaterialSpec& material, const FluidProperties& fluid,
                               const ReferenceScales& scales, const FlowConstants& consts) {
    if (resolution < 64) {
        throw std::invalid_argument("grid_oracle: grid_resolution must be >= 64");
    }
    std::vector<double> grid(resolution);
    double best_d = 0.0;
    for (int round = 0; round <= kOracleRounds; ++round) {
        const double xlo = std::log(lo);
        const double xhi = std::log(hi);
        for (int i = 0; i < resolution; ++i) {
            grid[i] = std::exp(xlo + (xhi - xlo) * i / (resolution - 1));
        }
        grid.front() = lo;  // keep the floor (or bracket edge) exact
        grid.back() = hi;
        int best = -1;
        double best_q = 0.0;
        for (int i = 0; i < resolution; ++i) {
            const double qi = obj.q(grid[i]);
            if (qi > best_q * (1.0 + kTieTol)) {
                best_q = qi;
                best = i;
            }
        }
        if (best < 0) {
            const double t_hi = obj.thickness_at(hi);
            const double m_hi = axial_conduction_parameter(
                NondimDesign(1.0, hi, t_hi), fluid, material, scales, consts);
            throw Infeasible(effectiveness_limit(m_hi),
                             "oracle grid found no feasible spacing for material '" +
                                 material.name + "'");
        }
        best_d = grid[best];
        lo = grid[std::max(best - 1, 0)];
        hi = grid[std::min(best + 1, resolution - 1)];
    }
    const bool fouling =
        has_floor && (best_d - floor) <= kActiveSetTol * floor;
    return finish(obj, best_d, fouling, material, fluid, scales, consts);
}

}  // namespace

GammaLinkedProblem::GammaLinkedProblem(double eps_d_, double gamma_,
                                       MaterialSpec material_, FluidProperties fluid_,
                                       ReferenceScales scales_, FlowConstants consts_)
    : eps_d(eps_d_),
      gamma(gamma_),
      material(std::move(material_)),
      fluid(std::move(fluid_)),
      scales(scales_),
      consts(consts_) {
    check_eps_d(eps_d);
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("GammaLinkedProblem: gamma must be positive");
    }
}

ThicknessConstrainedProblem::ThicknessConstrainedProblem(
    double eps_d_, double t_d_star_, double d_min_star_, MaterialSpec material_,
    FluidProperties fluid_, ReferenceScales scales_, FlowConstants consts_)
    : eps_d(eps_d_),
      t_d_star(t_d_star_),
      d_min_star(d_min_star_),
      material(std::move(material_)),
      fluid(std::move(fluid_)),
      scales(scales_),
      consts(consts_) {
    check_eps_d(eps_d);
    if (!(t_d_star > 0.0)) {
        throw std::invalid_argument("ThicknessConstrainedProblem: t_d_star must be positive");
    }
    if (!(d_min_star >= 0.0)) {
        throw std::invalid_argument("ThicknessConstrainedProblem: d_min_star must be non-negative");
    }
}

double solve_length_for_effectiveness(double d_star, double t_star, double eps_d,
                                      const MaterialSpec& material,
                                      const FluidProperties& fluid,
                                      const ReferenceScales& scales,
                                      const FlowConstants& consts) {
    if (!(eps_d > 0.0 && eps_d < 1.0)) {
        throw std::invalid_argument(
            "solve_length_for_effectiveness: eps_d must lie in (0, 1)");
    }
    // M does not depend on the length; evaluate it once with a placeholder.
    const double m = axial_conduction_parameter(NondimDesign(1.0, d_star, t_star),
                                                fluid, material, scales, consts);
    const double limit = effectiveness_limit(m);
    if (eps_d >= limit) {
        throw Infeasible(limit, "target effectiveness " + std::to_string(eps_d) +
                                    " is at or above the high-NTU ceiling " +
                                    std::to_string(limit) + " for material '" +
                                    material.name + "'");
    }
    const ReducedObjective obj{eps_d, t_star, 0.0, material, fluid, scales, consts};
    const auto l_star = obj.try_length(d_star);
    if (!l_star) {
        throw std::runtime_error(
            "solve_length_for_effectiveness: required length exceeds the search bound");
    }
    return *l_star;
}

double feasibility_threshold(double t_star, double eps_d,
                             const MaterialSpec& material,
                             const FluidProperties& fluid,
                             const ReferenceScales& scales,
                             const FlowConstants& consts) {
    check_eps_d(eps_d);
    if (!(t_star >= 0.0)) {
        throw std::invalid_argument("feasibility_threshold: t_star must be non-negative");
    }
    const double cubed = consts.f_re *
                         (material.wall_conductivity / fluid.thermal_conductivity) /
                         (scales.psi * scales.pi_group) * t_star / critical_m(eps_d);
    return std::cbrt(cubed);
}

OptimizationResult maximize_gamma_linked(const GammaLinkedProblem& problem) {
    // With t* = gamma D*, M = fRe (k_w/k) gamma / (psi Pi D*^2); the ceiling
    // crosses eps_d at the square root below.
    const double coeff = problem.consts.f_re *
                         (problem.material.wall_conductivity /
                          problem.fluid.thermal_conductivity) /
                         (problem.scales.psi * problem.scales.pi_group) * problem.gamma;
    const double threshold = std::sqrt(coeff / critical_m(problem.eps_d));
    const double lo = threshold * kThresholdMargin;
    if (lo >= kSpacingSearchMax) {
        const double m_hi = coeff / (kSpacingSearchMax * kSpacingSearchMax);
        throw Infeasible(effectiveness_limit(m_hi),
                         "feasibility threshold exceeds the spacing search bound");
    }
    const ReducedObjective obj{problem.eps_d, -1.0, problem.gamma, problem.material,
                               problem.fluid, problem.scales, problem.consts};
    const double d_star = maximize_spacing(obj, lo, kSpacingSearchMax);
    return finish(obj, d_star, false, problem.material, problem.fluid,
                  problem.scales, problem.consts);
}

OptimizationResult maximize_thickness_constrained(const ThicknessConstrainedProblem& problem) {
    const double threshold =
        feasibility_threshold(problem.t_d_star, problem.eps_d, problem.material,
                              problem.fluid, problem.scales, problem.consts);
    const double lo = threshold * kThresholdMargin;
    if (lo >= kSpacingSearchMax) {
        const double m_hi = axial_conduction_parameter(
            NondimDesign(1.0, kSpacingSearchMax, problem.t_d_star), problem.fluid,
            problem.material, problem.scales, problem.consts);
        throw Infeasible(effectiveness_limit(m_hi),
                         "feasibility threshold exceeds the spacing search bound");
    }
    if (problem.d_min_star >= kSpacingSearchMax) {
        throw std::invalid_argument(
            "maximize_thickness_constrained: d_min_star exceeds the spacing search bound");
    }
    const ReducedObjective obj{problem.eps_d, problem.t_d_star, 0.0, problem.material,
                               problem.fluid, problem.scales, problem.consts};
    double d_star = maximize_spacing(obj, lo, kSpacingSearchMax);
    if (problem.d_min_star > 0.0 && d_star < problem.d_min_star) {
        d_star = problem.d_min_star;
    }
    const bool fouling = problem.d_min_star > 0.0 &&
                         (d_star - problem.d_min_star) <= kActiveSetTol * problem.d_min_star;
    return finish(obj, d_star, fouling, problem.material, problem.fluid,
                  problem.scales, problem.consts);
}

OptimizationResult grid_oracle(const GammaLinkedProblem& problem, int grid_resolution) {
    const double coeff = problem.consts.f_re *
                         (problem.material.wall_conductivity /
                          problem.fluid.thermal_conductivity) /
                         (problem.scales.psi * problem.scales.pi_group) * problem.gamma;
    const double threshold = std::sqrt(coeff / critical_m(problem.eps_d));
    const ReducedObjective obj{problem.eps_d, -1.0, problem.gamma, problem.material,
                               problem.fluid, problem.scales, problem.consts};
    return oracle_impl(obj, threshold * kThresholdMargin, threshold * 1e4, false, 0.0,
                       grid_resolution, problem.material, problem.fluid,
                       problem.scales, problem.consts);
}

OptimizationResult grid_oracle(const ThicknessConstrainedProblem& problem,
                               int grid_resolution) {
    const double threshold =
        feasibility_threshold(problem.t_d_star, problem.eps_d, problem.material,
                              problem.fluid, problem.scales, problem.consts);
    double lo = threshold * kThresholdMargin;
    double hi = threshold * 1e4;
    const bool has_floor = problem.d_min_star > 0.0;
    if (has_floor && problem.d_min_star > lo) {
        lo = problem.d_min_star;
    }
    if (hi <= lo) {
        hi = lo * 1e2;
    }
    const ReducedObjective obj{problem.eps_d, problem.t_d_star, 0.0, problem.material,
                               problem.fluid, problem.scales, problem.consts};
    return oracle_impl(obj, lo, hi, has_floor, problem.d_min_star, grid_resolution,
                       problem.material, problem.fluid, problem.scales, problem.consts);
}

double improvement_factor(double q_nondim, double q_baseline) {
    if (!(q_baseline > 0.0)) {
        throw std::invalid_argument("improvement_factor: baseline must be positive");
    }
    return q_nondim / q_baseline;
}

}  // namespace hexopt
