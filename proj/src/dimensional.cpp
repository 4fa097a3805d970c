#include "hexopt/dimensional.hpp"

#include <cmath>
#include <stdexcept>

namespace hexopt {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

}  // namespace

BaselineOperating::BaselineOperating(double delta_t_, double total_flow_product_,
                                     double width_to_spacing_, double t_ref_,
                                     double dp_ref_)
    : delta_t(delta_t_),
      total_flow_product(total_flow_product_),
      width_to_spacing(width_to_spacing_),
      t_ref(t_ref_),
      dp_ref(dp_ref_) {
    require_positive(delta_t, "BaselineOperating: delta_t");
    require_positive(total_flow_product, "BaselineOperating: total_flow_product");
    require_positive(width_to_spacing, "BaselineOperating: width_to_spacing");
    require_positive(t_ref, "BaselineOperating: t_ref");
    require_positive(dp_ref, "BaselineOperating: dp_ref");
}

double mass_flow_per_width(double spacing, double length, double pressure_drop,
                           const FluidProperties& fluid, const FlowConstants& consts) {
    require_positive(spacing, "mass_flow_per_width: spacing");
    require_positive(length, "mass_flow_per_width: length");
    require_positive(pressure_drop, "mass_flow_per_width: pressure_drop");
    return 2.0 * fluid.density / (consts.f_re * fluid.dynamic_viscosity) *
           spacing * spacing * spacing * pressure_drop / length;
}

DimensionalDesign dimensionalize(const NondimDesign& design, double q_nondim,
                                 const BaselineOperating& baseline,
                                 const FluidProperties& fluid,
                                 const FlowConstants& consts, double psi) {
    if (!(q_nondim >= 0.0)) {
        throw std::invalid_argument("dimensionalize: q_nondim must be non-negative");
    }
    require_positive(psi, "dimensionalize: psi");
    DimensionalDesign dim;
    dim.length = design.length * baseline.t_ref;
    dim.spacing = design.spacing * baseline.t_ref;
    dim.thickness = design.thickness * baseline.t_ref;
    dim.width = baseline.width_to_spacing * dim.spacing;
    dim.mdot_per_width = mass_flow_per_width(dim.spacing, dim.length,
                                             psi * baseline.dp_ref, fluid, consts);
    const double exact_n =
        baseline.total_flow_product / (dim.width * dim.mdot_per_width);
    dim.channels = std::max(1L, std::lround(exact_n));
    dim.power_density = q_nondim * fluid.specific_heat * baseline.delta_t *
                        fluid.density * baseline.dp_ref / fluid.dynamic_viscosity;
    return dim;
}

NondimDesign nondimensionalize(const DimensionalDesign& design, double t_ref) {
    require_positive(t_ref, "nondimensionalize: t_ref");
    return NondimDesign(design.length / t_ref, design.spacing / t_ref,
                        design.thickness / t_ref);
}

}  // namespace hexopt
