#include "hexopt/thermal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hexopt {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

}  // namespace

FluidProperties::FluidProperties(double density_, double specific_heat_,
                                 double dynamic_viscosity_,
                                 double thermal_conductivity_)
    : density(density_),
      specific_heat(specific_heat_),
      dynamic_viscosity(dynamic_viscosity_),
      thermal_conductivity(thermal_conductivity_) {
    require_positive(density, "FluidProperties: density");
    require_positive(specific_heat, "FluidProperties: specific_heat");
    require_positive(dynamic_viscosity, "FluidProperties: dynamic_viscosity");
    require_positive(thermal_conductivity, "FluidProperties: thermal_conductivity");
}

MaterialSpec::MaterialSpec(std::string name_, double wall_conductivity_,
                           std::optional<double> min_thickness_)
    : name(std::move(name_)),
      wall_conductivity(wall_conductivity_),
      min_thickness(min_thickness_) {
    require_positive(wall_conductivity, "MaterialSpec: wall_conductivity");
    if (min_thickness) {
        require_positive(*min_thickness, "MaterialSpec: min_thickness");
    }
}

FlowConstants::FlowConstants(double f_re_, double nusselt_)
    : f_re(f_re_), nusselt(nusselt_) {
    require_positive(f_re, "FlowConstants: f_re");
    require_positive(nusselt, "FlowConstants: nusselt");
}

double scaling_group_pi(const FluidProperties& fluid, double t_ref, double dp_ref) {
    require_positive(t_ref, "scaling_group_pi: t_ref");
    require_positive(dp_ref, "scaling_group_pi: dp_ref");
    return dp_ref * t_ref * t_ref /
           (fluid.thermal_diffusivity() * fluid.dynamic_viscosity);
}

ReferenceScales::ReferenceScales(const FluidProperties& fluid, double t_ref_,
                                 double dp_ref_, double psi_)
    : t_ref(t_ref_),
      dp_ref(dp_ref_),
      psi(psi_),
      pi_group(scaling_group_pi(fluid, t_ref_, dp_ref_)) {
    require_positive(psi, "ReferenceScales: psi");
}

NondimDesign::NondimDesign(double length_, double spacing_, double thickness_)
    : length(length_), spacing(spacing_), thickness(thickness_) {
    require_positive(length, "NondimDesign: length");
    require_positive(spacing, "NondimDesign: spacing");
    if (!(thickness >= 0.0)) {
        throw std::invalid_argument("NondimDesign: thickness must be non-negative");
    }
}

double number_of_transfer_units(const NondimDesign& design,
                                const FluidProperties& fluid,
                                const MaterialSpec& material,
                                const ReferenceScales& scales,
                                const FlowConstants& consts) {
    // Lateral resistance factor: convection on both sides plus conduction
    // through the plate.
    const double lateral = 1.0 + (consts.nusselt / 4.0) *
                                     (fluid.thermal_conductivity / material.wall_conductivity) *
                                     (design.thickness / design.spacing);
    const double d2 = design.spacing * design.spacing;
    const double shape = (design.length * design.length) / (d2 * d2);
    return (consts.f_re * consts.nusselt / 4.0) / lateral /
           (scales.psi * scales.pi_group) * shape;
}

double axial_conduction_parameter(const NondimDesign& design,
                                  const FluidProperties& fluid,
                                  const MaterialSpec& material,
                                  const ReferenceScales& scales,
                                  const FlowConstants& consts) {
    const double d3 = design.spacing * design.spacing * design.spacing;
    return consts.f_re * (material.wall_conductivity / fluid.thermal_conductivity) /
           (scales.psi * scales.pi_group) * (design.thickness / d3);
}

double effectiveness_kroeger(double ntu, double m_axial) {
    if (!(ntu > 0.0)) {
        throw std::invalid_argument("effectiveness_kroeger: ntu must be positive");
    }
    if (!(m_axial >= 0.0)) {
        throw std::invalid_argument("effectiveness_kroeger: m_axial must be non-negative");
    }
    double phi = 0.0;  // continuous limit at M = 0
    if (m_axial > 0.0) {
        const double mn = m_axial * ntu;
        const double root = std::sqrt(mn / (1.0 + mn));
        const double arg = ntu / root;
        phi = root * (arg > 350.0 ? 1.0 : std::tanh(arg));
    }
    const double ratio = ntu * (1.0 + m_axial * phi) / (1.0 + m_axial * ntu);
    return 1.0 - 1.0 / (1.0 + ratio);
}

double effectiveness_limit(double m_axial) {
    if (!(m_axial >= 0.0)) {
        throw std::invalid_argument("effectiveness_limit: m_axial must be non-negative");
    }
    return (m_axial + 1.0) / (2.0 * m_axial + 1.0);
}

double power_density_nondim(const NondimDesign& design, double effectiveness,
                            const ReferenceScales& scales,
                            const FlowConstants& consts) {
    if (!(effectiveness >= 0.0 && effectiveness < 1.0)) {
        throw std::invalid_argument("power_density_nondim: effectiveness must lie in [0,1)");
    }
    const double aspect = design.spacing / design.length;
    return scales.psi / consts.f_re / (1.0 + design.thickness / design.spacing) *
           effectiveness * aspect * aspect;
}

DesignPerformance evaluate(const NondimDesign& design,
                           const FluidProperties& fluid,
                           const MaterialSpec& material,
                           const ReferenceScales& scales,
                           const FlowConstants& consts) {
    DesignPerformance perf;
    perf.ntu = number_of_transfer_units(design, fluid, material, scales, consts);
    perf.m_axial = axial_conduction_parameter(design, fluid, material, scales, consts);
    perf.effectiveness = effectiveness_kroeger(perf.ntu, perf.m_axial);
    perf.q_nondim = power_density_nondim(design, perf.effectiveness, scales, consts);
    return perf;
}

}  // namespace hexopt
