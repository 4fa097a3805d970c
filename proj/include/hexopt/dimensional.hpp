#ifndef HEXOPT_DIMENSIONAL_HPP
#define HEXOPT_DIMENSIONAL_HPP

/// Conversion between nondimensional design points and physical realizations
/// that deliver the same total thermal power as a baseline unit. The total
/// flow product n * W * mdot'_single is held equal to the baseline's; the
/// channel width keeps the baseline width-to-spacing ratio, and all rounding
/// is absorbed into the integer channel count.

#include "hexopt/thermal.hpp"

namespace hexopt {

/// Operating conditions of the baseline unit that every dimensional design
/// must match.
struct BaselineOperating {
    double delta_t;             ///< inlet temperature difference [K]
    double total_flow_product;  ///< n * W * mdot'_single of the baseline [kg/s]
    double width_to_spacing;    ///< baseline W/D ratio
    double t_ref;               ///< reference plate thickness [m]
    double dp_ref;              ///< reference pressure drop [Pa]

    BaselineOperating(double delta_t, double total_flow_product,
                      double width_to_spacing, double t_ref, double dp_ref);
};

/// Physical realization of a design point.
struct DimensionalDesign {
    double length;          ///< L [m]
    double spacing;         ///< D [m]
    double thickness;       ///< t [m]
    double width;           ///< W [m]
    long channels;          ///< n, hot-side (= cold-side) channel count, >= 1
    double mdot_per_width;  ///< mdot'_single [kg/(s m)]
    double power_density;   ///< thermal power per core volume [W/m^3]
};

/// Per-channel, per-unit-width mass flow of a plane laminar channel:
/// mdot'_single = (2 rho / (fRe mu)) * D^3 * dP / L.
double mass_flow_per_width(double spacing, double length, double pressure_drop,
                           const FluidProperties& fluid, const FlowConstants& consts);

/// Rescale a nondimensional design to physical size at equal total thermal
/// power. W = (W/D)_baseline * D exactly; n = total_flow_product/(W mdot'),
/// rounded to the nearest integer (minimum 1); the dimensional power density
/// follows from q_nondim as q * c_p * dT * rho * dP_ref / mu.
DimensionalDesign dimensionalize(const NondimDesign& design, double q_nondim,
                                 const BaselineOperating& baseline,
                                 const FluidProperties& fluid,
                                 const FlowConstants& consts, double psi = 1.0);

/// Exact division by the reference thickness.
NondimDesign nondimensionalize(const DimensionalDesign& design, double t_ref);

}  // namespace hexopt

#endif  // HEXOPT_DIMENSIONAL_HPP
