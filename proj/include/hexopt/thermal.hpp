#ifndef HEXOPT_THERMAL_HPP
#define HEXOPT_THERMAL_HPP

/// Closed-form thermal model of a balanced counterflow parallel flat plate
/// heat exchanger in the laminar, fully developed regime. Geometry is carried
/// in nondimensional form (lengths scaled by a reference plate thickness),
/// heat transfer size as NTU, and axial wall conduction as the parameter M.
/// Effectiveness follows Kroeger's closed-form solution for balanced streams
/// with axial conduction; the figure of merit is the nondimensional power
/// density Q (heat transfer rate per unit core volume, scaled by fluid
/// properties and the reference pressure drop).
///
/// All functions here are pure; inputs are validated when the value types are
/// constructed, so the evaluation paths stay branch-light. Values are
/// immutable after construction and safe to share across threads.

#include <optional>
#include <string>

namespace hexopt {

/// Thermophysical state of the working fluid, assumed constant (evaluated at
/// the mean of the two inlet temperatures).
struct FluidProperties {
    double density;               ///< rho [kg/m^3]
    double specific_heat;         ///< c_p [J/(kg K)]
    double dynamic_viscosity;     ///< mu [Pa s]
    double thermal_conductivity;  ///< k [W/(m K)]

    FluidProperties(double density, double specific_heat,
                    double dynamic_viscosity, double thermal_conductivity);

    /// alpha = k / (rho c_p) [m^2/s]
    double thermal_diffusivity() const {
        return thermal_conductivity / (density * specific_heat);
    }

    friend bool operator==(const FluidProperties&, const FluidProperties&) = default;
};

/// Solid plate material. min_thickness is the smallest wall the material can
/// be reliably manufactured at; absent means unconstrained.
struct MaterialSpec {
    std::string name;
    double wall_conductivity;              ///< k_w [W/(m K)]
    std::optional<double> min_thickness;   ///< t_min [m]

    explicit MaterialSpec(std::string name, double wall_conductivity,
                          std::optional<double> min_thickness = std::nullopt);

    friend bool operator==(const MaterialSpec&, const MaterialSpec&) = default;
};

/// fRe and Nu for fully developed laminar flow between parallel plates.
/// Defaults: fRe = 24, Nu = 8.235 (constant heat flux on both walls).
struct FlowConstants {
    double f_re = 24.0;
    double nusselt = 8.235;

    FlowConstants() = default;
    FlowConstants(double f_re, double nusselt);

    friend bool operator==(const FlowConstants&, const FlowConstants&) = default;
};

/// Pi = dp_ref * t_ref^2 / (alpha * mu), the scaling group that carries all
/// dimensional information into the nondimensional model.
double scaling_group_pi(const FluidProperties& fluid, double t_ref, double dp_ref);

/// Reference thickness and pressure drop plus the derived scaling group.
/// psi = dp / dp_ref is the operating-to-reference pressure-drop ratio.
struct ReferenceScales {
    double t_ref;     ///< [m]
    double dp_ref;    ///< [Pa]
    double psi;       ///< dimensionless
    double pi_group;  ///< Pi, consistent with the fluid used to construct it

    ReferenceScales(const FluidProperties& fluid, double t_ref, double dp_ref,
                    double psi = 1.0);
};

/// Design point: channel length L* = L/t_ref, plate spacing D* = D/t_ref,
/// plate thickness t* = t/t_ref. Thickness zero is admitted as the
/// no-axial-path limit; length and spacing must be strictly positive.
struct NondimDesign {
    double length;     ///< L*
    double spacing;    ///< D*
    double thickness;  ///< t*

    NondimDesign(double length, double spacing, double thickness);

    friend bool operator==(const NondimDesign&, const NondimDesign&) = default;
};

/// Evaluated performance of one design point.
struct DesignPerformance {
    double ntu;            ///< number of transfer units
    double m_axial;        ///< axial conduction parameter M
    double effectiveness;  ///< Kroeger effectiveness, in (0,1)
    double q_nondim;       ///< nondimensional power density
};

/// NTU = (fRe Nu / 4) * (1 + (Nu/4)(k/k_w)(t*/D*))^-1 * (1/(psi Pi)) * L*^2/D*^4.
/// Strictly increasing in L*, strictly decreasing in D* at fixed L*, t*.
double number_of_transfer_units(const NondimDesign& design,
                                const FluidProperties& fluid,
                                const MaterialSpec& material,
                                const ReferenceScales& scales,
                                const FlowConstants& consts);

/// M = fRe * (k_w/k) * (1/(psi Pi)) * t*/D*^3.
double axial_conduction_parameter(const NondimDesign& design,
                                  const FluidProperties& fluid,
                                  const MaterialSpec& material,
                                  const ReferenceScales& scales,
                                  const FlowConstants& consts);

/// Balanced-counterflow effectiveness with axial wall conduction:
///
///   eps = 1 - 1 / (1 + NTU (1 + M phi) / (1 + M NTU)),
///   phi = sqrt(r) * tanh(NTU / sqrt(r)),   r = M NTU / (1 + M NTU).
///
/// M = 0 reduces to the classic eps = NTU/(1+NTU) (phi -> 0 limit). The tanh
/// argument is clamped to 1 above 350 to avoid overflow; the error introduced
/// is below machine epsilon. Requires ntu > 0 and m_axial >= 0.
double effectiveness_kroeger(double ntu, double m_axial);

/// High-NTU ceiling (M+1)/(2M+1): effectiveness no channel length can exceed.
/// Equals 1 at M = 0 and decreases toward 1/2 as M grows. Requires M >= 0.
double effectiveness_limit(double m_axial);

/// Q = psi * (1/fRe) * (1/(1 + t*/D*)) * eps * (D*/L*)^2.
double power_density_nondim(const NondimDesign& design, double effectiveness,
                            const ReferenceScales& scales,
                            const FlowConstants& consts);

/// Bundles NTU, M, effectiveness and power density for one design point.
/// Composes the functions above directly, so recomputing any field from the
/// design reproduces it bit for bit.
DesignPerformance evaluate(const NondimDesign& design,
                           const FluidProperties& fluid,
                           const MaterialSpec& material,
                           const ReferenceScales& scales,
                           const FlowConstants& consts);

}  // namespace hexopt

#endif  // HEXOPT_THERMAL_HPP
