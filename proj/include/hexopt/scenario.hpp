#ifndef HEXOPT_SCENARIO_HPP
#define HEXOPT_SCENARIO_HPP

/// Scenario definitions: which optimization strategy to run, at which target
/// effectiveness, for which fluid, reference scales, baseline unit and
/// material set. Scenarios come from a built-in catalog or from a flat
/// text file format (see parse_scenario).

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hexopt/thermal.hpp"

namespace hexopt {

enum class Strategy {
    GammaLinked,              ///< t* tied to D* by a fixed ratio, no floor on D*
    UniformThickness,         ///< one fixed plate thickness, no floor on D*
    UniformThicknessFouling,  ///< fixed thickness plus a fouling floor on D*
    MaterialSpecificFouling,  ///< per-material thickness plus a fouling floor
    AmReference,              ///< baseline spacing kept, length re-solved
};

std::string to_string(Strategy strategy);
std::optional<Strategy> strategy_from_string(std::string_view text);

/// Geometry and operating identity of the baseline unit.
struct BaselineGeometry {
    double length;     ///< L [m]
    double spacing;    ///< D [m]
    double thickness;  ///< t [m]
    double width;      ///< W [m]
    int channels;      ///< n, hot-side channel count
    std::string material;  ///< name of one entry in the scenario's material list

    friend bool operator==(const BaselineGeometry&, const BaselineGeometry&) = default;
};

struct ScenarioSpec {
    std::string name;
    Strategy strategy = Strategy::GammaLinked;
    double eps_d = 0.0;            ///< target effectiveness, in (0.5, 1)
    std::optional<double> gamma;   ///< thickness-to-spacing ratio (gamma_linked)
    std::optional<double> t_d;     ///< design thickness [m] (uniform strategies)
    std::optional<double> d_min;   ///< fouling floor on the spacing [m]
    double delta_t = 0.0;          ///< inlet temperature difference [K]
    double delta_p = 0.0;          ///< operating and reference pressure drop [Pa]
    double t_ref = 0.0;            ///< reference plate thickness [m]
    FluidProperties fluid;
    BaselineGeometry baseline;
    std::vector<MaterialSpec> materials;

    /// Case-insensitive lookup (spaces and underscores interchangeable).
    const MaterialSpec* find_material(std::string_view name) const;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Parse or validation failure; the message carries a line number for syntax
/// errors and a field path (e.g. "scenario.eps_d") for semantic ones.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// lowercase, spaces folded to underscores
std::string normalize_material_name(std::string_view name);

struct CatalogMaterial {
    MaterialSpec spec;
    std::string thickness_note;  ///< provenance of the minimum thickness
};

/// The six built-in materials in canonical order (ascending conductivity):
/// plastic, austenitic_steel, al2o3, aln, aluminum, copper.
const std::vector<CatalogMaterial>& material_catalog();

/// Catalog lookup by (normalized) name; nullptr when absent.
const CatalogMaterial* catalog_material(std::string_view name);

/// Fully populated study scenarios. Known names: table2, table3-uniform,
/// table3-uniform-fouling, table3-material-specific, table3-am-reference,
/// fig3-sweep, fig4-sweep. Throws ScenarioError for unknown names.
ScenarioSpec builtin_paper_scenario(const std::string& name);

std::vector<std::string> builtin_scenario_names();

/// Parse the scenario file format:
///
///   # comment
///   [scenario]
///   strategy = uniform_thickness_fouling
///   eps_d = 0.791
///   t_d = 0.5 mm
///   D_min = 0.8 mm
///   delta_T = 80 K
///   delta_P = 170 Pa
///   t_ref = 0.16 mm
///   [fluid]
///   rho = 1.060 kg/m3
///   c_p = 1008 J/kgK
///   mu = 19.99e-6 Pa.s
///   k = 28.8 mW/mK
///   [baseline]
///   L = 158.0 mm
///   D = 1.0 mm
///   t = 0.16 mm
///   W = 95.0 mm
///   n = 40
///   material = austenitic_steel
///   [[material]]
///   name = austenitic_steel
///   k_w = 20 W/mK
///   t_min = 0.25 mm
///
/// Dimensional values require a unit token from {m, mm, um, Pa, kPa, K, C,
/// W/mK, mW/mK, kg/m3, J/kgK, Pa.s}; everything converts to SI internally.
ScenarioSpec parse_scenario(const std::string& text);

/// Canonical SI text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const ScenarioSpec& spec);

}  // namespace hexopt

#endif  // HEXOPT_SCENARIO_HPP
