#ifndef HEXOPT_RUNNER_HPP
#define HEXOPT_RUNNER_HPP

/// Scenario execution and result emission. Each run yields flat result rows
/// (one per material, or per sweep point) carrying the nondimensional design,
/// its dimensional realization at baseline-equal thermal power, and the
/// figures of merit. Rows emit deterministically as CSV or JSON.

#include <iosfwd>
#include <string>
#include <vector>

#include "hexopt/scenario.hpp"

namespace hexopt {

/// One result line. Design fields are meaningful only when feasible is true;
/// infeasible rows instead carry the effectiveness ceiling that blocked the
/// target. eps_d records the design target (for the baseline row: the
/// effectiveness the baseline evaluates to), so re-evaluating any feasible
/// row's design must reproduce (eps_d, q_nondim).
struct ResultRow {
    std::string scenario;
    std::string strategy;  ///< strategy name, or "baseline"
    std::string material;
    int material_rank = 0;  ///< catalog position, for ordering; not emitted
    double eps_d = 0.0;
    bool feasible = true;
    bool fouling_active = false;
    double t_star = 0.0;
    double t = 0.0;  ///< [m]
    double d_star = 0.0;
    double d = 0.0;  ///< [m]
    double l_star = 0.0;
    double l = 0.0;  ///< [m]
    double q_nondim = 0.0;
    double power_density = 0.0;  ///< [W/m^3]
    double improvement_factor = 0.0;
    double width = 0.0;  ///< [m]
    long channels = 0;
    double mdot_per_width = 0.0;  ///< [kg/(s m)]
    double eps_limit = 0.0;       ///< set when feasible is false
};

/// One row per material. gamma_linked scenarios additionally emit the
/// baseline design as a leading "baseline" row with improvement factor 1.
/// am_reference keeps the baseline spacing and re-solves the length only;
/// materials whose ceiling falls below the target yield infeasible rows.
std::vector<ResultRow> run_scenario(const ScenarioSpec& spec);

/// Material x eps_d cross product of material-specific-thickness + fouling
/// optimizations (the scenario supplies materials, fouling floor and scales).
/// Per-point infeasibility is recorded in the row, not raised.
std::vector<ResultRow> run_effectiveness_sweep(const ScenarioSpec& spec,
                                               const std::vector<double>& eps_grid);

/// Thickness x eps_d grid of fouling-constrained optimizations for one
/// material. Thickness values are dimensional [m].
std::vector<ResultRow> run_thickness_sweep(const ScenarioSpec& spec,
                                           const std::vector<double>& t_grid,
                                           const std::vector<double>& eps_set,
                                           const std::string& material);

enum class OutputFormat { Csv, Json };

/// Canonical emission order: strategy, then material in catalog order, then
/// eps_d ascending, then thickness ascending.
void sort_rows(std::vector<ResultRow>& rows);

/// CSV with a fixed header; scientific notation with 9 significant digits for
/// q_nondim and power_density, shortest round-trip form for other numbers,
/// empty cells where a field does not apply. Byte-identical across runs.
std::string to_csv(std::vector<ResultRow> rows);

/// Array of flat objects with the CSV's field names; null where a field does
/// not apply.
std::string to_json(std::vector<ResultRow> rows);

/// Write rows to a file, or to standard output when destination is "-".
void emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::string& destination);

/// Self-consistency check: re-evaluate every feasible row's design via the
/// thermal model and require |eps - eps_d| <= 1e-9 and q_nondim to match to
/// 1e-12 relative. Throws std::runtime_error naming the first offending row.
void verify_rows(const std::vector<ResultRow>& rows, const ScenarioSpec& spec);

}  // namespace hexopt

#endif  // HEXOPT_RUNNER_HPP
