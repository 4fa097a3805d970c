#include "hexopt/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "hexopt/dimensional.hpp"
#include "hexopt/optimize.hpp"

#include "json.hpp"

namespace hexopt {

namespace {

struct ScenarioContext {
    const ScenarioSpec& spec;
    FlowConstants consts;
    ReferenceScales scales;
    BaselineOperating baseline_op;
    NondimDesign baseline_design;
    double q_baseline;

    explicit ScenarioContext(const ScenarioSpec& s)
        : spec(s),
          consts(),
          scales(s.fluid, s.t_ref, s.delta_p, 1.0),
          baseline_op(s.delta_t,
                      s.baseline.channels * s.baseline.width *
                          mass_flow_per_width(s.baseline.spacing, s.baseline.length,
                                              s.delta_p, s.fluid, FlowConstants()),
                      s.baseline.width / s.baseline.spacing, s.t_ref, s.delta_p),
          baseline_design(s.baseline.length / s.t_ref, s.baseline.spacing / s.t_ref,
                          s.baseline.thickness / s.t_ref),
          q_baseline(0.0) {
        const MaterialSpec* material = spec.find_material(spec.baseline.material);
        if (!material) {
            throw ScenarioError("baseline.material: '" + spec.baseline.material +
                                "' is not in the material list");
        }
        q_baseline =
            evaluate(baseline_design, spec.fluid, *material, scales, consts).q_nondim;
    }

    int rank_of(const std::string& material_name) const {
        const std::string wanted = normalize_material_name(material_name);
        for (std::size_t i = 0; i < spec.materials.size(); ++i) {
            if (normalize_material_name(spec.materials[i].name) == wanted) {
                return static_cast<int>(i);
            }
        }
        return static_cast<int>(spec.materials.size());
    }

    ResultRow feasible_row(const std::string& strategy_name,
                           const MaterialSpec& material, double eps_d,
                           const OptimizationResult& result) const {
        ResultRow row;
        row.scenario = spec.name;
        row.strategy = strategy_name;
        row.material = material.name;
        row.material_rank = rank_of(material.name);
        row.eps_d = eps_d;
        row.feasible = true;
        row.fouling_active = result.fouling_active;
        row.t_star = result.design.thickness;
        row.d_star = result.design.spacing;
        row.l_star = result.design.length;
        row.q_nondim = result.performance.q_nondim;
        row.improvement_factor =
            result.improvement_factor.value_or(improvement_factor(row.q_nondim, q_baseline));
        const DimensionalDesign dim = dimensionalize(
            result.design, row.q_nondim, baseline_op, spec.fluid, consts, scales.psi);
        row.t = dim.thickness;
        row.d = dim.spacing;
        row.l = dim.length;
        row.width = dim.width;
        row.channels = dim.channels;
        row.mdot_per_width = dim.mdot_per_width;
        row.power_density = dim.power_density;
        return row;
    }

    ResultRow infeasible_row(const std::string& strategy_name,
                             const MaterialSpec& material, double eps_d,
                             double eps_limit) const {
        ResultRow row;
        row.scenario = spec.name;
        row.strategy = strategy_name;
        row.material = material.name;
        row.material_rank = rank_of(material.name);
        row.eps_d = eps_d;
        row.feasible = false;
        row.eps_limit = eps_limit;
        return row;
    }

    // One optimization (or length re-solve, for the AM reference) for one
    // material at one target effectiveness; infeasibility becomes a row.
    ResultRow material_row(Strategy strategy, const MaterialSpec& material,
                           double eps_d,
                           std::optional<double> thickness_override = std::nullopt) const {
        const std::string label = to_string(strategy);
        try {
            switch (strategy) {
                case Strategy::GammaLinked:
                    return feasible_row(
                        label, material, eps_d,
                        maximize_gamma_linked({eps_d, *spec.gamma, material, spec.fluid,
                                               scales, consts}));
                case Strategy::UniformThickness:
                case Strategy::UniformThicknessFouling: {
                    const double t_d = thickness_override.value_or(*spec.t_d);
                    const double d_min = strategy == Strategy::UniformThicknessFouling
                                             ? *spec.d_min / spec.t_ref
                                             : 0.0;
                    return feasible_row(
                        label, material, eps_d,
                        maximize_thickness_constrained({eps_d, t_d / spec.t_ref, d_min,
                                                        material, spec.fluid, scales,
                                                        consts}));
                }
                case Strategy::MaterialSpecificFouling: {
                    if (!material.min_thickness) {
                        throw ScenarioError("material[" + material.name +
                                            "].t_min: required by strategy " + label);
                    }
                    return feasible_row(
                        label, material, eps_d,
                        maximize_thickness_constrained(
                            {eps_d, *material.min_thickness / spec.t_ref,
                             *spec.d_min / spec.t_ref, material, spec.fluid, scales,
                             consts}));
                }
                case Strategy::AmReference: {
                    if (!material.min_thickness) {
                        throw ScenarioError("material[" + material.name +
                                            "].t_min: required by strategy " + label);
                    }
                    const double d_star = spec.baseline.spacing / spec.t_ref;
                    const double t_star = *material.min_thickness / spec.t_ref;
                    const double l_star = solve_length_for_effectiveness(
                        d_star, t_star, eps_d, material, spec.fluid, scales, consts);
                    OptimizationResult result{NondimDesign(l_star, d_star, t_star),
                                              DesignPerformance{}, false, std::nullopt};
                    result.performance =
                        evaluate(result.design, spec.fluid, material, scales, consts);
                    return feasible_row(label, material, eps_d, result);
                }
            }
            throw std::logic_error("unhandled strategy");
        } catch (const Infeasible& infeasible) {
            return infeasible_row(label, material, eps_d, infeasible.effectiveness_limit());
        }
    }
};

int strategy_order(const std::string& name) {
    if (name == "baseline") return 0;
    if (name == to_string(Strategy::GammaLinked)) return 1;
    if (name == to_string(Strategy::UniformThickness)) return 2;
    if (name == to_string(Strategy::UniformThicknessFouling)) return 3;
    if (name == to_string(Strategy::MaterialSpecificFouling)) return 4;
    if (name == to_string(Strategy::AmReference)) return 5;
    return 6;
}

std::string fmt_shortest(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string fmt_sci(double value) {
    char buf[40];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 8);
    return std::string(buf, ptr);
}

constexpr const char* kCsvHeader =
    "scenario,strategy,material,eps_d,t_star,t,D_star,D,L_star,L,q_nondim,"
    "power_density,improvement_factor,fouling_active,feasible,W,n,"
    "mdot_per_width,eps_limit";

}  // namespace

std::vector<ResultRow> run_scenario(const ScenarioSpec& spec) {
    const ScenarioContext ctx(spec);
    std::vector<ResultRow> rows;
    rows.reserve(spec.materials.size() + 1);
    if (spec.strategy == Strategy::GammaLinked) {
        const MaterialSpec* base_mat = spec.find_material(spec.baseline.material);
        OptimizationResult base{ctx.baseline_design, DesignPerformance{}, false, 1.0};
        base.performance =
            evaluate(ctx.baseline_design, spec.fluid, *base_mat, ctx.scales, ctx.consts);
        ResultRow row = ctx.feasible_row("baseline", *base_mat,
                                         base.performance.effectiveness, base);
        rows.push_back(std::move(row));
    }
    for (const auto& material : spec.materials) {
        rows.push_back(ctx.material_row(spec.strategy, material, spec.eps_d));
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_effectiveness_sweep(const ScenarioSpec& spec,
                                               const std::vector<double>& eps_grid) {
    if (!spec.d_min) {
        throw ScenarioError("scenario.D_min: required for an effectiveness sweep");
    }
    for (const double eps : eps_grid) {
        if (!(eps > 0.5 && eps < 1.0)) {
            throw std::invalid_argument(
                "run_effectiveness_sweep: grid values must lie in (0.5, 1)");
        }
    }
    const ScenarioContext ctx(spec);
    std::vector<ResultRow> rows;
    rows.reserve(eps_grid.size() * spec.materials.size());
    for (const auto& material : spec.materials) {
        for (const double eps : eps_grid) {
            rows.push_back(
                ctx.material_row(Strategy::MaterialSpecificFouling, material, eps));
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_thickness_sweep(const ScenarioSpec& spec,
                                           const std::vector<double>& t_grid,
                                           const std::vector<double>& eps_set,
                                           const std::string& material) {
    const MaterialSpec* mat = spec.find_material(material);
    if (!mat) {
        throw ScenarioError("material '" + material + "' is not in the scenario");
    }
    for (const double t : t_grid) {
        if (!(t > 0.0)) {
            throw std::invalid_argument(
                "run_thickness_sweep: thickness values must be positive");
        }
    }
    const ScenarioContext ctx(spec);
    const Strategy strategy = spec.d_min ? Strategy::UniformThicknessFouling
                                         : Strategy::UniformThickness;
    std::vector<ResultRow> rows;
    rows.reserve(t_grid.size() * eps_set.size());
    for (const double eps : eps_set) {
        for (const double t : t_grid) {
            rows.push_back(ctx.material_row(strategy, *mat, eps, t));
        }
    }
    sort_rows(rows);
    return rows;
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         const int sa = strategy_order(a.strategy);
                         const int sb = strategy_order(b.strategy);
                         if (sa != sb) return sa < sb;
                         if (a.material_rank != b.material_rank) {
                             return a.material_rank < b.material_rank;
                         }
                         if (a.eps_d != b.eps_d) return a.eps_d < b.eps_d;
                         return a.t < b.t;
                     });
}

std::string to_csv(std::vector<ResultRow> rows) {
    sort_rows(rows);
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& row : rows) {
        out << row.scenario << ',' << row.strategy << ',' << row.material << ','
            << fmt_shortest(row.eps_d) << ',';
        if (row.feasible) {
            out << fmt_shortest(row.t_star) << ',' << fmt_shortest(row.t) << ','
                << fmt_shortest(row.d_star) << ',' << fmt_shortest(row.d) << ','
                << fmt_shortest(row.l_star) << ',' << fmt_shortest(row.l) << ','
                << fmt_sci(row.q_nondim) << ',' << fmt_sci(row.power_density) << ','
                << fmt_shortest(row.improvement_factor) << ','
                << (row.fouling_active ? "true" : "false") << ",true,"
                << fmt_shortest(row.width) << ',' << row.channels << ','
                << fmt_shortest(row.mdot_per_width) << ',';
        } else {
            out << ",,,,,,,,,,false,,,," << fmt_shortest(row.eps_limit);
        }
        out << "\n";
    }
    return out.str();
}

std::string to_json(std::vector<ResultRow> rows) {
    sort_rows(rows);
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj;
        obj["scenario"] = row.scenario;
        obj["strategy"] = row.strategy;
        obj["material"] = row.material;
        obj["eps_d"] = row.eps_d;
        if (row.feasible) {
            obj["t_star"] = row.t_star;
            obj["t"] = row.t;
            obj["D_star"] = row.d_star;
            obj["D"] = row.d;
            obj["L_star"] = row.l_star;
            obj["L"] = row.l;
            obj["q_nondim"] = row.q_nondim;
            obj["power_density"] = row.power_density;
            obj["improvement_factor"] = row.improvement_factor;
            obj["fouling_active"] = row.fouling_active;
            obj["feasible"] = true;
            obj["W"] = row.width;
            obj["n"] = row.channels;
            obj["mdot_per_width"] = row.mdot_per_width;
            obj["eps_limit"] = nullptr;
        } else {
            for (const char* key : {"t_star", "t", "D_star", "D", "L_star", "L",
                                    "q_nondim", "power_density", "improvement_factor",
                                    "fouling_active"}) {
                obj[key] = nullptr;
            }
            obj["feasible"] = false;
            for (const char* key : {"W", "n", "mdot_per_width"}) {
                obj[key] = nullptr;
            }
            obj["eps_limit"] = row.eps_limit;
        }
        array.push_back(std::move(obj));
    }
    return array.dump(2) + "\n";
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format,
          const std::string& destination) {
    const std::string payload =
        format == OutputFormat::Csv ? to_csv(rows) : to_json(rows);
    if (destination == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream file(destination, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + destination + "' for writing");
    }
    file << payload;
    if (!file) {
        throw std::runtime_error("write failed for '" + destination + "'");
    }
}

void verify_rows(const std::vector<ResultRow>& rows, const ScenarioSpec& spec) {
    const ReferenceScales scales(spec.fluid, spec.t_ref, spec.delta_p, 1.0);
    const FlowConstants consts;
    for (const auto& row : rows) {
        if (!row.feasible) {
            continue;
        }
        const MaterialSpec* material = spec.find_material(row.material);
        if (!material) {
            throw std::runtime_error("verify: row material '" + row.material +
                                     "' is not in the scenario");
        }
        const NondimDesign design(row.l_star, row.d_star, row.t_star);
        const DesignPerformance perf =
            evaluate(design, spec.fluid, *material, scales, consts);
        if (std::abs(perf.effectiveness - row.eps_d) > 1e-9) {
            throw std::runtime_error("verify: effectiveness mismatch for " +
                                     row.strategy + "/" + row.material);
        }
        if (std::abs(perf.q_nondim - row.q_nondim) > 1e-12 * std::abs(row.q_nondim)) {
            throw std::runtime_error("verify: power density mismatch for " +
                                     row.strategy + "/" + row.material);
        }
    }
}

}  // namespace hexopt
