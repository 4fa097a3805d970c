// hexopt: size counterflow parallel flat plate heat exchangers for maximum
// power density at fixed pressure drop and target effectiveness, with wall
// thickness and fouling (minimum spacing) constraints. Results go to stdout
// or a file as CSV/JSON; progress notes go to stderr.

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hexopt/dimensional.hpp"
#include "hexopt/optimize.hpp"
#include "hexopt/runner.hpp"

namespace {

hexopt::ScenarioSpec load_scenario(const std::string& arg) {
    const auto builtins = hexopt::builtin_scenario_names();
    for (const auto& name : builtins) {
        if (arg == name) {
            return hexopt::builtin_paper_scenario(name);
        }
    }
    std::ifstream file(arg);
    if (!file) {
        std::ostringstream msg;
        msg << "cannot open scenario '" << arg << "'; builtin names are:";
        for (const auto& name : builtins) {
            msg << ' ' << name;
        }
        throw std::runtime_error(msg.str());
    }
    std::ostringstream content;
    content << file.rdbuf();
    return hexopt::parse_scenario(content.str());
}

std::vector<double> parse_grid_spec(const std::string& text) {
    // "a:b:step", inclusive of both ends
    double a = 0.0, b = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream stream(text);
    if (!(stream >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !(step > 0.0) || b < a) {
        throw std::runtime_error("bad grid spec '" + text + "', expected a:b:step");
    }
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double value = a + i * step;
        if (value > b + 1e-12) {
            break;
        }
        grid.push_back(value);
    }
    return grid;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::istringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        std::size_t pos = 0;
        const double value = std::stod(token, &pos);
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) {
            ++pos;
        }
        if (pos != token.size()) {
            throw std::runtime_error("bad number '" + token + "' in list");
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw std::runtime_error("empty list '" + text + "'");
    }
    return values;
}

hexopt::OutputFormat to_format(const std::string& name) {
    return name == "json" ? hexopt::OutputFormat::Json : hexopt::OutputFormat::Csv;
}

void finish(const std::vector<hexopt::ResultRow>& rows, const hexopt::ScenarioSpec& spec,
            const std::string& format, const std::string& out, bool verify,
            std::chrono::steady_clock::time_point started) {
    if (verify) {
        hexopt::verify_rows(rows, spec);
    }
    hexopt::emit(rows, to_format(format), out);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    std::cerr << (spec.name.empty() ? std::string("scenario") : spec.name) << ": "
              << rows.size() << " rows in " << elapsed.count() << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counterflow flat-plate heat exchanger sizing under pressure-drop, "
                 "effectiveness, wall-thickness and fouling constraints"};
    app.require_subcommand(1);

    std::string scenario_arg, format = "csv", out = "-";
    bool verify = false;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_arg, "scenario file or builtin name")
            ->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out, "output path, '-' for stdout");
        cmd->add_flag("--verify", verify,
                      "re-evaluate every emitted row through the thermal model");
    };

    auto* run_cmd = app.add_subcommand("run", "run a scenario, one row per material");
    add_io(run_cmd);

    auto* eff_cmd = app.add_subcommand(
        "sweep-eff", "sweep the target effectiveness for every material");
    add_io(eff_cmd);
    std::string grid_spec = "0.55:0.94:0.0325";
    eff_cmd->add_option("--grid", grid_spec, "effectiveness grid a:b:step");

    auto* thick_cmd = app.add_subcommand(
        "sweep-thickness", "sweep the design wall thickness for one material");
    add_io(thick_cmd);
    std::string sweep_material;
    std::string t_grid_spec = "0.05,0.1,0.15,0.2,0.25,0.3,0.4,0.5";
    std::string eps_set_spec = "0.6,0.7,0.79,0.9";
    thick_cmd->add_option("--material", sweep_material, "material name")->required();
    thick_cmd->add_option("--t-grid", t_grid_spec, "thickness list [mm]");
    thick_cmd->add_option("--eps-set", eps_set_spec, "effectiveness list");

    auto* limits_cmd = app.add_subcommand(
        "limits", "axial conduction parameter and high-NTU effectiveness ceiling");
    std::string limits_material;
    double limits_t_mm = -1.0;
    double limits_d_mm = 1.0;
    limits_cmd->add_option("--material", limits_material, "catalog material name")
        ->required();
    limits_cmd->add_option("--t", limits_t_mm,
                           "plate thickness [mm]; default: catalog minimum");
    limits_cmd->add_option("--D", limits_d_mm, "plate spacing [mm]");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto started = std::chrono::steady_clock::now();
        if (run_cmd->parsed()) {
            const auto spec = load_scenario(scenario_arg);
            finish(hexopt::run_scenario(spec), spec, format, out, verify, started);
        } else if (eff_cmd->parsed()) {
            const auto spec = load_scenario(scenario_arg);
            const auto grid = parse_grid_spec(grid_spec);
            finish(hexopt::run_effectiveness_sweep(spec, grid), spec, format, out,
                   verify, started);
        } else if (thick_cmd->parsed()) {
            const auto spec = load_scenario(scenario_arg);
            std::vector<double> t_grid = parse_list(t_grid_spec);
            for (double& t : t_grid) {
                t *= 1e-3;  // mm -> m
            }
            finish(hexopt::run_thickness_sweep(spec, t_grid, parse_list(eps_set_spec),
                                               sweep_material),
                   spec, format, out, verify, started);
        } else if (limits_cmd->parsed()) {
            const auto* entry = hexopt::catalog_material(limits_material);
            if (!entry) {
                throw std::runtime_error("unknown catalog material '" + limits_material +
                                         "'");
            }
            double t_m = limits_t_mm * 1e-3;
            if (limits_t_mm < 0.0) {
                if (!entry->spec.min_thickness) {
                    throw std::runtime_error("material has no catalog thickness; pass --t");
                }
                t_m = *entry->spec.min_thickness;
            }
            const auto spec = hexopt::builtin_paper_scenario("table2");
            const hexopt::ReferenceScales scales(spec.fluid, spec.t_ref, spec.delta_p);
            const hexopt::FlowConstants consts;
            const hexopt::NondimDesign probe(1.0, limits_d_mm * 1e-3 / spec.t_ref,
                                             t_m / spec.t_ref);
            const double m = hexopt::axial_conduction_parameter(probe, spec.fluid,
                                                                entry->spec, scales,
                                                                consts);
            std::cout << "material=" << entry->spec.name
                      << " k_w=" << entry->spec.wall_conductivity
                      << " t_mm=" << t_m * 1e3 << " D_mm=" << limits_d_mm << " M=" << m
                      << " eps_limit=" << hexopt::effectiveness_limit(m) << "\n";
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
