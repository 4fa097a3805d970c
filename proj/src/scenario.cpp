#include "hexopt/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace hexopt {

namespace {

// ---------------------------------------------------------------------------
// names and strategies
// ---------------------------------------------------------------------------

const std::map<Strategy, std::string> kStrategyNames = {
    {Strategy::GammaLinked, "gamma_linked"},
    {Strategy::UniformThickness, "uniform_thickness"},
    {Strategy::UniformThicknessFouling, "uniform_thickness_fouling"},
    {Strategy::MaterialSpecificFouling, "material_specific_fouling"},
    {Strategy::AmReference, "am_reference"},
};

// ---------------------------------------------------------------------------
// units
// ---------------------------------------------------------------------------

enum class Dimension {
    None,
    Length,
    Pressure,
    Temperature,
    Density,
    SpecificHeat,
    Viscosity,
    Conductivity,
};

struct UnitDef {
    const char* token;
    Dimension dimension;
    double to_si;
};

// C equals K for temperature differences, the only temperature this format carries.
constexpr UnitDef kUnits[] = {
    {"m", Dimension::Length, 1.0},
    {"mm", Dimension::Length, 1e-3},
    {"um", Dimension::Length, 1e-6},
    {"Pa", Dimension::Pressure, 1.0},
    {"kPa", Dimension::Pressure, 1e3},
    {"K", Dimension::Temperature, 1.0},
    {"C", Dimension::Temperature, 1.0},
    {"kg/m3", Dimension::Density, 1.0},
    {"J/kgK", Dimension::SpecificHeat, 1.0},
    {"Pa.s", Dimension::Viscosity, 1.0},
    {"W/mK", Dimension::Conductivity, 1.0},
    {"mW/mK", Dimension::Conductivity, 1e-3},
};

const UnitDef* find_unit(std::string_view token) {
    for (const auto& unit : kUnits) {
        if (token == unit.token) {
            return &unit;
        }
    }
    return nullptr;
}

const char* dimension_name(Dimension dim) {
    switch (dim) {
        case Dimension::Length: return "length";
        case Dimension::Pressure: return "pressure";
        case Dimension::Temperature: return "temperature";
        case Dimension::Density: return "density";
        case Dimension::SpecificHeat: return "specific heat";
        case Dimension::Viscosity: return "viscosity";
        case Dimension::Conductivity: return "thermal conductivity";
        case Dimension::None: break;
    }
    return "dimensionless";
}

// ---------------------------------------------------------------------------
// low-level text helpers
// ---------------------------------------------------------------------------

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail_line(int line, const std::string& message) {
    throw ScenarioError("line " + std::to_string(line) + ": " + message);
}

[[noreturn]] void fail_field(const std::string& path, const std::string& message) {
    throw ScenarioError(path + ": " + message);
}

double parse_number(std::string_view token, int line) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        fail_line(line, "'" + std::string(token) + "' is not a number");
    }
    return value;
}

// "key = value" fields, collected per section with their source line.
struct RawField {
    std::string value;
    int line = 0;
};

struct RawSection {
    std::map<std::string, RawField> fields;

    void set(const std::string& key, std::string_view value, int line,
             const std::string& section_name) {
        if (!fields.emplace(key, RawField{std::string(value), line}).second) {
            fail_line(line, "duplicate key '" + key + "' in [" + section_name + "]");
        }
    }
};

class FieldReader {
public:
    FieldReader(const RawSection& section, std::string section_name)
        : section_(section), name_(std::move(section_name)) {}

    // Dimensional value: requires exactly "number unit" with a unit of the
    // expected dimension; returns the SI value.
    std::optional<double> dimensional(const std::string& key, Dimension dim) {
        const RawField* field = find(key);
        if (!field) {
            return std::nullopt;
        }
        std::istringstream stream(field->value);
        std::string number_token, unit_token, extra;
        stream >> number_token >> unit_token;
        if (number_token.empty() || unit_token.empty() || (stream >> extra)) {
            fail_line(field->line, path(key) + ": expected '<number> <unit>'");
        }
        const double value = parse_number(number_token, field->line);
        const UnitDef* unit = find_unit(unit_token);
        if (!unit) {
            fail_line(field->line, path(key) + ": unknown unit '" + unit_token + "'");
        }
        if (unit->dimension != dim) {
            fail_line(field->line, path(key) + ": unit '" + unit_token + "' is not a " +
                                       std::string(dimension_name(dim)) + " unit");
        }
        return value * unit->to_si;
    }

    std::optional<double> dimensionless(const std::string& key) {
        const RawField* field = find(key);
        if (!field) {
            return std::nullopt;
        }
        std::istringstream stream(field->value);
        std::string number_token, extra;
        stream >> number_token;
        if (number_token.empty() || (stream >> extra)) {
            fail_line(field->line, path(key) + ": expected a bare number (no unit)");
        }
        return parse_number(number_token, field->line);
    }

    std::optional<std::string> text(const std::string& key) {
        const RawField* field = find(key);
        if (!field) {
            return std::nullopt;
        }
        return field->value;
    }

    double require_dimensional(const std::string& key, Dimension dim) {
        auto value = dimensional(key, dim);
        if (!value) {
            fail_field(path(key), "required field is missing");
        }
        return *value;
    }

    double require_dimensionless(const std::string& key) {
        auto value = dimensionless(key);
        if (!value) {
            fail_field(path(key), "required field is missing");
        }
        return *value;
    }

    std::string require_text(const std::string& key) {
        auto value = text(key);
        if (!value) {
            fail_field(path(key), "required field is missing");
        }
        return *value;
    }

    void reject_unknown(const std::vector<std::string>& known) const {
        for (const auto& [key, field] : section_.fields) {
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                fail_line(field.line, "unknown key '" + key + "' in [" + name_ + "]");
            }
        }
    }

private:
    const RawField* find(const std::string& key) const {
        const auto it = section_.fields.find(key);
        return it == section_.fields.end() ? nullptr : &it->second;
    }

    std::string path(const std::string& key) const { return name_ + "." + key; }

    const RawSection& section_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// semantic validation, shared by builtins and parsed files
// ---------------------------------------------------------------------------

void check_positive(double value, const std::string& path) {
    if (!(value > 0.0)) {
        fail_field(path, "must be positive");
    }
}

void validate_scenario(const ScenarioSpec& spec) {
    if (!(spec.eps_d > 0.5 && spec.eps_d < 1.0)) {
        fail_field("scenario.eps_d", "must lie in (0.5, 1)");
    }
    check_positive(spec.delta_t, "scenario.delta_T");
    check_positive(spec.delta_p, "scenario.delta_P");
    check_positive(spec.t_ref, "scenario.t_ref");
    if (spec.gamma) {
        check_positive(*spec.gamma, "scenario.gamma");
    }
    if (spec.t_d) {
        check_positive(*spec.t_d, "scenario.t_d");
    }
    if (spec.d_min) {
        check_positive(*spec.d_min, "scenario.D_min");
    }
    switch (spec.strategy) {
        case Strategy::GammaLinked:
            if (!spec.gamma) {
                fail_field("scenario.gamma", "required by strategy gamma_linked");
            }
            break;
        case Strategy::UniformThickness:
        case Strategy::UniformThicknessFouling:
            if (!spec.t_d) {
                fail_field("scenario.t_d", "required by strategy " + to_string(spec.strategy));
            }
            break;
        case Strategy::MaterialSpecificFouling:
        case Strategy::AmReference:
            break;
    }
    if ((spec.strategy == Strategy::UniformThicknessFouling ||
         spec.strategy == Strategy::MaterialSpecificFouling) &&
        !spec.d_min) {
        fail_field("scenario.D_min", "required by strategy " + to_string(spec.strategy));
    }
    check_positive(spec.fluid.density, "fluid.rho");
    check_positive(spec.fluid.specific_heat, "fluid.c_p");
    check_positive(spec.fluid.dynamic_viscosity, "fluid.mu");
    check_positive(spec.fluid.thermal_conductivity, "fluid.k");
    check_positive(spec.baseline.length, "baseline.L");
    check_positive(spec.baseline.spacing, "baseline.D");
    check_positive(spec.baseline.thickness, "baseline.t");
    check_positive(spec.baseline.width, "baseline.W");
    if (spec.baseline.channels < 1) {
        fail_field("baseline.n", "must be a positive integer");
    }
    if (spec.materials.empty()) {
        fail_field("material", "at least one [[material]] block is required");
    }
    for (std::size_t i = 0; i < spec.materials.size(); ++i) {
        const auto& mat = spec.materials[i];
        const std::string path = "material[" + mat.name + "]";
        if (mat.name.empty()) {
            fail_field("material.name", "must not be empty");
        }
        check_positive(mat.wall_conductivity, path + ".k_w");
        if (mat.min_thickness) {
            check_positive(*mat.min_thickness, path + ".t_min");
        }
        for (std::size_t j = i + 1; j < spec.materials.size(); ++j) {
            if (spec.materials[j].name == mat.name) {
                fail_field(path, "duplicate material name");
            }
        }
        if ((spec.strategy == Strategy::MaterialSpecificFouling ||
             spec.strategy == Strategy::AmReference) &&
            !mat.min_thickness) {
            fail_field(path + ".t_min", "required by strategy " + to_string(spec.strategy));
        }
    }
    if (!spec.find_material(spec.baseline.material)) {
        fail_field("baseline.material",
                   "'" + spec.baseline.material + "' is not in the material list");
    }
}

// ---------------------------------------------------------------------------
// number formatting for the canonical serialized form
// ---------------------------------------------------------------------------

std::string shortest(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

}  // namespace

std::string to_string(Strategy strategy) { return kStrategyNames.at(strategy); }

std::optional<Strategy> strategy_from_string(std::string_view text) {
    for (const auto& [strategy, name] : kStrategyNames) {
        if (text == name) {
            return strategy;
        }
    }
    return std::nullopt;
}

std::string normalize_material_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (const char c : name) {
        out.push_back(c == ' ' ? '_'
                               : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

const MaterialSpec* ScenarioSpec::find_material(std::string_view name) const {
    const std::string wanted = normalize_material_name(name);
    for (const auto& material : materials) {
        if (normalize_material_name(material.name) == wanted) {
            return &material;
        }
    }
    return nullptr;
}

const std::vector<CatalogMaterial>& material_catalog() {
    static const std::vector<CatalogMaterial> catalog = {
        {MaterialSpec("plastic", 0.2, 0.1e-3),
         "structural limit, not an additive-manufacturing resolution"},
        {MaterialSpec("austenitic_steel", 20.0, 0.25e-3), "LPBF melt-pool limit"},
        {MaterialSpec("al2o3", 27.0, 0.25e-3), "LPBF melt-pool limit"},
        {MaterialSpec("aln", 180.0, 0.25e-3), "LPBF melt-pool limit"},
        {MaterialSpec("aluminum", 237.0, 0.3e-3), "LPBF melt-pool limit"},
        {MaterialSpec("copper", 398.0, 0.5e-3), "LPBF melt-pool limit"},
    };
    return catalog;
}

const CatalogMaterial* catalog_material(std::string_view name) {
    const std::string wanted = normalize_material_name(name);
    for (const auto& entry : material_catalog()) {
        if (entry.spec.name == wanted) {
            return &entry;
        }
    }
    return nullptr;
}

ScenarioSpec builtin_paper_scenario(const std::string& name) {
    // Study-wide constants: air near the mean inlet temperature, the original
    // unit's geometry, and the target effectiveness the original unit
    // evaluates to (0.791, of which 0.79 is the rounded quote).
    ScenarioSpec spec{
        .name = name,
        .strategy = Strategy::GammaLinked,
        .eps_d = 0.791,
        .gamma = std::nullopt,
        .t_d = std::nullopt,
        .d_min = std::nullopt,
        .delta_t = 80.0,
        .delta_p = 170.0,
        .t_ref = 0.16e-3,
        .fluid = FluidProperties(1.060, 1008.0, 19.99e-6, 0.0288),
        .baseline = BaselineGeometry{0.158, 1.0e-3, 0.16e-3, 0.095, 40,
                                     "austenitic_steel"},
        .materials = {},
    };
    for (const auto& entry : material_catalog()) {
        spec.materials.push_back(entry.spec);
    }
    if (name == "table2") {
        spec.strategy = Strategy::GammaLinked;
        spec.gamma = 0.16;
    } else if (name == "table3-uniform") {
        spec.strategy = Strategy::UniformThickness;
        spec.t_d = 0.5e-3;
    } else if (name == "table3-uniform-fouling" || name == "fig4-sweep") {
        spec.strategy = Strategy::UniformThicknessFouling;
        spec.t_d = 0.5e-3;
        spec.d_min = 0.8e-3;
    } else if (name == "table3-material-specific" || name == "fig3-sweep") {
        spec.strategy = Strategy::MaterialSpecificFouling;
        spec.d_min = 0.8e-3;
    } else if (name == "table3-am-reference") {
        spec.strategy = Strategy::AmReference;
    } else {
        throw ScenarioError("unknown builtin scenario '" + name + "'");
    }
    validate_scenario(spec);
    return spec;
}

std::vector<std::string> builtin_scenario_names() {
    return {"table2",
            "table3-uniform",
            "table3-uniform-fouling",
            "table3-material-specific",
            "table3-am-reference",
            "fig3-sweep",
            "fig4-sweep"};
}

ScenarioSpec parse_scenario(const std::string& text) {
    RawSection scenario, fluid, baseline;
    std::vector<RawSection> materials;
    RawSection* current = nullptr;
    std::string current_name;

    std::istringstream stream(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        std::string_view line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line == "[[material]]") {
                materials.emplace_back();
                current = &materials.back();
                current_name = "material";
                continue;
            }
            if (line.back() != ']') {
                fail_line(line_no, "malformed section header");
            }
            const std::string_view name = line.substr(1, line.size() - 2);
            if (name == "scenario") {
                current = &scenario;
            } else if (name == "fluid") {
                current = &fluid;
            } else if (name == "baseline") {
                current = &baseline;
            } else {
                fail_line(line_no, "unknown section [" + std::string(name) + "]");
            }
            current_name = std::string(name);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail_line(line_no, "expected 'key = value'");
        }
        if (!current) {
            fail_line(line_no, "key outside of any section");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail_line(line_no, "empty key");
        }
        if (value.empty()) {
            fail_line(line_no, "empty value for key '" + key + "'");
        }
        current->set(key, value, line_no, current_name);
    }

    FieldReader scen(scenario, "scenario");
    scen.reject_unknown({"name", "strategy", "eps_d", "gamma", "t_d", "D_min",
                         "delta_T", "delta_P", "t_ref"});
    const std::string strategy_text = scen.require_text("strategy");
    const auto strategy = strategy_from_string(strategy_text);
    if (!strategy) {
        fail_field("scenario.strategy", "unknown strategy '" + strategy_text + "'");
    }

    FieldReader flu(fluid, "fluid");
    flu.reject_unknown({"rho", "c_p", "mu", "k"});
    FieldReader base(baseline, "baseline");
    base.reject_unknown({"L", "D", "t", "W", "n", "material"});

    const double rho = flu.require_dimensional("rho", Dimension::Density);
    const double c_p = flu.require_dimensional("c_p", Dimension::SpecificHeat);
    const double mu = flu.require_dimensional("mu", Dimension::Viscosity);
    const double k = flu.require_dimensional("k", Dimension::Conductivity);
    if (!(rho > 0.0)) fail_field("fluid.rho", "must be positive");
    if (!(c_p > 0.0)) fail_field("fluid.c_p", "must be positive");
    if (!(mu > 0.0)) fail_field("fluid.mu", "must be positive");
    if (!(k > 0.0)) fail_field("fluid.k", "must be positive");

    const double n_raw = base.require_dimensionless("n");
    if (n_raw < 1.0 || n_raw != std::floor(n_raw)) {
        fail_field("baseline.n", "must be a positive integer");
    }

    ScenarioSpec spec{
        .name = scen.text("name").value_or(""),
        .strategy = *strategy,
        .eps_d = scen.require_dimensionless("eps_d"),
        .gamma = scen.dimensionless("gamma"),
        .t_d = scen.dimensional("t_d", Dimension::Length),
        .d_min = scen.dimensional("D_min", Dimension::Length),
        .delta_t = scen.require_dimensional("delta_T", Dimension::Temperature),
        .delta_p = scen.require_dimensional("delta_P", Dimension::Pressure),
        .t_ref = scen.require_dimensional("t_ref", Dimension::Length),
        .fluid = FluidProperties(rho, c_p, mu, k),
        .baseline =
            BaselineGeometry{base.require_dimensional("L", Dimension::Length),
                             base.require_dimensional("D", Dimension::Length),
                             base.require_dimensional("t", Dimension::Length),
                             base.require_dimensional("W", Dimension::Length),
                             static_cast<int>(n_raw),
                             normalize_material_name(base.require_text("material"))},
        .materials = {},
    };

    for (std::size_t i = 0; i < materials.size(); ++i) {
        FieldReader mat(materials[i], "material");
        mat.reject_unknown({"name", "k_w", "t_min"});
        const auto name = mat.text("name");
        if (!name) {
            fail_field("material[" + std::to_string(i) + "].name",
                       "required field is missing");
        }
        const double k_w = mat.require_dimensional("k_w", Dimension::Conductivity);
        if (!(k_w > 0.0)) {
            fail_field("material[" + *name + "].k_w", "must be positive");
        }
        const auto t_min = mat.dimensional("t_min", Dimension::Length);
        if (t_min && !(*t_min > 0.0)) {
            fail_field("material[" + *name + "].t_min", "must be positive");
        }
        spec.materials.emplace_back(normalize_material_name(*name), k_w, t_min);
    }

    validate_scenario(spec);
    return spec;
}

std::string serialize_scenario(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "[scenario]\n";
    if (!spec.name.empty()) {
        out << "name = " << spec.name << "\n";
    }
    out << "strategy = " << to_string(spec.strategy) << "\n";
    out << "eps_d = " << shortest(spec.eps_d) << "\n";
    if (spec.gamma) {
        out << "gamma = " << shortest(*spec.gamma) << "\n";
    }
    if (spec.t_d) {
        out << "t_d = " << shortest(*spec.t_d) << " m\n";
    }
    if (spec.d_min) {
        out << "D_min = " << shortest(*spec.d_min) << " m\n";
    }
    out << "delta_T = " << shortest(spec.delta_t) << " K\n";
    out << "delta_P = " << shortest(spec.delta_p) << " Pa\n";
    out << "t_ref = " << shortest(spec.t_ref) << " m\n";
    out << "\n[fluid]\n";
    out << "rho = " << shortest(spec.fluid.density) << " kg/m3\n";
    out << "c_p = " << shortest(spec.fluid.specific_heat) << " J/kgK\n";
    out << "mu = " << shortest(spec.fluid.dynamic_viscosity) << " Pa.s\n";
    out << "k = " << shortest(spec.fluid.thermal_conductivity) << " W/mK\n";
    out << "\n[baseline]\n";
    out << "L = " << shortest(spec.baseline.length) << " m\n";
    out << "D = " << shortest(spec.baseline.spacing) << " m\n";
    out << "t = " << shortest(spec.baseline.thickness) << " m\n";
    out << "W = " << shortest(spec.baseline.width) << " m\n";
    out << "n = " << spec.baseline.channels << "\n";
    out << "material = " << spec.baseline.material << "\n";
    for (const auto& material : spec.materials) {
        out << "\n[[material]]\n";
        out << "name = " << material.name << "\n";
        out << "k_w = " << shortest(material.wall_conductivity) << " W/mK\n";
        if (material.min_thickness) {
            out << "t_min = " << shortest(*material.min_thickness) << " m\n";
        }
    }
    return out.str();
}

}  // namespace hexopt
