#include "doctest.h"

#include <cmath>
#include <optional>
#include <string>

#include "hexopt/scenario.hpp"

using namespace hexopt;

namespace {

// the table2 scenario restated as a user file, in mixed units
const char* kTable2File = R"(# unconstrained sizing study
[scenario]
name = table2
strategy = gamma_linked
eps_d = 0.791
gamma = 0.16
delta_T = 80 K
delta_P = 170 Pa
t_ref = 0.16 mm

[fluid]
rho = 1.060 kg/m3
c_p = 1008 J/kgK
mu = 19.99e-6 Pa.s
k = 28.8 mW/mK

[baseline]
L = 158.0 mm
D = 1.0 mm
t = 0.16 mm
W = 95.0 mm
n = 40
material = austenitic_steel

[[material]]
name = plastic
k_w = 0.2 W/mK
t_min = 0.1 mm

[[material]]
name = austenitic_steel
k_w = 20 W/mK
t_min = 0.25 mm

[[material]]
name = al2o3
k_w = 27 W/mK
t_min = 0.25 mm

[[material]]
name = aln
k_w = 180 W/mK
t_min = 0.25 mm

[[material]]
name = aluminum
k_w = 237 W/mK
t_min = 0.3 mm

[[material]]
name = copper
k_w = 398 W/mK
t_min = 0.5 mm
)";

std::string replace_once(std::string text, const std::string& from,
                         const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

// Field-wise comparison up to float rounding: converting "28.8 mW/mK" lands
// within one ulp of the literal 0.0288, not on the same bits.
bool close(double a, double b) { return std::abs(a - b) <= 4e-16 * std::abs(b); }

bool close_opt(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || close(*a, *b);
}

bool scenarios_match(const ScenarioSpec& a, const ScenarioSpec& b) {
    if (a.name != b.name || a.strategy != b.strategy) return false;
    if (!close(a.eps_d, b.eps_d) || !close_opt(a.gamma, b.gamma) ||
        !close_opt(a.t_d, b.t_d) || !close_opt(a.d_min, b.d_min) ||
        !close(a.delta_t, b.delta_t) || !close(a.delta_p, b.delta_p) ||
        !close(a.t_ref, b.t_ref)) {
        return false;
    }
    if (!close(a.fluid.density, b.fluid.density) ||
        !close(a.fluid.specific_heat, b.fluid.specific_heat) ||
        !close(a.fluid.dynamic_viscosity, b.fluid.dynamic_viscosity) ||
        !close(a.fluid.thermal_conductivity, b.fluid.thermal_conductivity)) {
        return false;
    }
    if (!close(a.baseline.length, b.baseline.length) ||
        !close(a.baseline.spacing, b.baseline.spacing) ||
        !close(a.baseline.thickness, b.baseline.thickness) ||
        !close(a.baseline.width, b.baseline.width) ||
        a.baseline.channels != b.baseline.channels ||
        a.baseline.material != b.baseline.material) {
        return false;
    }
    if (a.materials.size() != b.materials.size()) return false;
    for (std::size_t i = 0; i < a.materials.size(); ++i) {
        if (a.materials[i].name != b.materials[i].name ||
            !close(a.materials[i].wall_conductivity, b.materials[i].wall_conductivity) ||
            !close_opt(a.materials[i].min_thickness, b.materials[i].min_thickness)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("builtin scenarios") {
    for (const auto& name : builtin_scenario_names()) {
        CAPTURE(name);
        const auto spec = builtin_paper_scenario(name);
        CHECK(spec.name == name);
        CHECK(spec.eps_d == 0.791);
        CHECK(spec.materials.size() == 6);
        CHECK(spec.fluid.density == 1.060);
        CHECK(spec.baseline.channels == 40);
        // every builtin survives the same validation as user files
        CHECK(parse_scenario(serialize_scenario(spec)) == spec);
    }
    const auto table2 = builtin_paper_scenario("table2");
    CHECK(table2.strategy == Strategy::GammaLinked);
    CHECK(table2.gamma == 0.16);
    CHECK(!table2.t_d);
    CHECK(!table2.d_min);

    const auto fouling = builtin_paper_scenario("table3-uniform-fouling");
    CHECK(fouling.strategy == Strategy::UniformThicknessFouling);
    CHECK(fouling.t_d == 0.5e-3);
    CHECK(fouling.d_min == 0.8e-3);

    const auto specific = builtin_paper_scenario("table3-material-specific");
    CHECK(specific.strategy == Strategy::MaterialSpecificFouling);
    CHECK(specific.find_material("plastic")->min_thickness == 0.1e-3);
    CHECK(specific.find_material("copper")->min_thickness == 0.5e-3);
    CHECK(specific.find_material("aluminum")->min_thickness == 0.3e-3);

    CHECK(builtin_paper_scenario("fig3-sweep").strategy ==
          Strategy::MaterialSpecificFouling);
    CHECK(builtin_paper_scenario("fig4-sweep").strategy ==
          Strategy::UniformThicknessFouling);
    CHECK_THROWS_AS(builtin_paper_scenario("table9"), ScenarioError);
}

TEST_CASE("catalog") {
    const auto& catalog = material_catalog();
    REQUIRE(catalog.size() == 6);
    // conductivities in catalog order
    const double expected_kw[] = {0.2, 20.0, 27.0, 180.0, 237.0, 398.0};
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        CHECK(catalog[i].spec.wall_conductivity == expected_kw[i]);
    }
    CHECK(catalog_material("Copper")->spec.name == "copper");
    CHECK(catalog_material("AUSTENITIC STEEL")->spec.name == "austenitic_steel");
    CHECK(catalog_material("unobtainium") == nullptr);
    // the plastic thickness is a structural choice, recorded as such
    CHECK(catalog_material("plastic")->thickness_note.find("structural") !=
          std::string::npos);
}

TEST_CASE("a user file restating the builtin equals the builtin") {
    const auto parsed = parse_scenario(kTable2File);
    CHECK(scenarios_match(parsed, builtin_paper_scenario("table2")));
}

TEST_CASE("units convert to SI") {
    // the same scenario written in different unit spellings parses identically
    auto text = std::string(kTable2File);
    text = replace_once(text, "t_ref = 0.16 mm", "t_ref = 160 um");
    text = replace_once(text, "delta_P = 170 Pa", "delta_P = 0.17 kPa");
    text = replace_once(text, "delta_T = 80 K", "delta_T = 80 C");
    text = replace_once(text, "k = 28.8 mW/mK", "k = 0.0288 W/mK");
    text = replace_once(text, "L = 158.0 mm", "L = 0.158 m");
    CHECK(scenarios_match(parse_scenario(text), builtin_paper_scenario("table2")));
    CHECK(scenarios_match(parse_scenario(text), parse_scenario(kTable2File)));
}

TEST_CASE("serialize/parse round trip") {
    const auto spec = parse_scenario(kTable2File);
    const auto again = parse_scenario(serialize_scenario(spec));
    CHECK(again == spec);
    // idempotent canonical form
    CHECK(serialize_scenario(again) == serialize_scenario(spec));
}

TEST_CASE("material names are case-insensitive") {
    const auto spec = builtin_paper_scenario("table2");
    CHECK(spec.find_material("PLASTIC") == spec.find_material("plastic"));
    CHECK(spec.find_material("Austenitic Steel") ==
          spec.find_material("austenitic_steel"));
    CHECK(spec.find_material("nope") == nullptr);
}

TEST_CASE("syntax errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_scenario("[scenario\n"), "line 1: malformed section header",
                         ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario("x = 1\n"), "line 1: key outside of any section",
                         ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario("[scenario]\nstrategy\n"),
                         "line 2: expected 'key = value'", ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario("[bogus]\n"), "line 1: unknown section [bogus]",
                         ScenarioError);

    // duplicate keys are rejected
    const auto dup = replace_once(std::string(kTable2File), "gamma = 0.16",
                                  "gamma = 0.16\ngamma = 0.2");
    CHECK_THROWS_AS(parse_scenario(dup), ScenarioError);
}

TEST_CASE("semantic errors carry field paths") {
    // eps_d below the analysis floor
    auto bad_eps = replace_once(std::string(kTable2File), "eps_d = 0.791", "eps_d = 0.4");
    CHECK_THROWS_WITH_AS(parse_scenario(bad_eps), "scenario.eps_d: must lie in (0.5, 1)",
                         ScenarioError);

    // a thickness strategy without t_d
    auto no_td = replace_once(std::string(kTable2File), "strategy = gamma_linked",
                              "strategy = uniform_thickness");
    no_td = replace_once(no_td, "gamma = 0.16\n", "");
    CHECK_THROWS_WITH_AS(parse_scenario(no_td),
                         "scenario.t_d: required by strategy uniform_thickness",
                         ScenarioError);

    // gamma_linked without gamma
    auto no_gamma = replace_once(std::string(kTable2File), "gamma = 0.16\n", "");
    CHECK_THROWS_WITH_AS(parse_scenario(no_gamma),
                         "scenario.gamma: required by strategy gamma_linked",
                         ScenarioError);

    // non-positive property
    auto bad_rho = replace_once(std::string(kTable2File), "rho = 1.060 kg/m3",
                                "rho = -1 kg/m3");
    CHECK_THROWS_WITH_AS(parse_scenario(bad_rho), "fluid.rho: must be positive",
                         ScenarioError);

    // baseline material must exist
    auto bad_base = replace_once(std::string(kTable2File),
                                 "material = austenitic_steel", "material = bronze");
    CHECK_THROWS_AS(parse_scenario(bad_base), ScenarioError);
}

TEST_CASE("units are mandatory and dimension-checked") {
    // missing unit on a dimensional field
    auto missing = replace_once(std::string(kTable2File), "delta_P = 170 Pa",
                                "delta_P = 170");
    CHECK_THROWS_WITH_AS(parse_scenario(missing),
                         "line 8: scenario.delta_P: expected '<number> <unit>'",
                         ScenarioError);

    // wrong dimension
    auto wrong = replace_once(std::string(kTable2File), "delta_P = 170 Pa",
                              "delta_P = 170 mm");
    CHECK_THROWS_AS(parse_scenario(wrong), ScenarioError);

    // unknown unit token
    auto unknown = replace_once(std::string(kTable2File), "t_ref = 0.16 mm",
                                "t_ref = 0.16 cm");
    CHECK_THROWS_AS(parse_scenario(unknown), ScenarioError);

    // unit on a dimensionless field
    auto extra = replace_once(std::string(kTable2File), "eps_d = 0.791",
                              "eps_d = 0.791 K");
    CHECK_THROWS_AS(parse_scenario(extra), ScenarioError);
}
