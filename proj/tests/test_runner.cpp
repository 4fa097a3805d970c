#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hexopt/runner.hpp"

using namespace hexopt;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, sep)) {
        out.push_back(token);
    }
    return out;
}

const ResultRow* find_row(const std::vector<ResultRow>& rows,
                          const std::string& strategy, const std::string& material) {
    for (const auto& row : rows) {
        if (row.strategy == strategy && row.material == material) {
            return &row;
        }
    }
    return nullptr;
}

}  // namespace

TEST_CASE("run_scenario: unconstrained study") {
    const auto spec = builtin_paper_scenario("table2");
    const auto rows = run_scenario(spec);
    REQUIRE(rows.size() == 7);  // baseline + six materials

    CHECK(rows.front().strategy == "baseline");
    CHECK(rows.front().material == "austenitic_steel");
    CHECK(rows.front().improvement_factor == 1.0);
    CHECK(rows.front().channels == 40);

    const auto* plastic = find_row(rows, "gamma_linked", "plastic");
    REQUIRE(plastic);
    CHECK(plastic->q_nondim == doctest::Approx(1095.615e-6).epsilon(0.005));
    CHECK(plastic->improvement_factor == doctest::Approx(962.44).epsilon(0.005));
    CHECK(plastic->feasible);
    CHECK(!plastic->fouling_active);

    verify_rows(rows, spec);  // every row re-evaluates consistently
}

TEST_CASE("run_scenario: material-specific fouling flags") {
    const auto spec = builtin_paper_scenario("table3-material-specific");
    const auto rows = run_scenario(spec);
    REQUIRE(rows.size() == 6);
    for (const char* starred : {"plastic", "austenitic_steel", "al2o3"}) {
        const auto* row = find_row(rows, "material_specific_fouling", starred);
        REQUIRE(row);
        CHECK(row->fouling_active);
        CHECK(row->d_star == 5.0);
    }
    for (const char* open : {"aln", "aluminum", "copper"}) {
        const auto* row = find_row(rows, "material_specific_fouling", open);
        REQUIRE(row);
        CHECK(!row->fouling_active);
        CHECK(row->d_star > 5.0);
    }
    verify_rows(rows, spec);
}

TEST_CASE("run_scenario: reference designs and infeasibility") {
    const auto spec = builtin_paper_scenario("table3-am-reference");
    const auto rows = run_scenario(spec);
    REQUIRE(rows.size() == 6);
    const auto* copper = find_row(rows, "am_reference", "copper");
    REQUIRE(copper);
    CHECK(!copper->feasible);
    CHECK(copper->eps_limit == doctest::Approx(0.7438).epsilon(1e-3));
    const auto* steel = find_row(rows, "am_reference", "austenitic_steel");
    REQUIRE(steel);
    CHECK(steel->feasible);
    CHECK(steel->d_star == 6.25);  // baseline spacing preserved
    CHECK(steel->l_star == doctest::Approx(995.67).epsilon(0.005));
    verify_rows(rows, spec);
}

TEST_CASE("effectiveness sweep records fouling transitions") {
    const auto spec = builtin_paper_scenario("fig3-sweep");
    std::vector<double> grid;
    for (double eps = 0.55; eps < 0.945; eps += 0.0325) {
        grid.push_back(eps);
    }
    const auto rows = run_effectiveness_sweep(spec, grid);
    REQUIRE(rows.size() == grid.size() * 6);

    // per material: power density strictly decreasing along the grid, and
    // plastic on top at every point
    for (const auto& material : spec.materials) {
        double prev = 1e9;
        for (const double eps : grid) {
            const ResultRow* row = nullptr;
            const ResultRow* best = nullptr;
            for (const auto& r : rows) {
                if (r.eps_d != eps) continue;
                if (r.material == material.name) row = &r;
                if (!best || r.q_nondim > best->q_nondim) best = &r;
            }
            REQUIRE(row);
            CHECK(row->feasible);
            CHECK(row->q_nondim < prev);
            prev = row->q_nondim;
            CHECK(best->material == "plastic");
        }
    }

    // copper: floor active at the low end of the grid, inactive at the top
    const ResultRow* cu_low = nullptr;
    const ResultRow* cu_high = nullptr;
    for (const auto& r : rows) {
        if (r.material != "copper") continue;
        if (r.eps_d == grid.front()) cu_low = &r;
        if (r.eps_d == grid.back()) cu_high = &r;
    }
    REQUIRE(cu_low);
    REQUIRE(cu_high);
    CHECK(cu_low->fouling_active);
    CHECK(!cu_high->fouling_active);
}

TEST_CASE("thickness sweep is non-increasing in thickness") {
    const auto spec = builtin_paper_scenario("fig4-sweep");
    const std::vector<double> t_grid = {0.1e-3, 0.2e-3, 0.3e-3, 0.5e-3};
    const std::vector<double> eps_set = {0.6, 0.79, 0.9};
    const auto rows = run_thickness_sweep(spec, t_grid, eps_set, "copper");
    REQUIRE(rows.size() == t_grid.size() * eps_set.size());
    for (const double eps : eps_set) {
        double prev = 1e9;
        for (const double t : t_grid) {
            const ResultRow* row = nullptr;
            for (const auto& r : rows) {
                if (r.eps_d == eps && std::abs(r.t - t) < 1e-12) row = &r;
            }
            REQUIRE(row);
            CHECK(row->q_nondim <= prev);
            prev = row->q_nondim;
        }
    }
    CHECK_THROWS_AS(run_thickness_sweep(spec, t_grid, eps_set, "bronze"), ScenarioError);
}

TEST_CASE("CSV emission") {
    const auto spec = builtin_paper_scenario("table3-am-reference");
    const auto rows = run_scenario(spec);
    const std::string csv = to_csv(rows);
    const auto lines = split(csv, '\n');
    REQUIRE(lines.size() >= 7);
    CHECK(lines[0] ==
          "scenario,strategy,material,eps_d,t_star,t,D_star,D,L_star,L,q_nondim,"
          "power_density,improvement_factor,fouling_active,feasible,W,n,"
          "mdot_per_width,eps_limit");

    // deterministic: emitting twice is byte-identical
    CHECK(to_csv(rows) == csv);

    // empty input still carries the header
    CHECK(to_csv({}) == std::string(lines[0]) + "\n");

    // the infeasible copper row has no design fields, only the ceiling
    bool found_copper = false;
    for (const auto& line : lines) {
        if (line.find(",copper,") == std::string::npos) continue;
        found_copper = true;
        const auto cells = split(line, ',');
        REQUIRE(cells.size() == 19);
        CHECK(cells[4].empty());   // t_star
        CHECK(cells[10].empty());  // q_nondim
        CHECK(cells[14] == "false");
        CHECK(!cells[18].empty());  // eps_limit
    }
    CHECK(found_copper);

    // q_nondim in scientific notation with 9 significant digits
    const auto plastic_cells = split(lines[1], ',');
    CHECK(plastic_cells[10].find("e-") != std::string::npos);
    CHECK(plastic_cells[10].find('.') != std::string::npos);
}

TEST_CASE("JSON emission") {
    const auto spec = builtin_paper_scenario("table3-am-reference");
    const auto rows = run_scenario(spec);
    const std::string json = to_json(rows);
    CHECK(to_json(rows) == json);
    CHECK(json.find("\"material\": \"copper\"") != std::string::npos);
    CHECK(json.find("\"feasible\": false") != std::string::npos);
    CHECK(json.find("\"q_nondim\": null") != std::string::npos);
    CHECK(json.find("\"eps_limit\": 0.743") != std::string::npos);
}

TEST_CASE("row ordering is canonical") {
    const auto spec = builtin_paper_scenario("table2");
    auto rows = run_scenario(spec);
    // shuffle deterministically, then restore
    std::vector<ResultRow> shuffled;
    for (std::size_t i = rows.size(); i-- > 0;) {
        shuffled.push_back(rows[i]);
    }
    sort_rows(shuffled);
    REQUIRE(shuffled.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(shuffled[i].material == rows[i].material);
        CHECK(shuffled[i].strategy == rows[i].strategy);
    }
    // baseline first, then catalog order
    CHECK(rows[0].strategy == "baseline");
    CHECK(rows[1].material == "plastic");
    CHECK(rows[6].material == "copper");
}

TEST_CASE("verify_rows rejects tampered rows") {
    const auto spec = builtin_paper_scenario("table2");
    auto rows = run_scenario(spec);
    rows[1].q_nondim *= 1.001;
    CHECK_THROWS_AS(verify_rows(rows, spec), std::runtime_error);
}
