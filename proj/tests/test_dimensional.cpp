#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hexopt/dimensional.hpp"
#include "hexopt/thermal.hpp"

using namespace hexopt;

namespace {

FluidProperties study_air() { return FluidProperties(1.060, 1008.0, 19.99e-6, 0.0288); }

// Baseline unit: 40 channels of 95 mm width at 1 mm spacing, 158 mm long,
// 170 Pa, inlet temperature difference 80 K.
BaselineOperating study_baseline() {
    const double mdot =
        mass_flow_per_width(1.0e-3, 0.158, 170.0, study_air(), FlowConstants());
    return BaselineOperating(80.0, 40 * 0.095 * mdot, 95.0, 0.16e-3, 170.0);
}

}  // namespace

TEST_CASE("mass flow per unit width") {
    const auto fluid = study_air();
    const FlowConstants consts;

    // baseline channel: (2*1.060/(24*19.99e-6)) * (1e-3)^3 * 170/0.158
    const double base = mass_flow_per_width(1.0e-3, 0.158, 170.0, fluid, consts);
    CHECK(base == doctest::Approx(4.75449e-3).epsilon(1e-5));

    // published value for the steel optimum geometry
    const double steel = mass_flow_per_width(0.220e-3, 10.95e-3, 170.0, fluid, consts);
    CHECK(steel == doctest::Approx(7.31e-4).epsilon(0.01));

    // cubic in the spacing
    const double doubled = mass_flow_per_width(2.0e-3, 0.158, 170.0, fluid, consts);
    CHECK(doubled == doctest::Approx(8.0 * base).epsilon(1e-12));

    CHECK_THROWS_AS(mass_flow_per_width(0.0, 0.158, 170.0, fluid, consts),
                    std::invalid_argument);
}

TEST_CASE("dimensionalize the baseline to itself") {
    const auto fluid = study_air();
    const auto baseline = study_baseline();
    const FlowConstants consts;

    const NondimDesign design(987.5, 6.25, 1.0);
    const double q_nondim = 1.138367e-6;  // evaluated baseline power density
    const auto dim = dimensionalize(design, q_nondim, baseline, fluid, consts);
    CHECK(dim.length == doctest::Approx(0.158).epsilon(1e-12));
    CHECK(dim.spacing == doctest::Approx(1.0e-3).epsilon(1e-12));
    CHECK(dim.thickness == doctest::Approx(0.16e-3).epsilon(1e-12));
    CHECK(dim.width == doctest::Approx(0.095).epsilon(1e-12));
    CHECK(dim.channels == 40);
    CHECK(dim.mdot_per_width == doctest::Approx(4.75449e-3).epsilon(1e-5));
    // q * c_p * dT * rho * dP / mu = 1.138e-6 * 7.2693e11
    CHECK(dim.power_density == doctest::Approx(8.2751e5).epsilon(1e-4));
}

TEST_CASE("width rule and channel count") {
    const auto fluid = study_air();
    const auto baseline = study_baseline();
    const FlowConstants consts;

    // plastic unconstrained optimum, published as D = 0.022 mm, W = 2.09 mm
    const NondimDesign design(0.7000315, 0.13746522, 0.021994435);
    const auto dim = dimensionalize(design, 1.0956145e-3, baseline, fluid, consts);
    CHECK(dim.width == doctest::Approx(95.0 * dim.spacing).epsilon(1e-12));
    CHECK(dim.width == doctest::Approx(2.09e-3).epsilon(0.01));
    CHECK(dim.power_density == doctest::Approx(7.9643e8).epsilon(1e-3));

    // the channel count reproduces the flow product to within one channel
    const double product = dim.channels * dim.width * dim.mdot_per_width;
    CHECK(std::abs(product - baseline.total_flow_product) <=
          baseline.total_flow_product / dim.channels);
}

TEST_CASE("round trip is exact") {
    const auto fluid = study_air();
    const auto baseline = study_baseline();
    const FlowConstants consts;

    for (const auto& design :
         {NondimDesign(987.5, 6.25, 1.0), NondimDesign(0.70, 0.137, 0.022),
          NondimDesign(3197.0, 9.961, 3.125), NondimDesign(633.37, 5.0, 0.625)}) {
        const auto dim = dimensionalize(design, 1e-6, baseline, fluid, consts);
        const auto back = nondimensionalize(dim, baseline.t_ref);
        CHECK(std::abs(back.length - design.length) <= 1e-14 * design.length);
        CHECK(std::abs(back.spacing - design.spacing) <= 1e-14 * design.spacing);
        CHECK(std::abs(back.thickness - design.thickness) <= 1e-14 * design.thickness);
    }
}

TEST_CASE("both power density routes agree") {
    // Route 1 scales the nondimensional power density; route 2 evaluates heat
    // rate over core volume directly from the dimensional quantities,
    // eps * mdot' * c_p * dT / (2 D (1 + t/D) L).
    const auto fluid = study_air();
    const auto baseline = study_baseline();
    const ReferenceScales scales(fluid, baseline.t_ref, baseline.dp_ref);
    const FlowConstants consts;
    const MaterialSpec steel("austenitic_steel", 20.0);

    for (const auto& design :
         {NondimDesign(987.5, 6.25, 1.0), NondimDesign(68.44, 1.375, 0.22),
          NondimDesign(677.65, 5.0, 3.125)}) {
        const auto perf = evaluate(design, fluid, steel, scales, consts);
        const auto dim = dimensionalize(design, perf.q_nondim, baseline, fluid, consts);
        const double direct = perf.effectiveness * dim.mdot_per_width *
                              fluid.specific_heat * baseline.delta_t /
                              (2.0 * dim.spacing * (1.0 + dim.thickness / dim.spacing) *
                               dim.length);
        CHECK(dim.power_density == doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("degenerate channel counts clamp to one") {
    const auto fluid = study_air();
    const FlowConstants consts;
    // a baseline with a tiny flow product forces n = 1
    const BaselineOperating tiny(80.0, 1e-9, 95.0, 0.16e-3, 170.0);
    const auto dim = dimensionalize(NondimDesign(987.5, 6.25, 1.0), 1e-6, tiny, fluid,
                                    consts);
    CHECK(dim.channels == 1);
}

TEST_CASE("operating validation") {
    CHECK_THROWS_AS(BaselineOperating(0.0, 1.0, 95.0, 1e-4, 170.0), std::invalid_argument);
    CHECK_THROWS_AS(BaselineOperating(80.0, -1.0, 95.0, 1e-4, 170.0),
                    std::invalid_argument);
    const auto fluid = study_air();
    const auto baseline = study_baseline();
    CHECK_THROWS_AS(dimensionalize(NondimDesign(1, 1, 1), -1.0, baseline, fluid,
                                   FlowConstants()),
                    std::invalid_argument);
    CHECK_THROWS_AS(nondimensionalize(DimensionalDesign{}, 0.0), std::invalid_argument);
}
