#include "polaromech/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pm;

namespace {

DriveConfig normalized(double detuning, double input_rate) {
    DriveConfig c;
    c.total_decay = 1;
    c.radiative_decay = 1;
    c.mechanical_frequency = 3;
    c.mechanical_decay = 1e-4;
    c.coupling = 0.002;
    c.kerr = 0.03;
    c.detuning = detuning;
    c.input_rate = input_rate;
    return c;
}

}

TEST(SteadyState, RootsReproduceInputRate) {
    auto c = normalized(2.0, 40.0);
    for (const auto& root : steady_state_roots(c)) EXPECT_NEAR(input_rate_for(c, root.population), 40.0, 1e-8);
}

TEST(SteadyState, EffectiveKerrIncludesMechanics) {
    EXPECT_DOUBLE_EQ(effective_kerr(0.03, 0.002, 3), 0.03 - 2 * 0.002 * 0.002 / 3);
}

TEST(Bistability, NoneBelowFoldDetuning) {
    EXPECT_FALSE(bistability_bounds(normalized(0.8, 0)).has_value());
    EXPECT_TRUE(bistability_bounds(normalized(0.9, 0)).has_value());
}

TEST(Bistability, ThreeRootsInsideWindow) {
    auto c = normalized(1.0, 0);
    auto bounds = bistability_bounds(c);
    ASSERT_TRUE(bounds);
    c.input_rate = 0.5 * (input_rate_for(c, bounds->first) + input_rate_for(c, bounds->second));
    auto point = classify_point(c);
    ASSERT_EQ(point.roots.size(), 3u);
    EXPECT_EQ(point.region, Region::bistable);
    EXPECT_EQ(point.reports[1].classification, Stability::single_mode_unstable);
    EXPECT_TRUE(mean_field_departs(point.roots[1], c));
    EXPECT_FALSE(mean_field_departs(point.roots[0], c));
}

TEST(Stability, WeakRedDriveIsStable) {
    auto c = normalized(-3.0, 1.0);
    auto point = classify_point(c);
    ASSERT_EQ(point.roots.size(), 1u);
    EXPECT_EQ(point.region, Region::single_stable);
    EXPECT_LT(point.reports[0].max_growth, 0);
}
