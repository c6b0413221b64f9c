#include "polaromech/constants.hpp"
#include "polaromech/pillar_modes.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pm;

TEST(DBR, QuarterWaveLayers) {
    auto d = dbr_dispersion(3.5, 2.9, 850e-9);
    EXPECT_NEAR(d.high_thickness * 3.5, 850e-9 / 4, 1e-15);
    EXPECT_NEAR(d.low_thickness * 2.9, 850e-9 / 4, 1e-15);
    EXPECT_NEAR(d.effective_index, 2 * 3.5 * 2.9 / (3.5 + 2.9), 1e-12);
    EXPECT_NEAR(d.penetration_length, 850e-9 / (4 * 0.6), 1e-15);
}

TEST(DBR, StandingWaveContinuousAtInterfaces) {
    std::vector<Layer> stack = {{3.5, 60e-9}, {2.9, 73e-9}, {3.5, 60e-9}};
    auto w = standing_wave(stack, 2 * phys::pi / 850e-9, 256);
    for (std::size_t i = 1; i < w.field.size(); ++i) EXPECT_LT(std::abs(w.field[i] - w.field[i - 1]), 0.1);
}

TEST(Pillar, FrequencyDecreasesTowardCutoffWithRadius) {
    auto table = MaterialTable::builtin();
    double previous = 1e300;
    for (double r : {0.5e-6, 0.8e-6, 1.3e-6, 2.0e-6}) {
        auto m = pillar_mech_mode(make_pillar_geometry(table, r));
        EXPECT_LT(m.frequency, previous);
        EXPECT_GT(m.frequency, m.cutoff_frequency);
        previous = m.frequency;
    }
}

TEST(Pillar, ReductionFactorsBounded) {
    auto g = make_pillar_geometry(MaterialTable::builtin(), 1.3e-6, {-39e-9, -15e-9, 15e-9, 39e-9});
    auto m = pillar_mech_mode(g);
    ASSERT_EQ(m.strain_reduction.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_GT(std::abs(m.strain_reduction[i]), 0);
        EXPECT_LE(std::abs(m.strain_reduction[i]), 1 + 1e-12);
        EXPECT_LE(std::abs(m.field_reduction[i]), 1 + 1e-12);
    }
    EXPECT_NEAR(std::abs(m.strain_reduction[0]), std::abs(m.strain_reduction[3]), 1e-12);
}

TEST(Pillar, FiniteStackResonanceNearDesign) {
    auto g = make_pillar_geometry(MaterialTable::builtin(), 1.3e-6);
    auto res = cavity_resonance(g);
    EXPECT_NEAR(res.wavelength, g.dbr.design_wavelength, 5e-9);
    EXPECT_GT(res.quality_factor, 1e3);
}

TEST(Pillar, BesselZero) { EXPECT_NEAR(bessel_j0_first_zero(), 2.404825557695773, 1e-12); }
