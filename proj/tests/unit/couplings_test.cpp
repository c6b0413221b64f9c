#include "polaromech/couplings.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pm;

TEST(Cooperativity, Definition) { EXPECT_DOUBLE_EQ(cooperativity(2.0, 1.0, 0.5), 4 * 4.0 / 0.5); }

TEST(AngularOverlap, SelectionRule) {
    EXPECT_GT(std::abs(angular_overlap(10, 0)), 0);
    EXPECT_EQ(angular_overlap(10, 3), 0);
}

TEST(Polariton, ExcitonFractionRoundTrip) {
    const double gcx = 2e12;
    for (double x : {0.1, 0.5, 0.9}) {
        PolaritonInputs in;
        in.exciton_frequency = 2.2e15;
        in.cavity_frequency = in.exciton_frequency + detuning_for_exciton_fraction(x, gcx);
        in.g_cx = gcx;
        in.g_xm = 1e7;
        in.cavity_decay = 1e10;
        in.exciton_decay = 5e9;
        auto b = polariton_transform(in);
        EXPECT_NEAR(b.exciton_fraction, x, 1e-9);
        EXPECT_NEAR(b.g_lm, x * in.g_xm, 1e-6 * in.g_xm);
        EXPECT_NEAR(b.kappa_l, (1 - x) * in.cavity_decay + x * in.exciton_decay, 1e-3);
        EXPECT_NEAR(b.upper_frequency - b.lower_frequency, std::hypot(in.cavity_frequency - in.exciton_frequency, 2 * gcx),
                    1e-6 * gcx);
    }
}

TEST(Polariton, KerrScalesWithExcitonFractionSquared) {
    PolaritonInputs in;
    in.exciton_frequency = 2.2e15;
    in.g_cx = 2e12;
    in.kerr = 1e8;
    in.cavity_frequency = in.exciton_frequency + detuning_for_exciton_fraction(0.3, in.g_cx);
    auto b = polariton_transform(in);
    EXPECT_NEAR(b.chi_l, 0.09 * in.kerr, 1e-3);
}
