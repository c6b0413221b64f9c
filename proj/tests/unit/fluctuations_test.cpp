#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/fluctuations.hpp"
#include "polaromech/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pm;

namespace {

FluctuationConfig normalized(double kerr, double population, double detuning) {
    FluctuationConfig f;
    f.total_decay = 1;
    f.mechanical_frequency = 3;
    f.mechanical_decay = 1e-4;
    f.coupling = 0.002;
    f.kerr = kerr;
    f.population = population;
    f.detuning = detuning;
    return f;
}

}

TEST(Thermal, BoseEinstein) {
    const double omega = 2 * phys::pi * 19.6e9;
    const double x = phys::hbar * omega / (phys::k_boltzmann * 4);
    EXPECT_NEAR(thermal_occupation(omega, 4), 1 / std::expm1(x), 1e-12);
    EXPECT_EQ(thermal_occupation(omega, 0), 0);
}

TEST(Squeeze, NoKerrMeansNoSqueezing) {
    auto f = squeeze_frame(0.0, 100, -3, 0.002);
    EXPECT_EQ(f.squeezing, 0);
    EXPECT_DOUBLE_EQ(f.detuning, -3);
    EXPECT_DOUBLE_EQ(f.coupling, 0.002);
}

TEST(Squeeze, BathCorrelationIdentity) {
    auto f = squeeze_frame(normalized(0.03, 50, 4));
    EXPECT_NEAR(f.bath_correlation * f.bath_correlation, f.bath_population * (f.bath_population + 1), 1e-12);
    EXPECT_NEAR(f.detuning * f.detuning, 16 - 1.5 * 1.5, 1e-12);
}

TEST(Squeeze, DivergesWhenKerrDominates) {
    EXPECT_THROW(squeeze_frame(normalized(0.03, 200, 4)), SqueezeDiverges);
}

TEST(BackAction, EnhancementsAreReciprocal) {
    auto cfg = normalized(0.03, 300, std::hypot(3.0, 9.0));
    auto ba = backaction_rates(squeeze_frame(cfg), cfg, 3);
    EXPECT_NEAR(ba.enhancement.first * ba.enhancement.second, 1.0, 1e-12);
}

TEST(BackAction, MatchesExactEigenvalueWhenWeak) {
    auto cfg = normalized(0.0, 10, -3);
    auto ba = backaction_rates(squeeze_frame(cfg), cfg, 3);
    EXPECT_NEAR(exact_optical_damping(cfg) / ba.optical_damping, 1.0, 1e-3);
}

TEST(Occupation, ResiduesMatchQuadrature) {
    auto cfg = normalized(-0.03, 50, -3);
    cfg.temperature = 0;
    const double res = phonon_occupation(cfg, OccupationMethod::residues).occupation;
    const double quad = phonon_occupation(cfg, OccupationMethod::quadrature).occupation;
    EXPECT_NEAR(res / quad, 1.0, 1e-2);
}

TEST(Spectrum, SqueezedAndExactAgreeAwayFromResonance) {
    auto cfg = normalized(0.03, 20, -std::hypot(3.0, 0.6));
    auto grid = num::linspace(2.5, 3.5, 11);
    auto a = displacement_psd(squeeze_frame(cfg), cfg, grid);
    auto b = exact_qle_spectrum(cfg, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(a.density[i] / b.density[i], 1.0, 0.05);
}

TEST(Phonoriton, AttractiveKerrGivesRealSplitting) {
    const double n = 2000;
    auto attractive = normalized(-0.03, n, -std::hypot(3.0, 60.0));
    auto repulsive = normalized(0.03, n, -std::hypot(3.0, 60.0));
    EXPECT_TRUE(phonoriton_modes(squeeze_frame(attractive), attractive).strong_coupling);
    EXPECT_FALSE(phonoriton_modes(squeeze_frame(repulsive), repulsive).strong_coupling);
}
