#include "polaromech/constants.hpp"
#include "polaromech/exciton.hpp"
#include "polaromech/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pm;

namespace {

const ExcitonState& reference_exciton() {
    static const ExcitonState state = [] {
        auto table = MaterialTable::builtin();
        QWSpec qw;
        qw.host = table.lookup("GaAs");
        qw.alloy = table.alloy();
        return self_consistent_exciton(qw);
    }();
    return state;
}

}

TEST(Exciton, FiniteWellGroundStateBelowInfiniteWell) {
    const double depth = 0.1 * phys::eV, width = 10e-9, mass = 0.067;
    auto env = solve_finite_well(width, depth, mass, mass, 0.05e-9, 40e-9);
    const double infinite = phys::pi * phys::pi * phys::hbar * phys::hbar /
                            (2 * mass * phys::m_electron * width * width);
    EXPECT_GT(env.confinement_energy, 0);
    EXPECT_LT(env.confinement_energy, infinite);
}

TEST(Exciton, EnvelopesNormalized) {
    const auto& x = reference_exciton();
    for (const auto* env : {&x.electron, &x.hole}) {
        std::vector<double> sq;
        for (double a : env->amplitude) sq.push_back(a * a);
        EXPECT_NEAR(num::trapezoid(env->z, sq), 1.0, 1e-6);
    }
}

TEST(Exciton, BoundAndConverged) {
    const auto& x = reference_exciton();
    EXPECT_LT(x.binding_energy, 0);
    EXPECT_GT(x.bohr_radius, 5e-9);
    EXPECT_LT(x.bohr_radius, 20e-9);
    EXPECT_GT(x.envelope_overlap, 0.9);
    EXPECT_LE(x.envelope_overlap, 1.0);
    ASSERT_GE(x.binding_history.size(), 2u);
    const auto n = x.binding_history.size();
    EXPECT_LT(std::abs(x.binding_history[n - 1] - x.binding_history[n - 2]), 0.01e-3 * phys::eV);
}

TEST(Exciton, RadialStateNormalized) {
    const auto& r = reference_exciton().radial;
    std::vector<double> w;
    for (std::size_t i = 0; i < r.rho.size(); ++i) w.push_back(2 * phys::pi * r.phi[i] * r.phi[i] * r.rho[i]);
    EXPECT_NEAR(num::trapezoid(r.rho, w), 1.0, 1e-3);
}
