#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pm;

TEST(Numerics, BracketedRootOfCosine) {
    EXPECT_NEAR(num::solve_bracketed([](double x) { return std::cos(x); }, 1, 2), std::numbers::pi / 2, 1e-13);
}

TEST(Numerics, ScanFindsSineZeros) {
    auto roots = num::scan_roots([](double x) { return std::sin(x); }, 0.5, 10, 0.1, 3);
    ASSERT_EQ(roots.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(roots[i], (i + 1) * std::numbers::pi, 1e-12);
}

TEST(Numerics, ScanThrowsWhenTooFewRoots) {
    EXPECT_THROW(num::scan_roots([](double x) { return std::sin(x); }, 0.5, 4, 0.1, 2), RootNotBracketed);
}

TEST(Numerics, AdaptiveIntegral) {
    EXPECT_NEAR(num::integrate([](double x) { return std::exp(-x * x); }, -8, 8), std::sqrt(std::numbers::pi), 1e-9);
}

TEST(Numerics, TrapezoidIsExactForLinear) {
    auto x = num::linspace(0, 2, 5);
    std::vector<double> y;
    for (double v : x) y.push_back(3 * v + 1);
    EXPECT_NEAR(num::trapezoid(x, y), 8.0, 1e-14);
}

TEST(Numerics, GridEndpoints) {
    auto lin = num::linspace(-1, 1, 11);
    EXPECT_EQ(lin.front(), -1);
    EXPECT_EQ(lin.back(), 1);
    auto lg = num::logspace(10, 1000, 3);
    EXPECT_NEAR(lg[1], 100, 1e-10);
}

TEST(Numerics, TridiagonalGroundState) {
    const std::size_t n = 400;
    const double h = 1.0 / (n + 1);
    std::vector<double> diag(n, 2 / (h * h)), off(n - 1, -1 / (h * h));
    auto pair = num::lowest_tridiagonal_eigenpair(diag, off);
    EXPECT_NEAR(pair.value, std::numbers::pi * std::numbers::pi, 1e-3);
}
