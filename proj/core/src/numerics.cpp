#include "polaromech/numerics.hpp"

#include "polaromech/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <lapacke.h>

#include <cmath>
#include <limits>
#include <string>

namespace pm::num {

EigenPair lowest_tridiagonal_eigenpair(std::span<const double> diag, std::span<const double> offdiag) {
    const auto n = static_cast<lapack_int>(diag.size());
    if (n < 1 || offdiag.size() + 1 != diag.size())
        throw EigenSolverFailure("tridiagonal eigenproblem with inconsistent sizes");
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.push_back(0.0);
    lapack_int found = 0;
    std::vector<double> w(n);
    EigenPair out;
    out.vector.resize(n);
    std::vector<lapack_int> support(2);
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, 1, 0.0, &found,
                                     w.data(), out.vector.data(), n, support.data());
    if (info != 0 || found != 1) throw EigenSolverFailure("dstevr failed with info " + std::to_string(info));
    out.value = w[0];
    return out;
}

double solve_bracketed(const ScalarFn& f, double a, double b, double rel_tol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw RootNotBracketed("no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    std::uintmax_t iters = 200;
    auto tol = [rel_tol](double x, double y) { return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y)); };
    auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const ScalarFn& f, double start, double stop, double step, std::size_t count) {
    std::vector<double> roots;
    double x0 = start, f0 = f(x0);
    while (roots.size() < count && x0 < stop) {
        double x1 = std::min(x0 + step, stop);
        double f1 = f(x1);
        if (std::isfinite(f0) && std::isfinite(f1)) {
            if (f0 == 0.0) {
                roots.push_back(x0);
            } else if (std::signbit(f0) != std::signbit(f1) && f1 != 0.0) {
                roots.push_back(solve_bracketed(f, x0, x1));
            }
        }
        x0 = x1;
        f0 = f1;
    }
    if (roots.size() < count)
        throw RootNotBracketed("found " + std::to_string(roots.size()) + " of " + std::to_string(count) +
                               " roots below " + std::to_string(stop));
    return roots;
}

double integrate(const ScalarFn& f, double a, double b, double rel_tol, unsigned max_depth) {
    double err = 0, l1 = 0;  // err is relative to l1
    double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
    if (!std::isfinite(value) || err > std::max(1e4 * rel_tol, 1e-8))
        throw QuadratureNotConverged("adaptive quadrature error " + std::to_string(err) + " exceeds tolerance");
    return value;
}

double integrate_panels(const ScalarFn& f, double a, double b, std::size_t panels) {
    panels = std::max<std::size_t>(panels, 1);
    const double width = (b - a) / static_cast<double>(panels);
    double sum = 0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + width * static_cast<double>(i);
        sum += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, lo + width);
    }
    return sum;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = b;
    return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
    auto v = linspace(std::log(a), std::log(b), n);
    for (auto& x : v) x = std::exp(x);
    return v;
}

}
