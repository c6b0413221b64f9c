#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pm::num {

using ScalarFn = std::function<double(double)>;

struct EigenPair {
    double value = 0;
    std::vector<double> vector;
};

// Lowest eigenpair of the symmetric tridiagonal matrix (diag, offdiag).
EigenPair lowest_tridiagonal_eigenpair(std::span<const double> diag, std::span<const double> offdiag);

// Root of f in [a, b]; f(a) and f(b) must differ in sign.
double solve_bracketed(const ScalarFn& f, double a, double b, double rel_tol = 1e-14);

// First `count` sign-change roots of f on [start, stop], scanning with `step`.
// Throws RootNotBracketed when fewer roots are found.
std::vector<double> scan_roots(const ScalarFn& f, double start, double stop, double step, std::size_t count);

// Adaptive Gauss-Kronrod quadrature; throws QuadratureNotConverged above `rel_tol`.
double integrate(const ScalarFn& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 15);

// Composite 30-point Gauss-Legendre rule on `panels` equal panels, for smooth oscillatory integrands.
double integrate_panels(const ScalarFn& f, double a, double b, std::size_t panels);

// Trapezoid rule on samples y(x).
double trapezoid(std::span<const double> x, std::span<const double> y);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

}
