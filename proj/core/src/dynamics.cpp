#include "polaromech/dynamics.hpp"

#include "polaromech/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/Polynomials>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace pm {

using cplx = std::complex<double>;

void DriveConfig::validate() const {
    if (!(total_decay > 0) || !(radiative_decay > 0) || radiative_decay > total_decay * (1 + 1e-12))
        throw OutOfRange("drive needs 0 < kappa_r <= kappa");
    if (!(mechanical_decay > 0) || !(mechanical_frequency > 0))
        throw OutOfRange("drive needs positive mechanical damping and frequency");
    if (!(input_rate >= 0)) throw OutOfRange("input photon rate must be non-negative");
}

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::single_mode_unstable: return "single-mode-unstable";
        case Stability::parametric_unstable: return "parametric-unstable";
    }
    return "unknown";
}

std::string_view to_string(Region r) {
    switch (r) {
        case Region::single_stable: return "SM";
        case Region::bistable: return "BS";
        case Region::parametric_unstable: return "PU";
        case Region::unstable: return "UN";
    }
    return "unknown";
}

double effective_kerr(double kerr, double coupling, double omega) {
    if (!(omega > 0)) throw OutOfRange("mechanical frequency must be positive");
    return kerr - 2 * coupling * coupling / omega;
}

double input_rate_for(const DriveConfig& cfg, double n) {
    const double chi = effective_kerr(cfg.kerr, cfg.coupling, cfg.mechanical_frequency);
    const double shift = cfg.detuning - chi * n;
    return 2.0 / cfg.radiative_decay * (shift * shift + cfg.total_decay * cfg.total_decay / 4) * n;
}

namespace {

SteadyState make_state(const DriveConfig& cfg, double n) {
    SteadyState s;
    s.population = n;
    s.effective_kerr = effective_kerr(cfg.kerr, cfg.coupling, cfg.mechanical_frequency);
    s.displacement = 2 * cfg.coupling * n / cfg.mechanical_frequency;
    s.effective_detuning = cfg.detuning - 2 * s.effective_kerr * n;
    s.fluctuation_detuning = cfg.detuning - 2 * cfg.kerr * n + cfg.coupling * s.displacement;
    const double drive = std::sqrt(cfg.radiative_decay * cfg.input_rate / 2);
    s.amplitude = drive / cplx(cfg.total_decay / 2, -(cfg.detuning - s.effective_kerr * n));
    return s;
}

}

std::vector<SteadyState> steady_state_roots(const DriveConfig& cfg) {
    cfg.validate();
    const double chi = effective_kerr(cfg.kerr, cfg.coupling, cfg.mechanical_frequency);
    const double kappa = cfg.total_decay;
    std::vector<SteadyState> out;
    if (cfg.input_rate == 0) {
        out.push_back(make_state(cfg, 0.0));
        return out;
    }
    if (chi == 0.0) {
        const double d = cfg.detuning;
        out.push_back(make_state(cfg, cfg.radiative_decay / 2 * cfg.input_rate / (d * d + kappa * kappa / 4)));
        return out;
    }
    // In y = chi n / kappa: y^3 - 2 d y^2 + (d^2 + 1/4) y - c = 0 with d = delta / kappa.
    const double d = cfg.detuning / kappa;
    const double c = cfg.radiative_decay * cfg.input_rate * chi / (2 * kappa * kappa * kappa);
    Eigen::Vector4d coeffs(-c, d * d + 0.25, -2 * d, 1.0);
    Eigen::PolynomialSolver<double, 3> solver(coeffs);
    double scale = 0;
    for (const auto& r : solver.roots()) scale = std::max(scale, std::abs(r));
    auto poly = [&](double y) { return ((y - 2 * d) * y + d * d + 0.25) * y - c; };
    auto deriv = [&](double y) { return (3 * y - 4 * d) * y + d * d + 0.25; };
    std::vector<double> ys;
    for (const auto& r : solver.roots()) {
        if (std::abs(r.imag()) > 1e-9 * scale) continue;
        double y = r.real();
        for (int it = 0; it < 4; ++it) {
            const double dp = deriv(y);
            if (dp == 0.0) break;
            const double step = poly(y) / dp;
            if (!std::isfinite(step)) break;
            y -= step;
        }
        if (y * chi < 0) continue;
        ys.push_back(y);
    }
    std::vector<double> ns;
    for (double y : ys) ns.push_back(kappa * y / chi);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }),
             ns.end());
    for (double n : ns) out.push_back(make_state(cfg, n));
    return out;
}

std::optional<std::pair<double, double>> bistability_bounds(const DriveConfig& cfg) {
    const double chi = effective_kerr(cfg.kerr, cfg.coupling, cfg.mechanical_frequency);
    if (chi == 0.0) throw OutOfRange("bistability bounds need a non-zero effective Kerr coefficient");
    const double d = cfg.detuning, k = cfg.total_decay;
    const double disc = 4 * d * d - 3 * k * k;
    if (disc < 0) return std::nullopt;
    double a = 2 * d / (3 * chi) - std::sqrt(disc) / (6 * chi);
    double b = 2 * d / (3 * chi) + std::sqrt(disc) / (6 * chi);
    if (a > b) std::swap(a, b);
    if (a < 0) return std::nullopt;
    return std::make_pair(a, b);
}

StabilityReport stability_eigenvalues(const SteadyState& ss, const DriveConfig& cfg, std::size_t branch) {
    const cplx i(0, 1);
    const cplx a = ss.amplitude;
    const double g = cfg.coupling, chi = cfg.kerr;
    const double df = ss.fluctuation_detuning;
    Eigen::Matrix4cd jac = Eigen::Matrix4cd::Zero();
    jac(0, 0) = i * df - cfg.total_decay / 2;
    jac(0, 1) = -i * chi * a * a;
    jac(0, 2) = i * g * a;
    jac(1, 0) = i * chi * std::conj(a * a);
    jac(1, 1) = -i * df - cfg.total_decay / 2;
    jac(1, 2) = -i * g * std::conj(a);
    jac(2, 3) = cfg.mechanical_frequency;
    jac(3, 0) = 2 * g * std::conj(a);
    jac(3, 1) = 2 * g * a;
    jac(3, 2) = -cfg.mechanical_frequency;
    jac(3, 3) = -cfg.mechanical_decay;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(jac, false);
    if (solver.info() != Eigen::Success) throw EigenSolverFailure("stability matrix eigen-decomposition failed");

    StabilityReport rep;
    rep.branch = branch;
    rep.max_growth = -std::numeric_limits<double>::infinity();
    bool single = false, parametric = false;
    const double threshold = 1e-6 * cfg.total_decay;
    for (int k = 0; k < 4; ++k) {
        const cplx w = i * solver.eigenvalues()[k];
        rep.eigenvalues[static_cast<std::size_t>(k)] = w;
        rep.max_growth = std::max(rep.max_growth, w.imag());
        if (w.imag() > 0) (std::abs(w.real()) > threshold ? parametric : single) = true;
    }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const cplx& x, const cplx& y) { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); });
    rep.classification = single ? Stability::single_mode_unstable
                                : (parametric ? Stability::parametric_unstable : Stability::stable);
    return rep;
}

RegionPoint classify_point(const DriveConfig& cfg) {
    RegionPoint pt;
    pt.roots = steady_state_roots(cfg);
    bool parametric = false, any_stable = false;
    for (std::size_t b = 0; b < pt.roots.size(); ++b) {
        pt.reports.push_back(stability_eigenvalues(pt.roots[b], cfg, b));
        parametric |= pt.reports.back().classification == Stability::parametric_unstable;
        any_stable |= pt.reports.back().classification == Stability::stable;
    }
    if (parametric)
        pt.region = Region::parametric_unstable;
    else if (pt.roots.size() >= 3)
        pt.region = Region::bistable;
    else
        pt.region = any_stable ? Region::single_stable : Region::unstable;
    return pt;
}

bool mean_field_departs(const SteadyState& ss, const DriveConfig& cfg, double perturbation, double horizon) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 4>;  // Re alpha, Im alpha, q, p in time units of 1 / kappa
    const double k = cfg.total_decay;
    const double delta = cfg.detuning / k, chi = cfg.kerr / k, g = cfg.coupling / k;
    const double om = cfg.mechanical_frequency / k, gam = cfg.mechanical_decay / k;
    const double drive = std::sqrt(cfg.radiative_decay * cfg.input_rate / 2) / k;
    auto rhs = [&](const State& s, State& ds, double) {
        const cplx a(s[0], s[1]);
        const double n = std::norm(a);
        const cplx da = cplx(0, 1) * (delta - chi * n + g * s[2]) * a - 0.5 * a + drive;
        ds[0] = da.real();
        ds[1] = da.imag();
        ds[2] = om * s[3];
        ds[3] = -om * s[2] - gam * s[3] + 2 * g * n;
    };
    const double magnitude = std::max(std::abs(ss.amplitude), 1e-12);
    const double offset = perturbation * magnitude;
    State s{ss.amplitude.real() + offset / std::sqrt(2.0), ss.amplitude.imag() + offset / std::sqrt(2.0),
            ss.displacement, 0.0};
    auto stepper = odeint::make_controlled(1e-12 * magnitude, 1e-10, odeint::runge_kutta_dopri5<State>());
    double t = 0, dt = 1e-2;
    std::size_t guard = 0;
    while (t < horizon) {
        dt = std::min(dt, horizon - t);
        if (stepper.try_step(rhs, s, t, dt) == odeint::fail) {
            if (++guard > 10'000'000) throw NotConverged("mean-field integration step control failed");
            continue;
        }
        const double dev = std::hypot(s[0] - ss.amplitude.real(), s[1] - ss.amplitude.imag());
        if (dev > 10 * offset) return true;
    }
    return false;
}

}
