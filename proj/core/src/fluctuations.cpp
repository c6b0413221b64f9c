#include "polaromech/fluctuations.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pm {

using cplx = std::complex<double>;

void FluctuationConfig::validate() const {
    if (!(total_decay > 0)) throw OutOfRange("fluctuations need a positive optical decay rate");
    if (!(mechanical_frequency > 0) || !(mechanical_decay > 0))
        throw OutOfRange("fluctuations need positive mechanical frequency and damping");
    if (!(population >= 0)) throw OutOfRange("population must be non-negative");
    if (!(temperature >= 0)) throw OutOfRange("temperature must be non-negative");
}

FluctuationConfig fluctuation_config(const SteadyState& ss, const DriveConfig& drive, double temperature) {
    FluctuationConfig cfg;
    cfg.detuning = ss.fluctuation_detuning;
    cfg.population = ss.population;
    cfg.kerr = drive.kerr;
    cfg.coupling = drive.coupling;
    cfg.total_decay = drive.total_decay;
    cfg.mechanical_frequency = drive.mechanical_frequency;
    cfg.mechanical_decay = drive.mechanical_decay;
    cfg.temperature = temperature;
    return cfg;
}

double thermal_occupation(double omega, double temperature) {
    if (temperature <= 0) return 0.0;
    return 1.0 / std::expm1(phys::hbar * omega / (phys::k_boltzmann * temperature));
}

cplx thermal_weight(cplx omega, double temperature) {
    if (temperature <= 0) return omega.real() >= 0 ? omega : -omega;
    const double scale = 2 * phys::k_boltzmann * temperature / phys::hbar;
    const cplx x = omega / scale;
    if (std::abs(x) < 1e-6) return scale * (1.0 + x * x / 3.0);
    return omega / std::tanh(x);
}

SqueezedFrame squeeze_frame(double kerr, double population, double detuning, double coupling) {
    SqueezedFrame f;
    if (kerr * population == 0.0) {
        f.detuning = detuning;
        f.coupling = coupling;
        f.correlation = {0.0, 1.0, 0.0, 0.0};
        return f;
    }
    const double ratio = -kerr * population / detuning;
    if (!(std::abs(ratio) < 1)) throw SqueezeDiverges("squeezing transformation undefined for |chi n / delta| >= 1");
    f.squeezing = 0.5 * std::atanh(ratio);
    const double r = f.squeezing;
    f.detuning = detuning * std::cosh(2 * r) + kerr * population * std::sinh(2 * r);
    f.coupling = coupling * std::exp(-r);
    f.bath_population = std::sinh(r) * std::sinh(r);
    f.bath_correlation = std::sqrt(f.bath_population * (f.bath_population + 1));
    const double anomalous = std::sinh(r) * std::cosh(r);
    f.correlation = {anomalous, f.bath_population + 1, f.bath_population, anomalous};
    return f;
}

std::string_view to_string(OccupationMethod m) {
    switch (m) {
        case OccupationMethod::residues: return "residues";
        case OccupationMethod::weak_coupling_residues: return "weak-coupling-residues";
        case OccupationMethod::quadrature: return "quadrature";
        case OccupationMethod::exact_qle: return "exact-qle";
    }
    return "unknown";
}

SqueezedFrame squeeze_frame(const FluctuationConfig& cfg) {
    return squeeze_frame(cfg.kerr, cfg.population, cfg.detuning, cfg.coupling);
}

namespace {

double lorentz(double x, double kappa) { return kappa / (x * x + kappa * kappa / 4); }

// Squeezed-frame optical susceptibility 1 / (-delta_s - i kappa/2 - omega).
cplx optical_response(double detuning, double kappa, cplx omega) {
    return 1.0 / (cplx(-detuning, -kappa / 2) - omega);
}

double enhancement_at(double kerr, double population, double shifted) {
    return std::sqrt((1 + kerr * population / shifted) / (1 - kerr * population / shifted));
}

}

std::pair<double, double> sideband_extrema(double omega, double kappa) {
    const double k2 = kappa * kappa, w2 = omega * omega;
    const double s = std::sqrt(4 * w2 - k2 + 2 * std::sqrt(k2 * k2 + 4 * k2 * w2 + 16 * w2 * w2)) / (2 * std::sqrt(3.0));
    return {s, -s};
}

BackActionResult backaction_rates(const SqueezedFrame& frame, const FluctuationConfig& cfg, double omega) {
    const double k = cfg.total_decay, om = cfg.mechanical_frequency, ds = frame.detuning;
    BackActionResult out;
    out.coupling_squared = cfg.population * frame.coupling * frame.coupling;
    auto shift = [&](double w) {
        return out.coupling_squared * om / w *
               ((ds + w) / ((ds + w) * (ds + w) + k * k / 4) + (ds - w) / ((ds - w) * (ds - w) + k * k / 4));
    };
    auto damping = [&](double w) {
        return out.coupling_squared * om / w * (lorentz(ds + w, k) - lorentz(ds - w, k));
    };
    out.frequency_shift = shift(omega);
    out.damping_shift = damping(omega);
    out.optical_spring = shift(om);
    out.optical_damping = damping(om);
    out.sideband_detunings = sideband_extrema(om, k);
    const double cn = cfg.kerr * cfg.population;
    const double plus = std::hypot(out.sideband_detunings.first, cn);
    out.shifted_sidebands = {plus, -plus};
    const double eta_plus = enhancement_at(cfg.kerr, cfg.population, plus);
    out.enhancement = {eta_plus, 1.0 / eta_plus};
    return out;
}

Eigen::Matrix4cd fluctuation_drift(const FluctuationConfig& cfg) {
    const cplx i(0, 1);
    const double n = cfg.population, g = cfg.coupling, cn = cfg.kerr * cfg.population;
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    a(0, 0) = i * cfg.detuning - cfg.total_decay / 2;
    a(0, 1) = -i * cn;
    a(0, 2) = i * g * n;
    a(1, 0) = i * cn;
    a(1, 1) = -i * cfg.detuning - cfg.total_decay / 2;
    a(1, 2) = -i * g * n;
    a(2, 3) = cfg.mechanical_frequency;
    a(3, 0) = 2 * g;
    a(3, 1) = 2 * g;
    a(3, 2) = -cfg.mechanical_frequency;
    a(3, 3) = -cfg.mechanical_decay;
    return a;
}

StabilityReport fluctuation_stability(const FluctuationConfig& cfg) {
    cfg.validate();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(fluctuation_drift(cfg), false);
    if (solver.info() != Eigen::Success) throw EigenSolverFailure("fluctuation drift eigen-decomposition failed");
    StabilityReport rep;
    rep.max_growth = -std::numeric_limits<double>::infinity();
    bool single = false, parametric = false;
    const double threshold = 1e-6 * cfg.total_decay;
    for (int k = 0; k < 4; ++k) {
        const cplx w = cplx(0, 1) * solver.eigenvalues()[k];
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

double exact_optical_damping(const FluctuationConfig& cfg) {
    cfg.validate();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(fluctuation_drift(cfg), true);
    if (solver.info() != Eigen::Success) throw EigenSolverFailure("fluctuation drift eigen-decomposition failed");
    double best_weight = -1;
    cplx mechanical;
    for (int k = 0; k < 4; ++k) {
        const cplx w = cplx(0, 1) * solver.eigenvalues()[k];
        if (w.real() <= 0) continue;
        const auto v = solver.eigenvectors().col(k);
        const double weight = (std::norm(v(2)) + std::norm(v(3))) / v.squaredNorm();
        if (weight > best_weight) {
            best_weight = weight;
            mechanical = w;
        }
    }
    if (best_weight < 0) throw EigenSolverFailure("no positive-frequency mechanical eigenvalue");
    return -2 * mechanical.imag() - cfg.mechanical_decay;
}

namespace {

void require_stable(const FluctuationConfig& cfg) {
    const auto rep = fluctuation_stability(cfg);
    if (rep.classification != Stability::stable)
        throw UnstablePoint(std::string("fluctuations are ") + std::string(to_string(rep.classification)));
}

struct SpectrumParts {
    double thermal = 0;
    double optical = 0;
};

// Squeezed-frame PSD split into mechanical-bath and optical-bath contributions.
SpectrumParts analytic_parts(const SqueezedFrame& f, const FluctuationConfig& cfg, double w) {
    const double om = cfg.mechanical_frequency, k = cfg.total_decay;
    const double gs2 = cfg.population * f.coupling * f.coupling;
    const cplx xp = optical_response(f.detuning, k, w);
    const cplx xm = optical_response(f.detuning, k, -w);
    const cplx self = -2 * om * gs2 * (xp + std::conj(xm));
    const cplx inv = cplx(om * om - w * w, -w * cfg.mechanical_decay) + self;
    const double weight = 2 * om / std::norm(inv);
    const double bath = (f.bath_population + 0.5) * (std::norm(xp) + std::norm(xm)) -
                        std::sinh(2 * f.squeezing) * (xp * xm).real();
    return {weight * cfg.mechanical_decay * thermal_weight(w, cfg.temperature).real(), weight * 2 * k * om * gs2 * bath};
}

SpectrumParts exact_parts(const FluctuationConfig& cfg, double w) {
    const Eigen::Matrix4cd drift = fluctuation_drift(cfg);
    auto response_row = [&](double freq) {
        const Eigen::Matrix4cd m = cplx(0, -freq) * Eigen::Matrix4cd::Identity() - drift;
        Eigen::PartialPivLU<Eigen::Matrix4cd> lu(m);
        if (!(lu.rcond() > 1e-14)) throw SingularResolvent("fluctuation resolvent is singular");
        return Eigen::RowVector4cd(lu.inverse().row(2));
    };
    const Eigen::RowVector4cd rp = response_row(w);
    const Eigen::RowVector4cd rm = response_row(-w);
    const double nk = cfg.population * cfg.total_decay;
    // Symmetrized sum of chi_qj(w) chi_qk(-w) [D_jk(w) + D_kj(-w)] / 2 over the noise sources.
    const double optical = 0.5 * nk * (rp(0) * rm(1) + rp(1) * rm(0)).real();
    const double thermal = 0.5 * (rp(3) * rm(3)).real() * 4 * cfg.mechanical_decay / cfg.mechanical_frequency *
                           thermal_weight(w, cfg.temperature).real();
    return {thermal, optical};
}

template <class Parts>
SpectrumResult tabulate(std::span<const double> frequencies, SpectrumMethod method, Parts&& parts) {
    SpectrumResult out;
    out.method = method;
    out.frequencies.assign(frequencies.begin(), frequencies.end());
    out.density.reserve(frequencies.size());
    for (double w : frequencies) {
        const auto p = parts(w);
        out.density.push_back(p.thermal + p.optical);
    }
    return out;
}

}

SpectrumResult displacement_psd(const SqueezedFrame& frame, const FluctuationConfig& cfg,
                                 std::span<const double> frequencies) {
    require_stable(cfg);
    return tabulate(frequencies, SpectrumMethod::squeezed_analytic,
                    [&](double w) { return analytic_parts(frame, cfg, w); });
}

SpectrumResult exact_qle_spectrum(const FluctuationConfig& cfg, std::span<const double> frequencies) {
    require_stable(cfg);
    return tabulate(frequencies, SpectrumMethod::exact_qle, [&](double w) { return exact_parts(cfg, w); });
}

namespace {

// Breakpoints resolving the mechanical peak and the optical sidebands.
std::vector<double> occupation_breakpoints(double peak, double width, double optical, double kappa, double stop) {
    std::vector<double> pts{0.0, stop};
    for (double s = 1; s < 1e7; s *= 3) {
        pts.push_back(peak - s * width);
        pts.push_back(peak + s * width);
    }
    pts.push_back(peak);
    for (double s : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        pts.push_back(optical - s * kappa);
        pts.push_back(optical + s * kappa);
    }
    std::erase_if(pts, [&](double x) { return !(x >= 0 && x <= stop); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <class Parts>
double occupation_by_quadrature(const FluctuationConfig& cfg, double peak, double width, double optical, Parts&& parts) {
    const double om = cfg.mechanical_frequency, k = cfg.total_decay;
    // The Ohmic thermal term is log-divergent; it is resolved on [0, 2 Omega] around the peak.
    const double thermal_stop = 2 * om;
    const double stop = std::max({4 * om, 4 * std::abs(optical), 2 * peak}) + 40 * k;
    const auto pts = occupation_breakpoints(peak, std::max(width, 1e-12 * om), std::abs(optical), k, stop);
    double energy = 0;
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
        const double a = pts[j], b = pts[j + 1];
        energy += num::integrate_panels(
            [&](double w) {
                const auto p = parts(w);
                return (om * om + w * w) * (p.optical + (w <= thermal_stop ? p.thermal : 0.0));
            },
            a, b, 4);
    }
    // Optical tail on [stop, inf) via w = stop / u.
    energy += num::integrate_panels(
        [&](double u) {
            if (u <= 0) return 0.0;
            const double w = stop / u;
            return (om * om + w * w) * parts(w).optical * stop / (u * u);
        },
        0.0, 1.0, 8);
    // n + 1/2 = (1 / (8 pi Omega^2)) int_R (Omega^2 + w^2) S(w) dw with an even integrand.
    return 2 * energy / (8 * phys::pi * om * om) - 0.5;
}

double occupation_by_exact_residues(const FluctuationConfig& cfg) {
    const Eigen::Matrix4cd drift = fluctuation_drift(cfg);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(drift, true);
    if (solver.info() != Eigen::Success) throw EigenSolverFailure("fluctuation drift eigen-decomposition failed");
    const Eigen::Vector4cd mu = solver.eigenvalues();
    const Eigen::Matrix4cd v = solver.eigenvectors();
    const Eigen::Matrix4cd vinv = v.inverse();
    const double scale = cfg.total_decay + cfg.mechanical_frequency;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (std::abs(mu(a) - mu(b)) < 1e-9 * scale) throw ResidueInvalid("degenerate fluctuation poles");
    const double om = cfg.mechanical_frequency;
    const double nk = cfg.population * cfg.total_decay;
    const cplx i(0, 1);
    cplx sum = 0;
    for (int j = 0; j < 4; ++j) {
        // r(-w) = e_q (i w - A)^-1 has a simple pole at p = -i mu_j in the upper half plane.
        const cplx p = -i * mu(j);
        const Eigen::RowVector4cd res = -i * v(2, j) * vinv.row(j);
        const Eigen::Matrix4cd m = cplx(0, -1) * p * Eigen::Matrix4cd::Identity() - drift;
        const Eigen::RowVector4cd r = Eigen::RowVector4cd(m.inverse().row(2));
        const cplx optical = 0.5 * nk * (r(0) * res(1) + r(1) * res(0));
        const cplx thermal = 0.5 * r(3) * res(3) * (4 * cfg.mechanical_decay / om) * thermal_weight(p, cfg.temperature);
        sum += (om * om + p * p) * (optical + thermal);
    }
    const cplx integral = 2 * phys::pi * i * sum;
    return integral.real() / (8 * phys::pi * om * om) - 0.5;
}

double occupation_by_residues(const SqueezedFrame& f, const FluctuationConfig& cfg, const BackActionResult& ba) {
    const double om = cfg.mechanical_frequency, k = cfg.total_decay, ds = f.detuning;
    const double gam_om = cfg.mechanical_decay + ba.optical_damping;
    const double om_om = om + 2 * ba.optical_spring;
    const double gs2 = ba.coupling_squared;
    const double sh = std::sinh(2 * f.squeezing);
    const cplx i(0, 1);
    const cplx mech_plus = std::sqrt(cplx(om * om_om, om * gam_om));
    const cplx mech_minus = -std::sqrt(cplx(om * om_om, -om * gam_om));
    const cplx opt_a(-ds, k / 2), opt_b(ds, k / 2);
    const std::array<cplx, 4> poles{mech_plus, mech_minus, opt_a, opt_b};
    for (std::size_t a = 0; a < poles.size(); ++a)
        for (std::size_t b = a + 1; b < poles.size(); ++b)
            if (std::abs(poles[a] - poles[b]) < 10 * std::abs(gam_om))
                throw ResidueInvalid("poles closer than ten mechanical linewidths");

    auto envelope = [&](cplx w) { return (w * w - om * om_om) * (w * w - om * om_om) + om * om * gam_om * gam_om; };
    auto envelope_slope = [&](cplx w) { return 4.0 * w * (w * w - om * om_om); };
    auto bath = [&](cplx w) {
        const cplx lp = 1.0 / ((ds + w) * (ds + w) + k * k / 4);
        const cplx lm = 1.0 / ((ds - w) * (ds - w) + k * k / 4);
        const cplx c1 = cplx(ds, k / 2), c2 = cplx(ds, -k / 2);
        const cplx re = 0.5 * (1.0 / (c1 * c1 - w * w) + 1.0 / (c2 * c2 - w * w));
        return (f.bath_population + 0.5) * (lp + lm) - sh * re;
    };
    auto weight = [&](cplx w) { return om * om + w * w; };

    cplx sum = 0;
    for (const cplx& p : {mech_plus, mech_minus}) {
        const cplx numer = weight(p) * (cfg.mechanical_decay * thermal_weight(p, cfg.temperature) + 2 * k * om * gs2 * bath(p));
        sum += numer / envelope_slope(p);
    }
    // Optical poles: residues of each bath term at its upper-half-plane pole.
    const double nsh = f.bath_population + 0.5;
    const cplx c1 = cplx(ds, k / 2), c2 = cplx(ds, -k / 2);
    {
        const cplx p = opt_a;  // pole of 1 / ((ds + w)^2 + k^2/4) and of 1 / (c2^2 - w^2) at w = -c2
        const cplx res = nsh / (i * k) - sh * 0.5 / (2.0 * c2);
        sum += weight(p) * (2 * k * om * gs2) * res / envelope(p);
    }
    {
        const cplx p = opt_b;  // pole of 1 / ((ds - w)^2 + k^2/4) and of 1 / (c1^2 - w^2) at w = c1
        const cplx res = nsh / (i * k) - sh * 0.5 / (-2.0 * c1);
        sum += weight(p) * (2 * k * om * gs2) * res / envelope(p);
    }
    const cplx integral = 2 * phys::pi * i * sum;
    return (2 * om * integral).real() / (8 * phys::pi * om * om) - 0.5;
}

}

OccupationResult phonon_occupation(const SqueezedFrame& frame, const FluctuationConfig& cfg, OccupationMethod method) {
    require_stable(cfg);
    OccupationResult out;
    out.method = method;
    out.thermal_occupation = thermal_occupation(cfg.mechanical_frequency, cfg.temperature);
    const auto ba = backaction_rates(frame, cfg, cfg.mechanical_frequency);
    const double width = cfg.mechanical_decay + ba.optical_damping;
    const double peak = std::sqrt(cfg.mechanical_frequency * (cfg.mechanical_frequency + 2 * ba.optical_spring));
    switch (method) {
        case OccupationMethod::residues:
            out.occupation = occupation_by_exact_residues(cfg);
            break;
        case OccupationMethod::weak_coupling_residues:
            out.occupation = occupation_by_residues(frame, cfg, ba);
            break;
        case OccupationMethod::quadrature:
            out.occupation = occupation_by_quadrature(cfg, peak, width, frame.detuning,
                                                      [&](double w) { return analytic_parts(frame, cfg, w); });
            break;
        case OccupationMethod::exact_qle:
            out.occupation = occupation_by_quadrature(cfg, peak, width, frame.detuning,
                                                      [&](double w) { return exact_parts(cfg, w); });
            break;
    }
    return out;
}

OccupationResult phonon_occupation(const FluctuationConfig& cfg, OccupationMethod method) {
    if (method == OccupationMethod::exact_qle && std::abs(cfg.kerr * cfg.population) >= std::abs(cfg.detuning)) {
        // The squeezed frame is undefined here; resolve the peak from the exact mechanical eigenvalue.
        require_stable(cfg);
        const auto rep = fluctuation_stability(cfg);
        const auto it = std::min_element(rep.eigenvalues.begin(), rep.eigenvalues.end(), [&](const cplx& x, const cplx& y) {
            return std::abs(x.real() - cfg.mechanical_frequency) < std::abs(y.real() - cfg.mechanical_frequency);
        });
        OccupationResult out;
        out.method = method;
        out.thermal_occupation = thermal_occupation(cfg.mechanical_frequency, cfg.temperature);
        out.occupation = occupation_by_quadrature(cfg, it->real(), -2 * it->imag(), cfg.detuning,
                                                  [&](double w) { return exact_parts(cfg, w); });
        return out;
    }
    return phonon_occupation(squeeze_frame(cfg), cfg, method);
}

namespace {

template <class F>
std::pair<double, double> brent_minimum(F&& f, double a, double b, double tol) {
    const int bits = std::max(8, static_cast<int>(std::ceil(-std::log2(tol / std::max(std::abs(b - a), tol)))) + 2);
    std::uintmax_t iters = 200;
    return boost::math::tools::brent_find_minima(f, a, b, bits, iters);
}

}

CoolingOptimum minimize_occupation(const FluctuationConfig& cfg, OccupationMethod method) {
    cfg.validate();
    const double k = cfg.total_decay;
    const auto extrema = sideband_extrema(cfg.mechanical_frequency, k);
    const double cn = std::abs(cfg.kerr * cfg.population);
    const double center = -std::hypot(extrema.second, cn);
    const double lo = center - 2 * k;
    const double hi = std::min(center + 2 * k, -cn - 1e-3 * k);
    auto occ = [&](double d) {
        FluctuationConfig c = cfg;
        c.detuning = d;
        try {
            return phonon_occupation(c, method).occupation;
        } catch (const ComputeError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const auto [d, n] = brent_minimum(occ, lo, hi, 1e-3 * k);
    if (!std::isfinite(n)) throw NotConverged("no stable detuning near the red sideband");
    return {d, n};
}

double oscillation_threshold(const FluctuationConfig& cfg, double max_population) {
    cfg.validate();
    const double k = cfg.total_decay;
    const auto extrema = sideband_extrema(cfg.mechanical_frequency, k);
    auto net_damping = [&](double n) {
        const double cn = std::abs(cfg.kerr * n);
        const double center = std::hypot(extrema.first, cn);
        const double lo = std::max(center - 2 * k, cn + 1e-6 * k);
        const double hi = center + 2 * k;
        auto damping = [&](double d) {
            FluctuationConfig c = cfg;
            c.population = n;
            c.detuning = d;
            const auto f = squeeze_frame(c);
            return backaction_rates(f, c, c.mechanical_frequency).optical_damping;
        };
        return cfg.mechanical_decay + brent_minimum(damping, lo, hi, 1e-6 * k).second;
    };
    if (net_damping(max_population) >= 0) throw NotConverged("no oscillation threshold below the population cap");
    boost::math::tools::eps_tolerance<double> tol(40);
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(net_damping, 0.0, max_population, cfg.mechanical_decay,
                                                     net_damping(max_population), tol, iters);
    return 0.5 * (r.first + r.second);
}

PhonoritonModes phonoriton_modes(const SqueezedFrame& frame, const FluctuationConfig& cfg) {
    const double om = cfg.mechanical_frequency, k = cfg.total_decay, ds = frame.detuning;
    const double gs2 = cfg.population * frame.coupling * frame.coupling;
    const cplx i(0, 1);
    const cplx mid = 0.5 * (om - ds - i * (k / 2));
    const cplx half = (om + ds + i * (k / 2)) / 2.0;
    const cplx root = std::sqrt(gs2 + half * half);
    PhonoritonModes out;
    out.upper = mid + root;
    out.lower = mid - root;
    const auto ba = backaction_rates(frame, cfg, om);
    const double stokes = cfg.population * cfg.coupling * cfg.coupling * ba.enhancement.second - k * k / 16;
    out.splitting = 2.0 * std::sqrt(cplx(stokes, 0));
    out.strong_coupling = stokes > 0;
    return out;
}

}
