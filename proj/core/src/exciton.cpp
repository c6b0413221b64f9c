#include "polaromech/exciton.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace pm {

using namespace phys;

double SampledProfile::at(double xq) const {
    if (x.empty() || xq < x.front() || xq > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    if (it == x.end()) return y.back();
    auto i = static_cast<std::size_t>(it - x.begin());
    double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + t * (y[i] - y[i - 1]);
}

namespace {

double coulomb_constant(double dielectric_constant) {
    return e_charge * e_charge / (4.0 * pi * eps0 * dielectric_constant);
}

std::vector<double> uniform_grid(double span, double step) {
    auto half = static_cast<std::size_t>(std::ceil(span / step));
    std::vector<double> z(2 * half + 1);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (static_cast<double>(i) - static_cast<double>(half)) * step;
    return z;
}

double penetration_depth(double mass_barrier, double energy_below_edge) {
    return hbar / std::sqrt(2.0 * mass_barrier * m_electron * energy_below_edge);
}

struct CarrierWell {
    double depth;
    double mass;
};

CarrierWell carrier_well(const QWSpec& qw, Carrier carrier) {
    auto [dec, dev] = alloy_band_offsets(qw.indium_fraction, qw.host, qw.alloy);
    if (carrier == Carrier::electron) return {dec, qw.host.mass_e};
    return {dev, qw.host.mass_hh_z};
}

std::vector<double> density(const CarrierEnvelope& env) {
    std::vector<double> d(env.amplitude.size());
    std::transform(env.amplitude.begin(), env.amplitude.end(), d.begin(), [](double a) { return a * a; });
    return d;
}

}

CarrierEnvelope solve_finite_well(double thickness, double depth, double mass_well, double mass_barrier, double step,
                                  double span, const SampledProfile* extra) {
    if (!(thickness > 0) || !(step > 0) || span <= thickness / 2)
        throw ConfigInvalid("finite well needs positive thickness and a grid wider than the well");
    if (!(depth > 0)) throw NoBoundState("well depth is not positive; no confined level");

    const auto z = uniform_grid(span, step);
    const std::size_t n = z.size();
    const double half = thickness / 2;
    const double edge_tol = 1e-6 * step;

    auto mass_at = [&](double zz) { return (std::abs(zz) < half ? mass_well : mass_barrier) * m_electron; };
    std::vector<double> potential(n), extra_values(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(z[i]);
        potential[i] = a < half - edge_tol ? 0.0 : (a > half + edge_tol ? depth : 0.5 * depth);
        if (extra) extra_values[i] = extra->at(z[i]);
    }

    std::vector<double> hop(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double zh = z.front() + (static_cast<double>(k) - 0.5) * step;
        hop[k] = hbar * hbar / (2.0 * mass_at(zh) * step * step);
    }
    std::vector<double> diag(n), off(n - 1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = hop[i] + hop[i + 1] + potential[i] + extra_values[i];
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = -hop[i + 1];

    auto pair = num::lowest_tridiagonal_eigenpair(diag, off);
    if (pair.value >= depth) throw NoBoundState("lowest level lies above the barrier");

    CarrierEnvelope env;
    env.z = z;
    env.amplitude.resize(n);
    const double scale = (pair.vector[n / 2] < 0 ? -1.0 : 1.0) / std::sqrt(step);
    std::transform(pair.vector.begin(), pair.vector.end(), env.amplitude.begin(), [&](double v) { return v * scale; });
    env.eigenvalue = pair.value;
    double extra_mean = 0;
    for (std::size_t i = 0; i < n; ++i) extra_mean += env.amplitude[i] * env.amplitude[i] * extra_values[i] * step;
    env.confinement_energy = pair.value - extra_mean;
    return env;
}

double carrier_grid_span(const QWSpec& qw, const ExcitonOptions& opts) {
    double span = qw.thickness / 2;
    for (Carrier c : {Carrier::electron, Carrier::heavy_hole}) {
        auto well = carrier_well(qw, c);
        if (!(well.depth > 0)) throw NoBoundState("indium fraction gives no confinement");
        double s = qw.thickness / 2 + opts.penetration_depths * penetration_depth(well.mass, well.depth);
        for (int attempt = 0; attempt < 20; ++attempt) {
            auto env = solve_finite_well(qw.thickness, well.depth, well.mass, well.mass, opts.grid_step, s);
            double needed =
                qw.thickness / 2 + opts.penetration_depths * penetration_depth(well.mass, well.depth - env.eigenvalue);
            if (s >= needed) break;
            s = needed * 1.05;
        }
        span = std::max(span, s);
    }
    return span;
}

CarrierEnvelope solve_carrier_envelope(const QWSpec& qw, Carrier carrier, const SampledProfile* extra,
                                       const ExcitonOptions& opts) {
    if (qw.thickness <= 0) throw ConfigInvalid("quantum well thickness must be positive");
    auto well = carrier_well(qw, carrier);
    if (!(well.depth > 0)) throw NoBoundState("indium fraction gives no confinement");
    auto env = solve_finite_well(qw.thickness, well.depth, well.mass, well.mass, opts.grid_step,
                                 carrier_grid_span(qw, opts), extra);
    env.carrier = carrier;
    return env;
}

std::vector<double> default_radial_grid(const ExcitonOptions& opts) {
    return num::logspace(opts.rho_min, opts.rho_max, opts.radial_points);
}

SampledProfile pseudo_potential(const CarrierEnvelope& electron, const CarrierEnvelope& hole,
                                double dielectric_constant, const std::vector<double>& rho) {
    const auto& z = electron.z;
    if (z.size() != hole.z.size() || z.size() < 2 || std::abs(z.front() - hole.z.front()) > 1e-15)
        throw GridMismatch("electron and hole envelopes live on different grids");
    const std::size_t n = z.size();
    const double h = z[1] - z[0];
    const auto de = density(electron), dh = density(hole);

    // Distribution of the electron-hole separation on the nodes k h, k = -(n-1)..(n-1).
    std::vector<double> sep(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (de[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) sep[i + n - 1 - j] += de[i] * dh[j] * h;
    }
    const double peak = *std::max_element(sep.begin(), sep.end());
    std::size_t lo = 0, hi = sep.size() - 1;
    while (lo < hi && sep[lo] < 1e-16 * peak) ++lo;
    while (hi > lo && sep[hi] < 1e-16 * peak) --hi;

    const double kc = coulomb_constant(dielectric_constant);
    SampledProfile out;
    out.x = rho;
    out.y.resize(rho.size());
    for (std::size_t r = 0; r < rho.size(); ++r) {
        const double p = rho[r];
        double acc = 0;
        if (lo == hi) {
            out.y[r] = -kc * sep[lo] * h / std::sqrt(p * p + std::pow((static_cast<double>(lo) - (n - 1.0)) * h, 2));
            continue;
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const double d0 = (static_cast<double>(k) - (n - 1.0)) * h, d1 = d0 + h;
            const double slope = (sep[k + 1] - sep[k]) / h;
            const double offset = sep[k] - slope * d0;
            acc += offset * (std::asinh(d1 / p) - std::asinh(d0 / p)) +
                   slope * (std::sqrt(p * p + d1 * d1) - std::sqrt(p * p + d0 * d0));
        }
        out.y[r] = -kc * acc;
    }
    return out;
}

RadialState solve_radial_exciton(const SampledProfile& potential, double reduced_mass) {
    const auto& rho = potential.x;
    const std::size_t n = rho.size();
    if (n < 3) throw GridMismatch("radial grid too short");
    const double dx = std::log(rho[1] / rho[0]);
    for (std::size_t i = 2; i < n; ++i)
        if (std::abs(std::log(rho[i] / rho[i - 1]) - dx) > 1e-8 * dx)
            throw GridMismatch("radial grid is not log-uniform");

    const double t = hbar * hbar / (2.0 * reduced_mass * m_electron * dx * dx);
    std::vector<double> diag(n), off(n - 1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = (2.0 * t + rho[i] * rho[i] * potential.y[i]) / (rho[i] * rho[i]);
    diag[0] -= t / (rho[0] * rho[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = -t / (rho[i] * rho[i + 1]);

    auto pair = num::lowest_tridiagonal_eigenpair(diag, off);
    if (pair.value >= 0.0) throw NoBoundState("radial problem has no bound state");

    RadialState st;
    st.rho = rho;
    st.energy = pair.value;
    st.phi.resize(n);
    std::vector<double> x(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        st.phi[i] = pair.vector[i] / rho[i];
        x[i] = std::log(rho[i]);
        w[i] = st.phi[i] * st.phi[i] * rho[i] * rho[i];
    }
    const double norm = std::sqrt(2.0 * pi * num::trapezoid(x, w)) * (st.phi[0] < 0 ? -1.0 : 1.0);
    for (auto& v : st.phi) v /= norm;
    return st;
}

double bohr_radius(const RadialState& st) {
    const std::size_t n = st.rho.size();
    std::vector<double> x(n), num(n), den(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(st.rho[i]);
        den[i] = st.phi[i] * st.rho[i];
        num[i] = den[i] * st.rho[i];
    }
    return num::trapezoid(x, num) / num::trapezoid(x, den);
}

double radiative_halfwidth(double oscillator_strength_per_area, double refractive_index) {
    return e_charge * e_charge * hbar * oscillator_strength_per_area /
           (4.0 * eps0 * refractive_index * m_electron * c_light);
}

namespace {

// Interaction of a carrier at separation |dz| from a partner smeared by the exciton radial state.
std::vector<double> axial_interaction(const RadialState& st, double kc, double step, std::size_t count) {
    const std::size_t n = st.rho.size();
    std::vector<double> x(n), base(n), w(n), out(count);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(st.rho[i]);
        base[i] = st.phi[i] * st.phi[i] * st.rho[i] * st.rho[i];
    }
    for (std::size_t k = 0; k < count; ++k) {
        const double d = static_cast<double>(k) * step;
        for (std::size_t i = 0; i < n; ++i) w[i] = base[i] / std::sqrt(st.rho[i] * st.rho[i] + d * d);
        out[k] = -kc * 2.0 * pi * num::trapezoid(x, w);
    }
    return out;
}

SampledProfile mean_field(const std::vector<double>& z, const std::vector<double>& kernel,
                          const std::vector<double>& partner_density) {
    const std::size_t n = z.size();
    const double h = z[1] - z[0];
    SampledProfile out{z, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += kernel[i > j ? i - j : j - i] * partner_density[j];
        out.y[i] = acc * h;
    }
    return out;
}

}

ExcitonState self_consistent_exciton(const QWSpec& qw, const ExcitonOptions& opts) {
    if (!(opts.tolerance > 0)) throw ConfigInvalid("exciton tolerance must be positive");
    if (qw.indium_fraction < 0 || qw.indium_fraction > qw.alloy.max_fraction)
        throw OutOfRange("indium fraction outside the alloy fit range");

    const double span = carrier_grid_span(qw, opts);
    auto solve = [&](Carrier c, const SampledProfile* extra) {
        auto well = carrier_well(qw, c);
        auto env = solve_finite_well(qw.thickness, well.depth, well.mass, well.mass, opts.grid_step, span, extra);
        env.carrier = c;
        return env;
    };
    const double mu = qw.host.mass_e * qw.host.mass_hh_inplane / (qw.host.mass_e + qw.host.mass_hh_inplane);
    const double eps = qw.host.dielectric_constant;
    const auto rho = default_radial_grid(opts);

    ExcitonState st;
    st.electron = solve(Carrier::electron, nullptr);
    st.hole = solve(Carrier::heavy_hole, nullptr);
    st.potential = pseudo_potential(st.electron, st.hole, eps, rho);
    st.radial = solve_radial_exciton(st.potential, mu);
    st.binding_history.push_back(st.radial.energy);

    const double kc = coulomb_constant(eps);
    for (;;) {
        if (st.iterations >= opts.max_iterations)
            throw NotConverged("exciton self-consistency did not converge in " + std::to_string(opts.max_iterations) +
                               " iterations");
        const auto kernel = axial_interaction(st.radial, kc, opts.grid_step, st.electron.z.size());
        const auto on_electron = mean_field(st.electron.z, kernel, density(st.hole));
        const auto on_hole = mean_field(st.hole.z, kernel, density(st.electron));
        st.electron = solve(Carrier::electron, &on_electron);
        st.hole = solve(Carrier::heavy_hole, &on_hole);
        st.potential = pseudo_potential(st.electron, st.hole, eps, rho);
        st.radial = solve_radial_exciton(st.potential, mu);
        ++st.iterations;
        const double previous = st.binding_history.back();
        st.binding_history.push_back(st.radial.energy);
        if (std::abs(st.radial.energy - previous) < opts.tolerance) break;
    }

    st.binding_energy = st.radial.energy;
    st.bohr_radius = bohr_radius(st.radial);
    std::vector<double> prod(st.electron.z.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = st.electron.amplitude[i] * st.hole.amplitude[i];
    st.envelope_overlap = num::trapezoid(st.electron.z, prod);
    st.transition_energy = qw.alloy.bandgap(qw.indium_fraction, qw.host) + st.electron.confinement_energy +
                           st.hole.confinement_energy + st.binding_energy;
    const double phi0 = st.radial.phi.front();
    st.oscillator_strength_per_area =
        qw.host.kane_energy / st.transition_energy * st.envelope_overlap * st.envelope_overlap * phi0 * phi0;
    st.radiative_halfwidth = radiative_halfwidth(st.oscillator_strength_per_area, qw.host.refractive_index);
    return st;
}

}
