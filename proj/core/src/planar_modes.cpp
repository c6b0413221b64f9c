#include "polaromech/planar_modes.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include <cmath>
#include <limits>

namespace pm {

using namespace phys;

namespace {

using namespace boost::math::policies;
using BesselPolicy = policy<overflow_error<ignore_error>, promote_double<false>>;

double bessel_j(double order, double x) { return boost::math::cyl_bessel_j(order, x, BesselPolicy()); }
double bessel_y(double order, double x) { return boost::math::cyl_neumann(order, x, BesselPolicy()); }
double bessel_jp(double order, double x) { return boost::math::cyl_bessel_j_prime(order, x, BesselPolicy()); }
double bessel_yp(double order, double x) { return boost::math::cyl_neumann_prime(order, x, BesselPolicy()); }

}

std::size_t oscillation_panels(double wavevector, double a, double b) {
    return static_cast<std::size_t>(std::ceil(wavevector * (b - a) / pi)) + 4;
}

namespace {

double angular_norm(int m) { return m == 0 ? 2.0 * pi : pi; }

// Phase of a (J, Y) pair; the cross product of two pairs is the sine of the phase difference.
double phase(double j, double y) { return std::atan2(y, j); }

}

double SlabMode::profile(double z) const {
    const double half = thickness / 2;
    if (std::abs(z) <= half) return amplitude * std::cos(transverse_wavevector * z);
    return amplitude * std::cos(transverse_wavevector * half) * std::exp(-decay_constant * (std::abs(z) - half));
}

SlabMode slab_effective_index(double thickness, double index, double wavelength) {
    if (!(index > 1.0) || !(thickness > 0) || !(wavelength > 0))
        throw NoGuidedMode("slab needs index > 1 and positive thickness and wavelength");
    const double k0 = 2.0 * pi / wavelength;
    auto kz_of = [&](double ne) { return k0 * std::sqrt(std::max(index * index - ne * ne, 0.0)); };
    auto decay_of = [&](double ne) { return k0 * std::sqrt(std::max(ne * ne - 1.0, 0.0)); };
    auto dispersion = [&](double ne) {
        const double kz = kz_of(ne);
        return kz * std::sin(kz * thickness / 2) - decay_of(ne) * std::cos(kz * thickness / 2);
    };
    const double cutoff = pi / (thickness * k0);
    const double lower = std::max(1.0, std::sqrt(std::max(index * index - cutoff * cutoff, 0.0)));
    SlabMode mode;
    mode.thickness = thickness;
    mode.index = index;
    mode.wavelength = wavelength;
    try {
        mode.effective_index = num::solve_bracketed(dispersion, lower, index);
    } catch (const RootNotBracketed&) {
        throw NoGuidedMode("no guided even mode for this slab");
    }
    if (!(mode.effective_index > 1.0 && mode.effective_index < index))
        throw NoGuidedMode("guided mode too close to cutoff");
    mode.transverse_wavevector = kz_of(mode.effective_index);
    mode.decay_constant = decay_of(mode.effective_index);
    const double kz = mode.transverse_wavevector, half = thickness / 2, c = std::cos(kz * half);
    const double integral = half + std::sin(kz * thickness) / (2.0 * kz) + c * c / mode.decay_constant;
    mode.amplitude = 1.0 / std::sqrt(integral);
    return mode;
}

double PlanarGeometry::volume() const {
    return pi * (outer_radius * outer_radius - inner_radius * inner_radius) * thickness;
}

double OpticalModeWGM::radial(double r) const {
    const double j = bessel_j(azimuthal_order, wavevector * r);
    return ring_mix == 0.0 ? j : j + ring_mix * bessel_y(azimuthal_order, wavevector * r);
}

double OpticalModeWGM::in_plane(double r, double theta) const {
    if (r < inner_radius || r > outer_radius) return 0.0;
    return normalization * radial(r) * std::cos(azimuthal_order * theta);
}

double OpticalModeWGM::field(double r, double theta, double z) const {
    return in_plane(r, theta) * vertical.profile(z);
}

OpticalModeWGM wgm_mode(const PlanarGeometry& g, int p, int l) {
    if (p < 1 || l < 0) throw ConfigInvalid("WGM orders need p >= 1 and l >= 0");
    if (!(g.outer_radius > g.inner_radius && g.inner_radius >= 0))
        throw ConfigInvalid("planar geometry needs 0 <= inner radius < outer radius");
    OpticalModeWGM m;
    m.radial_order = p;
    m.azimuthal_order = l;
    m.inner_radius = g.inner_radius;
    m.outer_radius = g.outer_radius;
    m.vertical = slab_effective_index(g.thickness, g.material.refractive_index, g.wavelength);
    const double rd = g.outer_radius, ri = g.inner_radius;
    if (!g.is_ring()) {
        m.wavevector = boost::math::cyl_bessel_j_zero(static_cast<double>(l), p) / rd;
    } else {
        auto cross = [&](double k) {
            return std::sin(phase(bessel_j(l, k * ri), bessel_y(l, k * ri)) -
                            phase(bessel_j(l, k * rd), bessel_y(l, k * rd)));
        };
        const double start = std::max(0.99 * l, 1e-3) / rd;
        auto roots = num::scan_roots(cross, start, start + (4.0 * p + 200.0) / rd, pi / (16.0 * rd),
                                     static_cast<std::size_t>(p));
        m.wavevector = roots.back();
        const double y = bessel_y(l, m.wavevector * ri);
        m.ring_mix = std::isfinite(y) ? -bessel_j(l, m.wavevector * ri) / y : 0.0;
    }
    m.frequency = c_light * m.wavevector / m.vertical.effective_index;
    const double radial_integral = num::integrate_panels(
        [&](double r) {
            const double v = m.radial(r);
            return v * v * r;
        },
        ri, rd, oscillation_panels(m.wavevector, ri, rd));
    m.normalization = 1.0 / std::sqrt(radial_integral * angular_norm(l));
    return m;
}

int resonant_azimuthal_order(int radial_order, double target) {
    int best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int l = 0; l < 4 * static_cast<int>(target) + 10; ++l) {
        const double zero = boost::math::cyl_bessel_j_zero(static_cast<double>(l), radial_order);
        const double gap = std::abs(zero - target);
        if (gap < best_gap) {
            best_gap = gap;
            best = l;
        }
        if (zero > target + 10) break;
    }
    return best;
}

double MechModePlanar::bessel(double r) const {
    const double j = bessel_j(order, wavevector * r);
    return ring_mix == 0.0 ? j : j + ring_mix * bessel_y(order, wavevector * r);
}

double MechModePlanar::bessel_derivative(double r) const {
    const double j = bessel_jp(order, wavevector * r);
    return wavevector * (ring_mix == 0.0 ? j : j + ring_mix * bessel_yp(order, wavevector * r));
}

double MechModePlanar::displacement(double r, double theta) const {
    return normalization * bessel(r) * std::cos(azimuthal_order * theta);
}

double MechModePlanar::divergence(double r, double theta) const {
    if (r <= 0.0) return order == 1.0 ? normalization * wavevector : 0.0;
    return normalization * (bessel_derivative(r) + bessel(r) / r) * std::cos(azimuthal_order * theta);
}

double MechModePlanar::traction(double r) const {
    return normalization * (bessel_derivative(r) + poisson_ratio / r * bessel(r));
}

double MechModePlanar::boundary_traction_residual() const {
    const double lo = std::max(inner_radius, 1e-3 * outer_radius);
    double peak = 0;
    for (double r : num::linspace(lo, outer_radius, 2001)) peak = std::max(peak, std::abs(traction(r)));
    double edge = std::abs(traction(outer_radius));
    if (inner_radius > 0) edge = std::max(edge, std::abs(traction(inner_radius)));
    return edge / peak;
}

double zero_point_amplitude(double mass, double angular_frequency) {
    return std::sqrt(hbar / (2.0 * mass * angular_frequency));
}

double plane_stress_factor(double nu) { return (1.0 - 2.0 * nu) / (1.0 - nu); }

namespace {

void finish_mech_mode(MechModePlanar& m, const PlanarGeometry& g) {
    m.poisson_ratio = g.material.poisson_ratio;
    m.inner_radius = g.inner_radius;
    m.outer_radius = g.outer_radius;
    m.sound_speed = g.material.plane_stress_sound_speed();
    m.frequency = m.sound_speed * m.wavevector;
    m.volume = g.volume();
    m.effective_mass = g.material.density * m.volume;
    m.zero_point = zero_point_amplitude(m.effective_mass, m.frequency);
    m.normalization = 1.0;
    const double lo = g.inner_radius;
    const double integral = num::integrate_panels(
        [&](double r) {
            const double v = m.bessel(r);
            return v * v * r;
        },
        lo, g.outer_radius, oscillation_panels(m.wavevector, lo, g.outer_radius));
    m.normalization = std::sqrt(m.volume / (g.thickness * integral * angular_norm(m.azimuthal_order)));
}

}

MechModePlanar rbm_disk(const PlanarGeometry& g, int n) {
    if (n < 1) throw ConfigInvalid("radial order must be >= 1");
    const double nu = g.material.poisson_ratio;
    auto boundary = [nu](double x) { return x * bessel_j(0, x) - (1.0 - nu) * bessel_j(1, x); };
    auto roots = num::scan_roots(boundary, 1e-3, 4.0 * n + 20.0, pi / 4.0, static_cast<std::size_t>(n));
    MechModePlanar m;
    m.radial_order = n;
    m.azimuthal_order = 0;
    m.order = 1.0;
    m.wavevector = roots.back() / g.outer_radius;
    finish_mech_mode(m, PlanarGeometry{g.outer_radius, 0.0, g.thickness, g.wavelength, g.material, g.qw_positions});
    return m;
}

MechModePlanar mech_ring(const PlanarGeometry& g, int n, int m_order) {
    if (!(g.inner_radius > 0)) throw ConfigInvalid("ring mechanics needs a positive inner radius");
    if (n < 1 || m_order < 0) throw ConfigInvalid("mechanical orders need n >= 1 and m >= 0");
    const double nu = g.material.poisson_ratio;
    const double velocity_ratio = std::sqrt(2.0 / (1.0 - nu));
    const double order = std::sqrt(1.0 + std::pow(m_order / velocity_ratio, 2));
    const double ri = g.inner_radius, rd = g.outer_radius;
    auto traction_j = [&](double k, double r) { return k * bessel_jp(order, k * r) + nu / r * bessel_j(order, k * r); };
    auto traction_y = [&](double k, double r) { return k * bessel_yp(order, k * r) + nu / r * bessel_y(order, k * r); };
    auto cross = [&](double k) {
        return std::sin(phase(traction_j(k, ri), traction_y(k, ri)) - phase(traction_j(k, rd), traction_y(k, rd)));
    };
    auto roots = num::scan_roots(cross, 1e-2 / rd, (4.0 * n + 40.0) * pi / (rd - ri) + 40.0 / rd, pi / (16.0 * rd),
                                 static_cast<std::size_t>(n));
    MechModePlanar m;
    m.radial_order = n;
    m.azimuthal_order = m_order;
    m.order = order;
    m.wavevector = roots.back();
    const double ty = traction_y(m.wavevector, ri);
    m.ring_mix = std::isfinite(ty) ? -traction_j(m.wavevector, ri) / ty : 0.0;
    finish_mech_mode(m, g);
    return m;
}

StrainField plane_stress_strain(const MechModePlanar& mode, std::size_t radial_samples, std::size_t angular_samples) {
    StrainField s;
    s.plane_stress_factor = plane_stress_factor(mode.poisson_ratio);
    s.r = num::linspace(mode.inner_radius, mode.outer_radius, radial_samples);
    s.theta.resize(angular_samples);
    for (std::size_t j = 0; j < angular_samples; ++j)
        s.theta[j] = 2.0 * pi * static_cast<double>(j) / static_cast<double>(angular_samples);
    s.values.resize(static_cast<Eigen::Index>(radial_samples), static_cast<Eigen::Index>(angular_samples));
    const double scale = s.plane_stress_factor * mode.zero_point;
    for (std::size_t i = 0; i < radial_samples; ++i)
        for (std::size_t j = 0; j < angular_samples; ++j)
            s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                scale * mode.divergence(s.r[i], s.theta[j]);
    return s;
}

}
