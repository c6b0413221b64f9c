#include "polaromech/couplings.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

namespace pm {

using namespace phys;

double angular_overlap(int l, int m) {
    l = std::abs(l);
    m = std::abs(m);
    if (m == 0) return 1.0;
    if (l > 0 && m == 2 * l) return 0.5;
    return 0.0;
}

namespace {

double radial_weight_integral(const OpticalModeWGM& o) {
    return num::integrate_panels(
        [&](double r) {
            const double f = o.radial(r);
            return r * f * f;
        },
        o.inner_radius, o.outer_radius, oscillation_panels(2 * o.wavevector, o.inner_radius, o.outer_radius));
}

// int |F|^2 div dS / int |F|^2 dS for the normalized mechanical mode.
double planar_strain_overlap(const OpticalModeWGM& o, const MechModePlanar& m) {
    const double angular = angular_overlap(o.azimuthal_order, m.azimuthal_order);
    if (angular == 0.0) return 0.0;
    const std::size_t panels =
        oscillation_panels(2 * o.wavevector + m.wavevector, o.inner_radius, o.outer_radius);
    const double num = num::integrate_panels(
        [&](double r) {
            const double f = o.radial(r);
            return r * f * f * m.divergence(r, 0.0);
        },
        o.inner_radius, o.outer_radius, panels);
    return angular * num / radial_weight_integral(o);
}

ElectromechCoupling from_displacement(double per_displacement, double zero_point) {
    return {per_displacement, per_displacement * zero_point};
}

// int |u_r|^2 J0(K r) dS
double pillar_radial_overlap(const PillarOpticalMode& env) {
    const double k = env.radial_wavevector;
    return num::integrate_panels(
        [&](double r) {
            const double u = env.radial(r);
            return 2 * pi * r * u * u * boost::math::cyl_bessel_j(0, k * r);
        },
        0.0, env.radius, 16);
}

double pillar_slope(const PillarMechMode& mech, double z) {
    return mech.envelope.shape_derivative(z) / mech.envelope.shape_peak();
}

// Carrier-density average of a z profile, the envelope being centred on `centre`.
template <class F>
double carrier_average(const CarrierEnvelope& env, double centre, F&& profile) {
    std::vector<double> y(env.z.size());
    for (std::size_t i = 0; i < env.z.size(); ++i) y[i] = env.amplitude[i] * env.amplitude[i] * profile(centre + env.z[i]);
    return num::trapezoid(env.z, y);
}

double total_mass(const QWSpec& qw) { return qw.host.mass_e + qw.host.mass_hh_inplane; }

}

double relative_motion_average(const RadialState& radial, double wavevector, double fraction) {
    const auto& rho = radial.rho;
    if (rho.size() < 2 || rho.size() != radial.phi.size()) throw GridMismatch("radial exciton state is malformed");
    std::vector<double> x(rho.size()), y(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        x[i] = std::log(rho[i]);
        y[i] = 2 * pi * radial.phi[i] * radial.phi[i] * rho[i] * rho[i] *
               boost::math::cyl_bessel_j(0, wavevector * fraction * rho[i]);
    }
    return num::trapezoid(x, y);
}

ElectromechCoupling gxm_overlap(const OpticalModeWGM& o, const MechModePlanar& m, const MaterialParams& well) {
    const double strain = plane_stress_factor(m.poisson_ratio) * planar_strain_overlap(o, m);
    return from_displacement(well.deformation_gap() / hbar * strain, m.zero_point);
}

ElectromechCoupling gxm_overlap(const OpticalModeWGM& o, const StrainField& s, const MaterialParams& well,
                                double zero_point) {
    const auto nr = static_cast<Eigen::Index>(s.r.size());
    const auto nt = static_cast<Eigen::Index>(s.theta.size());
    if (nr < 2 || nt < 4 || s.values.rows() != nr || s.values.cols() != nt)
        throw GridMismatch("strain samples do not match their radial and angular grids");
    const double span = o.outer_radius - o.inner_radius;
    if (std::abs(s.r.front() - o.inner_radius) > 1e-9 * span || std::abs(s.r.back() - o.outer_radius) > 1e-9 * span)
        throw GridMismatch("strain grid does not span the optical mode's radial support");
    const double dtheta = 2 * pi / static_cast<double>(nt);
    for (Eigen::Index j = 0; j < nt; ++j)
        if (std::abs(s.theta[static_cast<std::size_t>(j)] - static_cast<double>(j) * dtheta) > 1e-9)
            throw GridMismatch("strain angular grid must be uniform on [0, 2 pi)");
    if (!(zero_point > 0)) throw GridMismatch("strain grid needs the mode's zero-point amplitude");

    std::vector<double> num(s.r.size()), den(s.r.size());
    for (Eigen::Index i = 0; i < nr; ++i) {
        const double r = s.r[static_cast<std::size_t>(i)];
        double a = 0, b = 0;
        for (Eigen::Index j = 0; j < nt; ++j) {
            const double f = o.in_plane(r, s.theta[static_cast<std::size_t>(j)]);
            a += f * f * s.values(i, j);
            b += f * f;
        }
        num[static_cast<std::size_t>(i)] = r * a * dtheta;
        den[static_cast<std::size_t>(i)] = r * b * dtheta;
    }
    const double strain_per_phonon = num::trapezoid(s.r, num) / num::trapezoid(s.r, den);
    return {well.deformation_gap() / hbar * strain_per_phonon / zero_point,
            well.deformation_gap() / hbar * strain_per_phonon};
}

ElectromechCoupling gxm_overlap(const PillarMechMode& mech, const MaterialParams& well, double qw_offset) {
    const double g = well.deformation_gap() / hbar * pillar_radial_overlap(mech.envelope) * pillar_slope(mech, qw_offset);
    return from_displacement(g, mech.zero_point);
}

ElectromechCoupling gxm_exact(const OpticalModeWGM& o, const MechModePlanar& m, const ExcitonState& x,
                              const QWSpec& qw, double bohr_scale) {
    const double mass = total_mass(qw);
    const double k = m.wavevector * bohr_scale;
    const double at_electron = relative_motion_average(x.radial, k, qw.host.mass_hh_inplane / mass);
    const double at_hole = relative_motion_average(x.radial, k, qw.host.mass_e / mass);
    // Plane-stress strain is uniform across the slab, so the carrier z averages are unity.
    const double ne = carrier_average(x.electron, 0.0, [](double) { return 1.0; });
    const double nh = carrier_average(x.hole, 0.0, [](double) { return 1.0; });
    const double strain = plane_stress_factor(m.poisson_ratio) * planar_strain_overlap(o, m);
    const double energy = (qw.host.deformation_potential_h * at_hole * nh -
                           qw.host.deformation_potential_e * at_electron * ne) * strain;
    return from_displacement(energy / hbar, m.zero_point);
}

ElectromechCoupling gxm_exact(const PillarGeometry& geometry, const PillarMechMode& mech, const ExcitonState& x,
                              const QWSpec& qw, double bohr_scale) {
    const StackField field(geometry);
    const double mass = total_mass(qw);
    const double k = mech.envelope.radial_wavevector * bohr_scale;
    const double at_electron = relative_motion_average(x.radial, k, qw.host.mass_hh_inplane / mass);
    const double at_hole = relative_motion_average(x.radial, k, qw.host.mass_e / mass);
    auto slope = [&](double z) { return field.slope(z); };
    const double se = carrier_average(x.electron, qw.z_position, slope);
    const double sh = carrier_average(x.hole, qw.z_position, slope);
    const double energy = (qw.host.deformation_potential_h * at_hole * sh -
                           qw.host.deformation_potential_e * at_electron * se) *
                          pillar_radial_overlap(mech.envelope);
    return from_displacement(energy / hbar, mech.zero_point);
}

double cubic_bessel_overlap() {
    static const double beta = [] {
        const double a = bessel_j0_first_zero();
        const double integral = num::integrate_panels(
            [](double x) {
                const double j = boost::math::cyl_bessel_j(0, x);
                return x * j * j * j;
            },
            0.0, a, 16);
        return 2 * pi * integral / (a * a * boost::math::cyl_bessel_j(1, a));
    }();
    return beta;
}

double geometric_overlap_pillar(const DBRModel& dbr) {
    const double j1 = boost::math::cyl_bessel_j(1, bessel_j0_first_zero());
    return cubic_bessel_overlap() * std::exp(dbr.index_contrast() / (2 * dbr.effective_index)) / (pi * j1);
}

PillarElectromech gxm_pillar(const PillarMechMode& mech, const MaterialParams& well) {
    const auto& dbr = mech.envelope.dbr;
    PillarElectromech p;
    p.phonon_wavevector = dbr.effective_index * dbr.design_wavevector();
    p.geometric_overlap = geometric_overlap_pillar(dbr);
    p.per_displacement_peak = well.deformation_gap() / hbar * p.phonon_wavevector * p.geometric_overlap;
    double num = 0, den = 0;
    for (std::size_t j = 0; j < mech.strain_reduction.size(); ++j) {
        const double w = mech.field_reduction[j] * mech.field_reduction[j];
        num += w * mech.strain_reduction[j];
        den += w;
    }
    if (mech.strain_reduction.empty()) {
        p.weighted_strain_reduction = 1.0;
    } else {
        if (!(den > 0)) throw OutOfRange("all quantum wells sit on optical field nodes");
        p.weighted_strain_reduction = num / den;
    }
    p.per_displacement = p.per_displacement_peak * p.weighted_strain_reduction;
    p.per_phonon = p.per_displacement * mech.zero_point;
    return p;
}

double gcx_planar(const ExcitonState& x, const SlabMode& slab, std::span<const double> qw_positions) {
    double sum = 0;
    for (double z : qw_positions) {
        const double f = slab.profile(z);
        const double effective_length = 2.0 / (f * f);
        sum += e_charge * e_charge / (2 * eps0 * slab.effective_index * slab.effective_index * m_electron) *
               x.oscillator_strength_per_area / effective_length;
    }
    return std::sqrt(sum);
}

double pillar_effective_length(const DBRModel& dbr) {
    return 2 * dbr.penetration_length + dbr.design_wavelength / (2 * dbr.effective_index);
}

double gcx_pillar(double halfwidth, const DBRModel& dbr, std::span<const double> field_reductions) {
    if (!(halfwidth > 0)) throw OutOfRange("exciton radiative half-linewidth must be positive");
    double sum = 0;
    for (double eta : field_reductions) sum += eta * eta;
    return std::sqrt(2 * c_light * halfwidth / (hbar * dbr.effective_index * pillar_effective_length(dbr)) * sum);
}

double modal_area(const OpticalModeWGM& o) {
    const double angular = o.azimuthal_order == 0 ? 2 * pi : 0.75 * pi;
    const double n4 = std::pow(o.normalization, 4);
    const double radial = num::integrate_panels(
        [&](double r) { return r * std::pow(o.radial(r), 4); }, o.inner_radius, o.outer_radius,
        oscillation_panels(4 * o.wavevector, o.inner_radius, o.outer_radius));
    return 1.0 / (n4 * angular * radial);
}

double modal_area(const PillarOpticalMode& o) {
    const double j1 = boost::math::cyl_bessel_j(1, bessel_j0_first_zero());
    return pi * j1 * j1 * o.radius * o.radius;
}

double CouplingSet::kerr() const { return modal_area > 0 ? g_xx / (hbar * modal_area) : 0.0; }

PolaritonBasis polariton_transform(const PolaritonInputs& in) {
    if (!(in.g_cx > 0)) throw OutOfRange("polariton basis needs a positive exciton-photon coupling");
    PolaritonBasis b;
    b.detuning = in.cavity_frequency - in.exciton_frequency;
    const double split = std::hypot(b.detuning, 2 * in.g_cx);
    const double cos2 = -b.detuning / split;
    b.mixing_angle = 0.5 * std::acos(cos2);
    const double s2 = 0.5 * (1 - cos2), c2 = 0.5 * (1 + cos2);
    const double mean = 0.5 * (in.cavity_frequency + in.exciton_frequency);
    b.lower_frequency = mean - split / 2;
    b.upper_frequency = mean + split / 2;
    b.exciton_fraction = s2;
    b.g_lm = in.g_xm * s2 + in.g_cm * c2;
    b.g_um = in.g_xm * c2 + in.g_cm * s2;
    b.g_lu = std::sin(2 * b.mixing_angle) * (in.g_xm - in.g_cm) / 2;
    b.chi_l = in.kerr * s2 * s2;
    b.chi_u = in.kerr * c2 * c2;
    b.kappa_l = c2 * in.cavity_decay + s2 * in.exciton_decay;
    b.kappa_u = s2 * in.cavity_decay + c2 * in.exciton_decay;
    return b;
}

double detuning_for_exciton_fraction(double x, double g_cx) {
    if (!(x > 0 && x < 1)) throw OutOfRange("exciton fraction must lie strictly between 0 and 1");
    return -(1 - 2 * x) * g_cx / std::sqrt(x * (1 - x));
}

double cooperativity(double g_lm, double kappa_l, double gamma) {
    if (!(kappa_l > 0) || !(gamma > 0)) throw OutOfRange("cooperativity needs positive decay rates");
    return 4 * g_lm * g_lm / (kappa_l * gamma);
}

}
