#pragma once

#include "polaromech/exciton.hpp"
#include "polaromech/materials.hpp"
#include "polaromech/pillar_modes.hpp"
#include "polaromech/planar_modes.hpp"

#include <span>

namespace pm {

struct ElectromechCoupling {
    double per_displacement = 0;  // G_xm, rad/s per m
    double per_phonon = 0;        // g_xm, rad/s
};

// Angular average of cos^2(l theta) cos(m theta) relative to that of cos^2(l theta).
double angular_overlap(int optical_order, int mechanical_order);

// Reduced electromechanical coupling from the overlap of |F|^2 with the QW-plane strain.
ElectromechCoupling gxm_overlap(const OpticalModeWGM& optical, const MechModePlanar& mech,
                                const MaterialParams& well);
// Same overlap on a sampled strain grid that must span the optical mode's annulus.
ElectromechCoupling gxm_overlap(const OpticalModeWGM& optical, const StrainField& strain, const MaterialParams& well,
                                double zero_point);
// Pillar: radial quadrature of |u_r|^2 times the strain at the QW offset.
ElectromechCoupling gxm_overlap(const PillarMechMode& mech, const MaterialParams& well, double qw_offset);

// Unreduced coupling with finite Bohr radius and QW thickness. The carrier envelopes are
// centred on qw.z_position; `bohr_scale` stretches the in-plane relative wavefunction.
ElectromechCoupling gxm_exact(const OpticalModeWGM& optical, const MechModePlanar& mech, const ExcitonState& exciton,
                              const QWSpec& qw, double bohr_scale = 1.0);
// Pillar: the vertical strain comes from the exact stack field rather than the analytic envelope.
ElectromechCoupling gxm_exact(const PillarGeometry& geometry, const PillarMechMode& mech, const ExcitonState& exciton,
                              const QWSpec& qw, double bohr_scale = 1.0);

// Circle average of J0(k s) over the relative-coordinate distribution with s = fraction * rho.
double relative_motion_average(const RadialState& radial, double wavevector, double fraction);

// beta_0 = int_0^R 2 pi r J0(K r)^3 dr / (J1(alpha_01) R^2)
double cubic_bessel_overlap();
double geometric_overlap_pillar(const DBRModel& dbr);

struct PillarElectromech {
    double phonon_wavevector = 0;  // k_m
    double geometric_overlap = 0;  // I_g
    double per_displacement_peak = 0;  // G_xm / eta_S, rad/s per m
    double per_displacement = 0;       // field-weighted over all QWs
    double per_phonon = 0;
    double weighted_strain_reduction = 0;
};

PillarElectromech gxm_pillar(const PillarMechMode& mech, const MaterialParams& well);

// Planar exciton-photon coupling C / hbar (rad/s) summed over identical QWs at `qw_positions`.
double gcx_planar(const ExcitonState& exciton, const SlabMode& slab, std::span<const double> qw_positions);
// Pillar exciton-photon coupling (rad/s) from the radiative half-linewidth (J).
double gcx_pillar(double radiative_halfwidth, const DBRModel& dbr, std::span<const double> field_reductions);
// 2 L + lambda / (2 n_eff)
double pillar_effective_length(const DBRModel& dbr);

// Exciton-exciton interaction area: inverse participation of |F|^2.
double modal_area(const OpticalModeWGM& optical);
double modal_area(const PillarOpticalMode& optical);

struct CouplingSet {
    double g_cx = 0;
    double g_cm = 0;
    double g_xm = 0;
    double G_cm = 0;   // rad/s per m
    double G_xm = 0;   // rad/s per m
    double g_xx = 0;   // J m^2
    double modal_area = 0;
    double phonon_wavevector = 0;
    double geometric_overlap = 0;

    double kerr() const;  // g_xx / (hbar A), rad/s
};

struct PolaritonInputs {
    double cavity_frequency = 0;   // rad/s
    double exciton_frequency = 0;  // rad/s
    double g_cx = 0;
    double g_cm = 0;
    double g_xm = 0;
    double kerr = 0;               // g_xx / A in rad/s
    double cavity_decay = 0;       // kappa_c
    double exciton_decay = 0;      // kappa_x
};

struct PolaritonBasis {
    double mixing_angle = 0;
    double detuning = 0;           // omega_c - omega_x
    double lower_frequency = 0;
    double upper_frequency = 0;
    double exciton_fraction = 0;   // sin^2 theta
    double g_lm = 0;
    double g_um = 0;
    double g_lu = 0;
    double chi_l = 0;
    double chi_u = 0;
    double kappa_l = 0;
    double kappa_u = 0;
};

PolaritonBasis polariton_transform(const PolaritonInputs& in);

// Cavity-exciton detuning omega_c - omega_x giving the requested lower-polariton exciton fraction.
double detuning_for_exciton_fraction(double exciton_fraction, double g_cx);

double cooperativity(double g_lm, double kappa_l, double gamma);

}
