#pragma once

#include "polaromech/materials.hpp"

#include <Eigen/Dense>

#include <vector>

namespace pm {

// Fundamental even TE mode of a symmetric dielectric slab in air.
struct SlabMode {
    double thickness = 0;
    double index = 0;
    double wavelength = 0;
    double effective_index = 0;
    double transverse_wavevector = 0;  // inside the slab
    double decay_constant = 0;         // in the cladding
    double amplitude = 0;              // so that int f^2 dz = 1

    double profile(double z) const;
};

SlabMode slab_effective_index(double thickness, double index, double wavelength);

struct PlanarGeometry {
    double outer_radius = 2e-6;
    double inner_radius = 0;  // 0 for a disk
    double thickness = 200e-9;
    double wavelength = 850e-9;
    MaterialParams material;
    std::vector<double> qw_positions;  // m from the mid-plane

    bool is_ring() const { return inner_radius > 0; }
    double volume() const;
};

struct OpticalModeWGM {
    int radial_order = 1;
    int azimuthal_order = 0;
    double wavevector = 0;  // rad/m
    double frequency = 0;   // rad/s
    double normalization = 0;
    double ring_mix = 0;
    double inner_radius = 0;
    double outer_radius = 0;
    SlabMode vertical;

    double effective_index() const { return vertical.effective_index; }
    // J_l(k r) + x Y_l(k r)
    double radial(double r) const;
    // In-plane envelope F(r, theta), with int |F|^2 dS = 1.
    double in_plane(double r, double theta) const;
    // Full field, with int |phi|^2 dV = 1.
    double field(double r, double theta, double z) const;
};

OpticalModeWGM wgm_mode(const PlanarGeometry& geometry, int radial_order, int azimuthal_order);

// Roots j of J_l(j) = 0 near `target`: the azimuthal order whose p-th zero is closest to it.
int resonant_azimuthal_order(int radial_order, double target);

struct MechModePlanar {
    int radial_order = 1;
    int azimuthal_order = 0;
    double wavevector = 0;  // rad/m
    double frequency = 0;   // rad/s
    double sound_speed = 0;
    double effective_mass = 0;
    double zero_point = 0;  // m
    double order = 1;       // Bessel order of the radial displacement
    double ring_mix = 0;
    double normalization = 0;
    double volume = 0;
    double poisson_ratio = 0;
    double inner_radius = 0;
    double outer_radius = 0;

    // Z(K r) = J_order(K r) + x Y_order(K r)
    double bessel(double r) const;
    double bessel_derivative(double r) const;  // d/dr Z(K r)
    // Radial displacement of the normalized mode at (r, theta).
    double displacement(double r, double theta) const;
    // (1/r) d(r u_r)/dr of the normalized mode.
    double divergence(double r, double theta) const;
    // Radial traction operator K Z'(K r) + (nu / r) Z(K r) applied to the mode.
    double traction(double r) const;
    // Largest boundary traction relative to the peak interior traction.
    double boundary_traction_residual() const;
};

MechModePlanar rbm_disk(const PlanarGeometry& geometry, int radial_order);
MechModePlanar mech_ring(const PlanarGeometry& geometry, int radial_order, int azimuthal_order);

// Panel count resolving a Bessel profile of the given wavevector on [a, b].
std::size_t oscillation_panels(double wavevector, double a, double b);

double zero_point_amplitude(double mass, double angular_frequency);

// (1 - 2 nu) / (1 - nu)
double plane_stress_factor(double poisson_ratio);

struct StrainField {
    std::vector<double> r;
    std::vector<double> theta;
    Eigen::MatrixXd values;  // (r, theta), strain per phonon
    double plane_stress_factor = 1;
};

StrainField plane_stress_strain(const MechModePlanar& mode, std::size_t radial_samples = 512,
                                std::size_t angular_samples = 256);

}
