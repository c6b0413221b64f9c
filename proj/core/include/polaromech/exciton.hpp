#pragma once

#include "polaromech/materials.hpp"

#include <optional>
#include <vector>

namespace pm {

struct QWSpec {
    double thickness = 8e-9;
    double indium_fraction = 0.05;
    MaterialParams host;
    AlloyModel alloy;
    double z_position = 0;
};

enum class Carrier { electron, heavy_hole };

// Samples y(x) with linear interpolation in between; zero outside.
struct SampledProfile {
    std::vector<double> x;
    std::vector<double> y;

    double at(double xq) const;
};

struct CarrierEnvelope {
    Carrier carrier = Carrier::electron;
    std::vector<double> z;          // m, uniform, centred on the well
    std::vector<double> amplitude;  // m^-1/2, integral of amplitude^2 is 1
    double confinement_energy = 0;  // J, <H0> above the well band edge
    double eigenvalue = 0;          // J, including any extra potential
};

struct ExcitonOptions {
    double grid_step = 0.05e-9;
    double penetration_depths = 12.0;
    double rho_min = 1e-12;
    double rho_max = 100e-9;
    std::size_t radial_points = 2000;
    double tolerance = 0.01e-3 * 1.602176634e-19;
    int max_iterations = 50;
};

struct RadialState {
    std::vector<double> rho;  // m, log-uniform
    std::vector<double> phi;  // m^-1, 2 pi int phi^2 rho drho = 1
    double energy = 0;        // J
};

struct ExcitonState {
    CarrierEnvelope electron;
    CarrierEnvelope hole;
    SampledProfile potential;  // V_eff(rho), J
    RadialState radial;
    double binding_energy = 0;       // J, negative
    double bohr_radius = 0;          // m
    double envelope_overlap = 0;     // int chi_e chi_h dz
    double oscillator_strength_per_area = 0;  // m^-2
    double radiative_halfwidth = 0;  // J
    double transition_energy = 0;    // J
    int iterations = 0;
    std::vector<double> binding_history;  // J, one entry per solve of the radial problem
};

// Ground state of a square well of `depth` (J) and `thickness` (m) on a uniform grid of
// half-width `span`, with BenDaniel-Duke mass matching and an optional extra potential (J).
CarrierEnvelope solve_finite_well(double thickness, double depth, double mass_well, double mass_barrier, double step,
                                  double span, const SampledProfile* extra = nullptr);

// Half-width of the common electron/hole grid for a quantum well.
double carrier_grid_span(const QWSpec& qw, const ExcitonOptions& opts = {});

CarrierEnvelope solve_carrier_envelope(const QWSpec& qw, Carrier carrier, const SampledProfile* extra = nullptr,
                                       const ExcitonOptions& opts = {});

std::vector<double> default_radial_grid(const ExcitonOptions& opts = {});

// Electron-hole interaction averaged over both envelopes, sampled on `rho`.
SampledProfile pseudo_potential(const CarrierEnvelope& electron, const CarrierEnvelope& hole,
                                double dielectric_constant, const std::vector<double>& rho);

// s-wave ground state of the 2D radial problem with potential sampled on a log-uniform grid.
RadialState solve_radial_exciton(const SampledProfile& potential, double reduced_mass);

// Mean in-plane radius int rho phi drho / int phi drho.
double bohr_radius(const RadialState& state);

ExcitonState self_consistent_exciton(const QWSpec& qw, const ExcitonOptions& opts = {});

// Radiative half-linewidth (J) of a QW exciton with oscillator strength per area f/S (m^-2).
double radiative_halfwidth(double oscillator_strength_per_area, double refractive_index);

}
