#pragma once

#include "polaromech/materials.hpp"

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace pm {

// Quarter-wave Bragg mirror of alternating high/low index layers.
struct DBRModel {
    double high_index = 0;
    double low_index = 0;
    double design_wavelength = 0;
    double high_thickness = 0;
    double low_thickness = 0;
    double effective_index = 0;     // at the stop-band center
    double penetration_length = 0;  // field penetration into one mirror

    double index_contrast() const { return high_index - low_index; }
    double period() const { return high_thickness + low_thickness; }
    double design_wavevector() const;
    // Bloch wavevector of the infinite stack at vacuum wavevector k0, folded into the
    // first Brillouin zone with a non-negative imaginary part inside the stop band.
    std::complex<double> bloch_wavevector(double k0) const;
    std::complex<double> bloch_index(double k0) const { return bloch_wavevector(k0) / k0; }
};

DBRModel dbr_dispersion(double high_index, double low_index, double wavelength);

struct Layer {
    double index = 0;
    double thickness = 0;
};

struct PillarGeometry {
    double radius = 1.3e-6;
    DBRModel dbr = dbr_dispersion(3.5, 2.9, 850e-9);
    int mirror_pairs = 25;
    bool terminal_low_layer = false;  // extra low-index layer at the outer end of each mirror
    double top_index = 1.0;
    double substrate_index = 3.5;
    std::vector<double> qw_offsets;   // m from the spacer center
    MaterialParams high_material;     // layer densities and deformation potentials
    MaterialParams low_material;
    double cutoff_frequency = 2 * std::numbers::pi * 19.5e9;  // rad/s, planar cavity
    double sound_speed = 5270;        // effective longitudinal sound speed, m/s
    double mass_scale = 1;            // calibrated effective-mass convention

    double spacer_thickness() const { return 2 * dbr.high_thickness; }
    // Layers from the spacer center outward through one mirror, ending before the cladding.
    std::vector<Layer> half_stack() const;
    // Substrate side to top side, spacer included.
    std::vector<Layer> full_stack() const;
};

// Fills densities, deformation potentials and the mass calibration from a material table.
PillarGeometry make_pillar_geometry(const MaterialTable& table, double radius,
                                    std::vector<double> qw_offsets = {});

struct PillarOpticalMode {
    DBRModel dbr;
    double radius = 0;
    double vertical_normalization = 0;  // N_z
    double radial_normalization = 0;    // N_r
    double radial_wavevector = 0;       // alpha_01 / R
    double wavevector = 0;              // n_eff k0
    double frequency = 0;               // rad/s

    // Unnormalized e^{-|z|/2L} sin(beta z).
    double shape(double z) const;
    double shape_derivative(double z) const;
    double vertical(double z) const { return vertical_normalization * shape(z); }
    double radial(double r) const;
    double field(double r, double z) const { return radial(r) * vertical(z); }
    // |shape| maximum and its position on z > 0.
    double shape_peak() const;
    double shape_peak_position() const;
};

PillarOpticalMode vertical_envelope(const PillarGeometry& geometry);

// Sampled real standing wave of a layer stack started from a field node at z = 0.
struct StandingWave {
    std::vector<double> z;
    std::vector<double> field;
};

StandingWave standing_wave(std::span<const Layer> layers, double vacuum_wavevector,
                           std::size_t samples_per_layer = 64);

struct TransferMatrixEnvelope {
    std::vector<double> z;
    std::vector<double> field;        // normalized, int |u|^2 dz = 1 over the stack
    std::vector<double> cell_edges;   // one DBR period per cell, symmetric about z = 0
};

TransferMatrixEnvelope transfer_matrix_envelope(const PillarGeometry& geometry,
                                                std::size_t samples_per_layer = 64);

// Exact standing-wave field of the symmetric stack at the design wavelength, odd about
// the spacer center and scaled to unit peak magnitude.
class StackField {
public:
    explicit StackField(const PillarGeometry& geometry);
    double value(double z) const;
    double slope(double z) const;
    double half_height() const { return height_; }

private:
    struct State {
        double start, field, slope, wavevector;
    };
    const State& locate(double z) const;

    std::vector<State> states_;
    double height_ = 0;
};

struct EnvelopeDeviation {
    double pointwise = 0;     // mean |u_exact - u_approx| over the peak amplitude
    double cell_mean = 0;     // mean |difference| of per-period field energy fractions
    double cell_max = 0;
};

EnvelopeDeviation envelope_deviation(const TransferMatrixEnvelope& exact, const PillarOpticalMode& approx);

// Complex resonance of the finite stack with outgoing waves in both claddings.
struct CavityResonance {
    std::complex<double> vacuum_wavevector;
    double wavelength = 0;
    double linewidth = 0;  // energy decay rate kappa, rad/s
    double quality_factor = 0;
};

CavityResonance cavity_resonance(const PillarGeometry& geometry);

// Energy decay rate from a bulk absorption coefficient alpha (1/m) at effective index n.
double absorption_linewidth(double absorption, double effective_index);

struct PillarMechMode {
    PillarOpticalMode envelope;
    double frequency = 0;           // rad/s
    double cutoff_frequency = 0;    // rad/s
    double sound_speed = 0;
    double line_density = 0;        // |u|^2-weighted density times length, kg/m^2
    double effective_mass = 0;
    double zero_point = 0;          // m
    double strain_normalization = 0;  // N_Sigma
    std::vector<double> qw_offsets;
    std::vector<double> strain_reduction;  // eta_S per QW
    std::vector<double> field_reduction;   // eta_E per QW

    // Unit-peak longitudinal displacement profile.
    double displacement(double z) const;
    // Strain field Sigma(r, z) per unit displacement amplitude.
    double strain(double r, double z) const;
    // N_Sigma N_r N_z, the factor multiplying J0(K r) times the unnormalized vertical slope.
    double reduced_strain_normalization() const;
};

PillarMechMode pillar_mech_mode(const PillarGeometry& geometry);

// alpha_01, the first zero of J_0.
double bessel_j0_first_zero();

}
