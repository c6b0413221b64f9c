#pragma once

#include "polaromech/dynamics.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace pm {

// Linearized fluctuations about a steady state; rates in rad/s. The displacement is
// measured in zero-point units, so spectra come out in x_ZPF^2 per (rad/s).
struct FluctuationConfig {
    double detuning = 0;              // detuning seen by the fluctuations
    double population = 0;            // steady-state population
    double kerr = 0;
    double coupling = 0;              // per-phonon g
    double total_decay = 0;           // kappa
    double mechanical_frequency = 0;  // Omega
    double mechanical_decay = 0;      // Gamma
    double temperature = 0;           // bath temperature, K

    void validate() const;
};

FluctuationConfig fluctuation_config(const SteadyState& ss, const DriveConfig& drive, double temperature);

// Bose-Einstein occupation at angular frequency omega.
double thermal_occupation(double omega, double temperature);
// omega coth(hbar omega / 2 k_B T), continued analytically for complex omega.
std::complex<double> thermal_weight(std::complex<double> omega, double temperature);

struct SqueezedFrame {
    double squeezing = 0;          // r
    double detuning = 0;           // delta_s
    double coupling = 0;           // g_s = g exp(-r)
    double bath_population = 0;    // n_s = sinh^2 r
    double bath_correlation = 0;   // m_s = sqrt(n_s (n_s + 1))
    // Bath correlations in units of kappa * population, laid out as
    // {<xi xi>, <xi xi^+>, <xi^+ xi>, <xi^+ xi^+>}; the anomalous entries are sinh r cosh r.
    std::array<double, 4> correlation{};
};

// Throws SqueezeDiverges when |kerr * population / detuning| >= 1.
SqueezedFrame squeeze_frame(double kerr, double population, double detuning, double coupling);
SqueezedFrame squeeze_frame(const FluctuationConfig& cfg);

struct BackActionResult {
    double frequency_shift = 0;      // delta Omega at the probe frequency
    double damping_shift = 0;        // delta Gamma at the probe frequency
    double optical_damping = 0;      // delta Gamma at Omega
    double optical_spring = 0;       // delta Omega at Omega
    double coupling_squared = 0;     // population * g_s^2
    std::pair<double, double> sideband_detunings{};  // squeezed-frame extrema (+, -)
    std::pair<double, double> shifted_sidebands{};   // detunings seen by the fluctuations (+, -)
    std::pair<double, double> enhancement{};         // eta (+, -)
};

BackActionResult backaction_rates(const SqueezedFrame& frame, const FluctuationConfig& cfg, double omega);

// Squeezed-frame detunings extremizing the optical damping at Omega.
std::pair<double, double> sideband_extrema(double mechanical_frequency, double total_decay);

// Drift matrix of (dz, dz^+, dq, dp) and its spectrum.
Eigen::Matrix4cd fluctuation_drift(const FluctuationConfig& cfg);
StabilityReport fluctuation_stability(const FluctuationConfig& cfg);
// Gamma_opt from the positive-frequency eigenvalue with the largest mechanical weight.
double exact_optical_damping(const FluctuationConfig& cfg);

enum class SpectrumMethod { squeezed_analytic, exact_qle };

struct SpectrumResult {
    std::vector<double> frequencies;
    std::vector<double> density;
    SpectrumMethod method = SpectrumMethod::squeezed_analytic;
};

// Symmetrized displacement PSD; throws UnstablePoint for dynamically unstable points.
SpectrumResult displacement_psd(const SqueezedFrame& frame, const FluctuationConfig& cfg,
                                 std::span<const double> frequencies);
// Same quantity from a direct solve of the unsqueezed linear system; throws SingularResolvent.
SpectrumResult exact_qle_spectrum(const FluctuationConfig& cfg, std::span<const double> frequencies);

// residues: residue theorem at the exact poles of the linear system.
// weak_coupling_residues: closed form with a Lorentzian susceptibility at Omega_om, Gamma_om.
// quadrature / exact_qle: direct integration of the squeezed-frame or unsqueezed spectrum.
enum class OccupationMethod { residues, weak_coupling_residues, quadrature, exact_qle };

std::string_view to_string(OccupationMethod m);

struct OccupationResult {
    double occupation = 0;          // n_eff
    double thermal_occupation = 0;  // n_th at Omega
    OccupationMethod method = OccupationMethod::quadrature;
};

OccupationResult phonon_occupation(const SqueezedFrame& frame, const FluctuationConfig& cfg, OccupationMethod method);
OccupationResult phonon_occupation(const FluctuationConfig& cfg, OccupationMethod method);

struct CoolingOptimum {
    double detuning = 0;
    double occupation = 0;
};

// Minimal n_eff over the red sideband (within 2 kappa of it) at fixed population.
CoolingOptimum minimize_occupation(const FluctuationConfig& cfg, OccupationMethod method);

// Smallest population at which Gamma + Gamma_opt turns negative at the blue-side optimum.
double oscillation_threshold(const FluctuationConfig& cfg, double max_population = 1e4);

struct PhonoritonModes {
    std::complex<double> upper;
    std::complex<double> lower;
    std::complex<double> splitting;  // sideband-resolved Stokes splitting; imaginary in weak coupling
    bool strong_coupling = false;
};

PhonoritonModes phonoriton_modes(const SqueezedFrame& frame, const FluctuationConfig& cfg);

}
