#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace pm {

// Driven lower polariton coupled to one mechanical mode; every rate in rad/s.
struct DriveConfig {
    double detuning = 0;        // laser minus lower-polariton frequency
    double input_rate = 0;      // n_in, photons per second
    double radiative_decay = 0; // kappa_r
    double total_decay = 0;     // kappa
    double mechanical_decay = 0;
    double mechanical_frequency = 0;
    double coupling = 0;        // per-phonon g
    double kerr = 0;            // chi

    void validate() const;
};

struct SteadyState {
    double population = 0;                   // n
    std::complex<double> amplitude;          // alpha, |alpha|^2 = n
    double displacement = 0;                 // q in zero-point units
    double effective_kerr = 0;               // chi - 2 g^2 / Omega
    double effective_detuning = 0;           // delta - 2 chi_eff n
    double fluctuation_detuning = 0;         // delta - 2 chi n + g q, seen by the fluctuations
};

enum class Stability { stable, single_mode_unstable, parametric_unstable };

std::string_view to_string(Stability s);

struct StabilityReport {
    std::array<std::complex<double>, 4> eigenvalues;  // frequencies omega, fluctuations ~ e^{-i omega t}
    Stability classification = Stability::stable;
    double max_growth = 0;  // largest Im(omega)
    std::size_t branch = 0; // index of the root in ascending population order
};

double effective_kerr(double kerr, double coupling, double mechanical_frequency);

// Drive rate whose steady state has population n.
double input_rate_for(const DriveConfig& cfg, double population);

// All real non-negative roots of the steady-state cubic, sorted by population.
std::vector<SteadyState> steady_state_roots(const DriveConfig& cfg);

// Turning-point populations (n_minus, n_plus) of the bistable fold, if any.
std::optional<std::pair<double, double>> bistability_bounds(const DriveConfig& cfg);

StabilityReport stability_eigenvalues(const SteadyState& ss, const DriveConfig& cfg, std::size_t branch = 0);

enum class Region { single_stable, bistable, parametric_unstable, unstable };

std::string_view to_string(Region r);

struct RegionPoint {
    std::vector<SteadyState> roots;
    std::vector<StabilityReport> reports;
    Region region = Region::single_stable;
};

RegionPoint classify_point(const DriveConfig& cfg);

// Mean-field time integration started at `ss` displaced by `perturbation` (relative to
// |alpha|). Returns true when the amplitude departs by ten times the initial offset.
bool mean_field_departs(const SteadyState& ss, const DriveConfig& cfg, double perturbation = 1e-6,
                        double horizon_in_decay_times = 1e4);

}
