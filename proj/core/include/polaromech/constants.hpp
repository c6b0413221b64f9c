#pragma once

#include <numbers>

// All library quantities are SI (m, s, kg, J, rad/s) unless a name says otherwise.
namespace pm::phys {

inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double h_planck = 2.0 * pi * hbar;
inline constexpr double e_charge = 1.602176634e-19;
inline constexpr double m_electron = 9.1093837015e-31;
inline constexpr double eps0 = 8.8541878128e-12;
inline constexpr double c_light = 299792458.0;
inline constexpr double k_boltzmann = 1.380649e-23;

inline constexpr double eV = e_charge;
inline constexpr double meV = 1e-3 * eV;
inline constexpr double ueV = 1e-6 * eV;
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;

constexpr double hz_to_rad(double f) { return 2.0 * pi * f; }
constexpr double rad_to_hz(double w) { return w / (2.0 * pi); }

// Vacuum wavelength of a photon with energy `energy` (J).
constexpr double wavelength_of(double energy) { return h_planck * c_light / energy; }

}
