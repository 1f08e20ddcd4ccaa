#pragma once

#include <cmath>
#include <numbers>

#include "graphene_cp/errors.hpp"

namespace gcp {

inline constexpr double pi = std::numbers::pi;

//
// Physical constants (CODATA 2018, SI). All interfaces between modules are SI.
//
struct PhysicalConstants {
  double c;         // m/s
  double h;         // J s
  double hbar;      // J s
  double mu0;       // N/A^2
  double eps0;      // F/m
  double kB;        // J/K
  double a_B;       // m
  double e_charge;  // C
  double alpha_fs;  // dimensionless
  double Ry_Rb;     // 1/m, mass-corrected Rydberg constant for 87Rb
};

inline constexpr PhysicalConstants codata{
    .c = 299792458.0,
    .h = 6.62607015e-34,
    .hbar = 6.62607015e-34 / (2.0 * pi),
    .mu0 = 1.25663706212e-6,
    .eps0 = 8.8541878128e-12,
    .kB = 1.380649e-23,
    .a_B = 5.29177210903e-11,
    .e_charge = 1.602176634e-19,
    .alpha_fs = 7.2973525693e-3,
    .Ry_Rb = 10973662.301,
};

/// Rounded values used when reproducing the published tables verbatim.
inline constexpr double paper_alpha_fs = 1.0 / 137.0;
inline constexpr double paper_v_tilde = 1.0 / 300.0;

/// Atomic unit of dipole moment (e a_B) in C m.
inline constexpr double au_dipole = codata.e_charge * codata.a_B;

/// Atomic unit of energy for 87Rb (twice the reduced-mass Rydberg energy) in J.
inline constexpr double au_energy_rb = 2.0 * codata.h * codata.c * codata.Ry_Rb;

/// Atomic unit of polarizability, 4 pi eps0 a_B^3, in C m^2/V.
inline constexpr double au_polarizability =
    4.0 * pi * codata.eps0 * codata.a_B * codata.a_B * codata.a_B;

constexpr double au_to_si_dipole(double d_au) { return d_au * au_dipole; }
constexpr double si_to_au_dipole(double d_si) { return d_si / au_dipole; }

constexpr double au_to_si_length(double r_au) { return r_au * codata.a_B; }
constexpr double si_to_au_length(double r_si) { return r_si / codata.a_B; }

constexpr double au_to_si_polarizability(double a_au) { return a_au * au_polarizability; }
constexpr double si_to_au_polarizability(double a_si) { return a_si / au_polarizability; }

/// Angular frequency (rad/s) of a photon with the given vacuum wavelength (m).
constexpr double wavelength_to_omega(double lambda) { return 2.0 * pi * codata.c / lambda; }

/// Thermal wavelength h c / (kB T).
inline double thermal_wavelength(double temperature) {
  if (!(temperature > 0.0)) throw DomainError("thermal_wavelength: temperature must be > 0 K");
  return codata.h * codata.c / (codata.kB * temperature);
}

/// Spacing of the Matsubara frequencies, 2 pi kB T / hbar.
inline double matsubara_spacing(double temperature) {
  return 2.0 * pi * codata.kB * temperature / codata.hbar;
}

/// Bose-Einstein occupation of a mode of angular frequency omega at temperature T.
inline double bose_occupation(double omega, double temperature) {
  if (temperature <= 0.0) return 0.0;
  return 1.0 / std::expm1(codata.hbar * std::abs(omega) / (codata.kB * temperature));
}

inline constexpr double electronvolt = 1.602176634e-19;

/// Angular frequency corresponding to a photon energy in eV.
constexpr double ev_to_omega(double ev) { return ev * electronvolt / codata.hbar; }

}  // namespace gcp
