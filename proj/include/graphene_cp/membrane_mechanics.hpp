#pragma once

// Fundamental mode of a suspended graphene sheet under tension and the
// static (Hookean) response of that mode to a point-equivalent force.

#include <cmath>
#include <string>

#include "graphene_cp/constants.hpp"
#include "graphene_cp/errors.hpp"

namespace gcp {

inline constexpr double clamping_doubly_clamped = 1.03;
inline constexpr double clamping_cantilever = 0.162;

/// m_eff = 0.735 L w t rho
inline constexpr double effective_mass_factor = 0.735;
/// Tension coefficient in the fundamental-frequency formula.
inline constexpr double tension_coefficient = 0.57;

struct MembraneSpec {
  double youngs_modulus = 1.0e12;  // Pa
  double density = 2200.0;         // kg/m^3
  double thickness = 0.3e-9;       // m
  double width = 2.0e-6;           // m
  double length = 3.0e-6;          // m
  double tension = 0.1e-9;         // N
  double clamping = clamping_cantilever;
  bool custom_clamping = false;    // allow A outside {1.03, 0.162}

  /// Bulk-graphite cantilever: E = 1 TPa, rho = 2200 kg/m^3, t = 0.3 nm,
  /// L = 3 um, w = 2 um, T = 0.1 nN, A = 0.162.
  static MembraneSpec paper_cantilever() { return {}; }

  void validate() const {
    if (!(youngs_modulus > 0.0 && density > 0.0 && thickness > 0.0 && width > 0.0 && length > 0.0))
      throw DomainError("membrane: E, rho, t, w and L must all be > 0");
    if (!(tension >= 0.0)) throw DomainError("membrane: tension must be >= 0");
    if (!(clamping > 0.0)) throw DomainError("membrane: clamping coefficient must be > 0");
    if (!custom_clamping && clamping != clamping_doubly_clamped && clamping != clamping_cantilever)
      throw DomainError("membrane: clamping coefficient must be 1.03 (doubly clamped) or 0.162 (cantilever)");
  }
};

/// f0 = sqrt[(A sqrt(E/rho) t/L^2)^2 + A^2 0.57 T/(rho L^2 w t)]  (Hz)
inline double fundamental_frequency(const MembraneSpec& m) {
  m.validate();
  const double L2 = m.length * m.length;
  const double bending = m.clamping * std::sqrt(m.youngs_modulus / m.density) * m.thickness / L2;
  const double tension =
      m.clamping * m.clamping * tension_coefficient * m.tension / (m.density * L2 * m.width * m.thickness);
  return std::sqrt(bending * bending + tension);
}

inline double effective_mass(const MembraneSpec& m) {
  m.validate();
  return effective_mass_factor * m.length * m.width * m.thickness * m.density;
}

/// kappa_eff = m_eff (2 pi f0)^2  (N/m)
inline double spring_constant(const MembraneSpec& m) {
  const double omega = 2.0 * pi * fundamental_frequency(m);
  return effective_mass(m) * omega * omega;
}

/// Force that deflects the fundamental mode by `amplitude` (m).
inline double force_for_amplitude(const MembraneSpec& m, double amplitude) {
  if (!(amplitude > 0.0)) throw DomainError("force_for_amplitude: amplitude must be > 0");
  return spring_constant(m) * amplitude;
}

enum class Rounding { ceiling, nearest };

inline std::string to_string(Rounding r) { return r == Rounding::ceiling ? "ceiling" : "nearest"; }

enum class ForceDirection { repulsive, attractive };

inline std::string to_string(ForceDirection d) { return d == ForceDirection::repulsive ? "repulsive" : "attractive"; }

struct AtomCount {
  long count = 0;
  ForceDirection direction = ForceDirection::repulsive;
};

inline long round_count(double ratio, Rounding rounding) {
  return static_cast<long>(rounding == Rounding::ceiling ? std::ceil(ratio) : std::max(1.0, std::round(ratio)));
}

/// Number of atoms whose combined force reaches f_required: ceil(f_req / |f_atom|)
/// by default. The sign of f_per_atom only sets the direction.
inline AtomCount atoms_needed(double f_required, double f_per_atom, Rounding rounding = Rounding::ceiling) {
  if (f_per_atom == 0.0 || !std::isfinite(f_per_atom)) throw DomainError("atoms_needed: force per atom must be nonzero");
  if (!(f_required > 0.0)) throw DomainError("atoms_needed: required force must be > 0");
  AtomCount out;
  out.count = round_count(f_required / std::abs(f_per_atom), rounding);
  out.direction = f_per_atom > 0.0 ? ForceDirection::repulsive : ForceDirection::attractive;
  return out;
}

}  // namespace gcp
