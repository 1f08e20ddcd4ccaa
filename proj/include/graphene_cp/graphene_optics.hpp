#pragma once

// Reflection coefficients of a free-standing graphene sheet in the
// (2+1)-dimensional Dirac model with vanishing mass gap and chemical potential.

#include <cmath>
#include <complex>

#include "graphene_cp/constants.hpp"
#include "graphene_cp/errors.hpp"

namespace gcp {

struct GrapheneModel {
  double v_tilde = paper_v_tilde;  // v_F / c
  double alpha_fs = codata.alpha_fs;
  double mass_gap_ev = 0.0;
  double chem_potential_ev = 0.0;

  /// Model with the rounded constants alpha = 1/137, v_F = c/300.
  static GrapheneModel paper_rounded() { return {paper_v_tilde, paper_alpha_fs, 0.0, 0.0}; }

  void validate() const {
    if (!(v_tilde > 0.0 && v_tilde < 1.0)) throw DomainError("graphene: v_tilde must lie in (0, 1)");
    if (!(alpha_fs >= 0.0)) throw DomainError("graphene: alpha_fs must be >= 0");
    if (mass_gap_ev != 0.0 || chem_potential_ev != 0.0)
      throw UnsupportedError("graphene: only the gapless, undoped Dirac cone (m = mu = 0) is supported");
  }

  /// Short-distance limit of R_TM, pi alpha / (pi alpha + 2 v).
  double r_tm_near_field() const { return pi * alpha_fs / (pi * alpha_fs + 2.0 * v_tilde); }
  /// Short-distance limit of R_TE, -pi alpha v / (pi alpha v + 2).
  double r_te_near_field() const {
    return -pi * alpha_fs * v_tilde / (pi * alpha_fs * v_tilde + 2.0);
  }
};

/// Upper end of the linear quasiparticle dispersion (2 eV), as angular frequency.
inline constexpr double dirac_validity_omega = ev_to_omega(2.0);

inline bool within_dirac_validity(double omega) { return std::abs(omega) <= dirac_validity_omega; }

namespace detail {
inline void check_imag_args(double xi, double k_par) {
  if (!(xi >= 0.0) || !(k_par >= 0.0)) throw DomainError("graphene: xi and k_par must be >= 0");
  if (xi == 0.0 && k_par == 0.0)
    throw DomainError("graphene: reflection coefficient is indeterminate at xi = k_par = 0");
}
}  // namespace detail

/// TM reflection coefficient at imaginary frequency i xi and in-plane wave number k_par.
inline double r_tm_imag(const GrapheneModel& g, double xi, double k_par) {
  detail::check_imag_args(xi, k_par);
  const double k0 = xi / codata.c;
  const double full = std::hypot(k0, k_par);
  const double dirac = std::hypot(k0, g.v_tilde * k_par);
  const double num = 4.0 * pi * g.alpha_fs * full;
  return num / (num + 8.0 * dirac);
}

/// TE reflection coefficient at imaginary frequency i xi and in-plane wave number k_par.
inline double r_te_imag(const GrapheneModel& g, double xi, double k_par) {
  detail::check_imag_args(xi, k_par);
  const double k0 = xi / codata.c;
  const double full = std::hypot(k0, k_par);
  const double dirac = std::hypot(k0, g.v_tilde * k_par);
  const double num = 4.0 * pi * g.alpha_fs * dirac;
  return -num / (num + 8.0 * full);
}

//
// Real-frequency evanescent branch, parametrized by the decay constant kappa
// (k_par^2 = kappa^2 + omega^2/c^2). Obtained from the imaginary-axis form by
// xi -> -i omega; the Dirac root sqrt(v^2 kappa^2 - (1 - v^2) omega^2/c^2)
// turns imaginary for kappa below ~omega/(v c) and is continued with the
// retarded prescription (argument - i0).
//
namespace detail {
inline void check_evanescent_args(double omega, double kappa) {
  if (!(omega > 0.0) || !(kappa > 0.0)) throw DomainError("graphene: evanescent branch needs omega > 0 and kappa > 0");
}

inline std::complex<double> dirac_root_evanescent(const GrapheneModel& g, double omega, double kappa) {
  const double k0 = omega / codata.c;
  const double v2 = g.v_tilde * g.v_tilde;
  const double arg = v2 * kappa * kappa - (1.0 - v2) * k0 * k0;
  if (arg >= 0.0) return {std::sqrt(arg), 0.0};
  return {0.0, -std::sqrt(-arg)};
}
}  // namespace detail

inline std::complex<double> r_tm_evanescent_complex(const GrapheneModel& g, double omega, double kappa) {
  detail::check_evanescent_args(omega, kappa);
  const std::complex<double> dirac = detail::dirac_root_evanescent(g, omega, kappa);
  const double num = 4.0 * pi * g.alpha_fs * kappa;
  return num / (num + 8.0 * dirac);
}

inline std::complex<double> r_te_evanescent_complex(const GrapheneModel& g, double omega, double kappa) {
  detail::check_evanescent_args(omega, kappa);
  const std::complex<double> dirac = detail::dirac_root_evanescent(g, omega, kappa);
  const std::complex<double> num = 4.0 * pi * g.alpha_fs * dirac;
  return -num / (num + 8.0 * kappa);
}

inline double r_tm_evanescent(const GrapheneModel& g, double omega, double kappa) {
  return r_tm_evanescent_complex(g, omega, kappa).real();
}

inline double r_te_evanescent(const GrapheneModel& g, double omega, double kappa) {
  return r_te_evanescent_complex(g, omega, kappa).real();
}

}  // namespace gcp
