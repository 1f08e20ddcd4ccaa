#pragma once

// Casimir-Polder potential and force of an atom in an energy eigenstate in
// front of a free-standing graphene sheet: nonresonant (imaginary-frequency)
// and resonant (real-photon) parts, at zero temperature or with a Matsubara
// sum and thermal photon occupation.

#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "graphene_cp/atomic_rubidium.hpp"
#include "graphene_cp/constants.hpp"
#include "graphene_cp/errors.hpp"
#include "graphene_cp/graphene_optics.hpp"
#include "graphene_cp/quadrature.hpp"

namespace gcp {

/// How the dyad d_nk (x) d_kn of the resonant term is reduced to a scalar.
enum class ResonantContraction {
  trace,      // |d_nk|^2 with the mu0/(4 pi) prefactor
  isotropic,  // |d_nk|^2 / 3, i.e. mu0/(12 pi)
};

struct CPOptions {
  double outer_rel_tol = 1e-6;
  double inner_rel_tol = 1e-7;
  std::size_t max_subdivisions = 4000;
  ResonantContraction contraction = ResonantContraction::trace;
  /// Explicit Matsubara terms before the remainder is integrated.
  std::size_t matsubara_tail_switch = 64;
  /// Warn when z exceeds this fraction of the thermal wavelength.
  double thermal_guard_fraction = 0.1;
  /// Warn when more than this share of the nonresonant integral comes from
  /// frequencies above the 2 eV validity limit of the Dirac model.
  double dirac_tail_warning = 1e-2;
  /// Relative finite-difference step, and its floor in metres.
  double fd_relative_step = 1e-3;
  double fd_min_step = 1e-11;
};

struct CPQuery {
  std::shared_ptr<const TransitionTable> table;
  GrapheneModel graphene{};
  double z = 0.0;            // m
  double temperature = 0.0;  // K

  void validate() const {
    if (!table) throw ConfigurationError("CP query without transition table");
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("CP query: z_A must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw DomainError("CP query: temperature must be >= 0");
    graphene.validate();
  }

  CPQuery at(double distance) const {
    CPQuery q = *this;
    q.z = distance;
    return q;
  }
};

struct CPDiagnostics {
  std::size_t evaluations = 0;
  double nonres_error_estimate = 0.0;
  std::size_t matsubara_terms = 0;
  double dirac_tail_fraction = 0.0;
};

struct CPResult {
  double u_nonres = 0.0;  // J
  double u_res = 0.0;     // J
  double u_total = 0.0;   // J
  double f_total = 0.0;   // N, negative = attractive (toward the sheet)
  CPDiagnostics diagnostics;
  std::vector<std::string> warnings;
};

namespace detail {

inline quad::QuadratureConfig make_cfg(double rel_tol, double scale, std::size_t max_sub) {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.decay_scale = scale;
  cfg.max_subdivisions = max_sub;
  return cfg;
}

inline void require_converged(const quad::QuadratureResult& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (value " << r.value << ", error estimate " << r.error_estimate
       << ", " << r.subdivisions << " subdivisions, " << r.evaluations << " evaluations)";
    throw ConvergenceError(os.str());
  }
}

// Inner integral of the nonresonant term at imaginary frequency xi:
//   int_{xi/c}^inf dkappa e^{-2 kappa z} [xi^2 (R_TE + R_TM) - 2 c^2 kappa^2 R_TM],
// which is the k_par integral after k_par dk_par / kappa = dkappa. Writing the
// bracket this way removes the 1/xi^2 of the TM term analytically.
inline double nonresonant_inner(const GrapheneModel& g, double xi, double z, const CPOptions& opt,
                                std::size_t* evaluations) {
  const double c = codata.c;
  const double a = xi / c;
  // e^{-2 a z} is pulled out so the quadrature never works near underflow.
  const double damping = std::exp(-2.0 * a * z);
  if (damping == 0.0) return 0.0;
  auto f = [&](double x) {
    const double kappa = a + x;
    const double k_par = std::sqrt(x * (2.0 * a + x));
    if (xi == 0.0 && k_par == 0.0) return 0.0;
    const double rtm = r_tm_imag(g, xi, k_par);
    const double rte = r_te_imag(g, xi, k_par);
    return std::exp(-2.0 * x * z) * (xi * xi * (rte + rtm) - 2.0 * c * c * kappa * kappa * rtm);
  };
  const auto r = quad::integrate_semi_infinite(f, make_cfg(opt.inner_rel_tol, 0.5 / z, opt.max_subdivisions));
  require_converged(r, "nonresonant inner integral");
  if (evaluations) *evaluations += r.evaluations;
  return damping * r.value;
}

// Resonant kappa integral for one transition of angular frequency omega > 0:
//   int_0^inf dkappa e^{-2 kappa z} Re[omega^2 (R_TE + R_TM) + 2 c^2 kappa^2 R_TM].
inline double resonant_kappa_integral(const GrapheneModel& g, double omega, double z, const CPOptions& opt) {
  const double c = codata.c;
  auto f = [&](double kappa) {
    if (kappa <= 0.0) return 0.0;
    const double rtm = r_tm_evanescent(g, omega, kappa);
    const double rte = r_te_evanescent(g, omega, kappa);
    return std::exp(-2.0 * kappa * z) * (omega * omega * (rte + rtm) + 2.0 * c * c * kappa * kappa * rtm);
  };
  const auto r = quad::integrate_semi_infinite(f, make_cfg(opt.inner_rel_tol, 0.5 / z, opt.max_subdivisions));
  require_converged(r, "resonant kappa integral");
  return r.value;
}

inline double resonant_prefactor(ResonantContraction c) {
  return c == ResonantContraction::trace ? codata.mu0 / (4.0 * pi) : codata.mu0 / (12.0 * pi);
}

struct NonresonantPart {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t terms = 0;
};

inline double outer_scale(const TransitionTable& t) {
  const double w = t.dominant_omega();
  return w > 0.0 ? w : 1e15;
}

}  // namespace detail

/// Zero-temperature nonresonant potential (J):
/// (hbar mu0 / 8 pi^2) int dxi xi^2 alpha(i xi) int dk_par (...).
inline double potential_nonresonant_T0(const CPQuery& q, const CPOptions& opt = {},
                                       CPDiagnostics* diag = nullptr) {
  q.validate();
  const auto couplings = q.table->couplings();
  const double mult = q.table->multiplicity();
  std::size_t evals = 0;
  auto outer = [&](double xi) {
    const double alpha = polarizability_imag_freq(couplings, mult, xi);
    if (alpha == 0.0) return 0.0;
    return alpha * detail::nonresonant_inner(q.graphene, xi, q.z, opt, &evals);
  };
  const auto cfg = detail::make_cfg(opt.outer_rel_tol, detail::outer_scale(*q.table), opt.max_subdivisions);
  const auto r = quad::integrate_semi_infinite(outer, cfg);
  detail::require_converged(r, "nonresonant outer integral");
  const double pref = codata.hbar * codata.mu0 / (8.0 * pi * pi);
  if (diag) {
    diag->evaluations += evals + r.evaluations;
    diag->nonres_error_estimate = pref * r.error_estimate;
    // Share of the frequency integral lying above the Dirac-model validity limit.
    const auto tail = quad::integrate_semi_infinite(
        outer, detail::make_cfg(opt.outer_rel_tol, 0.5 * codata.c / q.z, opt.max_subdivisions),
        dirac_validity_omega);
    diag->dirac_tail_fraction = r.value != 0.0 ? std::abs(tail.value / r.value) : 0.0;
  }
  return pref * r.value;
}

/// Finite-temperature nonresonant potential: the frequency integral replaced by
/// 2 kB T sum'_j f(i xi_j), xi_j = j 2 pi kB T / hbar, with the j = 0 term halved.
/// Zero-temperature reflection coefficients are used at every Matsubara frequency.
inline double potential_nonresonant_thermal(const CPQuery& q, const CPOptions& opt = {},
                                            CPDiagnostics* diag = nullptr) {
  q.validate();
  if (q.temperature == 0.0) return potential_nonresonant_T0(q, opt, diag);
  const auto couplings = q.table->couplings();
  const double mult = q.table->multiplicity();
  const double spacing = matsubara_spacing(q.temperature);
  std::size_t evals = 0;
  auto term = [&](double j) {
    const double xi = j * spacing;
    const double alpha = polarizability_imag_freq(couplings, mult, xi);
    if (alpha == 0.0) return 0.0;
    return alpha * detail::nonresonant_inner(q.graphene, xi, q.z, opt, &evals);
  };
  quad::SeriesOptions sopt;
  sopt.tail_integral = true;
  sopt.tail_switch = opt.matsubara_tail_switch;
  const double scale = std::min(detail::outer_scale(*q.table), 0.5 * codata.c / q.z);
  sopt.tail_quadrature = detail::make_cfg(opt.outer_rel_tol, std::max(1.0, scale / spacing), opt.max_subdivisions);
  const auto s = quad::sum_until_converged(term, 0.1 * opt.outer_rel_tol, sopt);
  if (diag) {
    diag->evaluations += evals;
    diag->matsubara_terms = s.terms;
  }
  return codata.mu0 * codata.kB * q.temperature / (4.0 * pi) * s.value;
}

/// Resonant potential (J). At T = 0 only downward transitions contribute; at
/// T > 0 downward transitions carry (nbar + 1) and upward ones -nbar.
inline double potential_resonant(const CPQuery& q, const CPOptions& opt = {}) {
  q.validate();
  const double pref = detail::resonant_prefactor(opt.contraction) / q.table->multiplicity();
  double sum = 0.0;
  for (const Coupling& c : q.table->couplings()) {
    const double omega = std::abs(c.omega_kn);
    const double nbar = bose_occupation(omega, q.temperature);
    const double weight = c.omega_kn < 0.0 ? nbar + 1.0 : -nbar;
    if (weight == 0.0) continue;
    sum += weight * c.dipole_sq * detail::resonant_kappa_integral(q.graphene, omega, q.z, opt);
  }
  return pref * sum;
}

inline double potential_resonant_T0(const CPQuery& q, const CPOptions& opt = {}) {
  CPQuery zero = q;
  zero.temperature = 0.0;
  return potential_resonant(zero, opt);
}

/// Potential terms at (z, T) without the force.
inline CPResult potential_total(const CPQuery& q, const CPOptions& opt = {}) {
  q.validate();
  CPResult out;
  out.u_nonres = q.temperature > 0.0 ? potential_nonresonant_thermal(q, opt, &out.diagnostics)
                                     : potential_nonresonant_T0(q, opt, &out.diagnostics);
  out.u_res = potential_resonant(q, opt);
  out.u_total = out.u_nonres + out.u_res;
  if (q.temperature > 0.0) {
    const double lambda = thermal_wavelength(q.temperature);
    if (q.z >= opt.thermal_guard_fraction * lambda) {
      std::ostringstream os;
      os << "z = " << q.z << " m is not small against the thermal wavelength " << lambda << " m at T = "
         << q.temperature << " K";
      out.warnings.push_back(os.str());
    }
  }
  if (out.diagnostics.dirac_tail_fraction > opt.dirac_tail_warning) {
    std::ostringstream os;
    os << out.diagnostics.dirac_tail_fraction * 100.0
       << "% of the nonresonant frequency integral lies above 2 eV, beyond the linear Dirac dispersion";
    out.warnings.push_back(os.str());
  }
  return out;
}

/// Total potential only, as used by the finite-difference force.
inline double potential_value(const CPQuery& q, const CPOptions& opt = {}) {
  const double nonres = q.temperature > 0.0 ? potential_nonresonant_thermal(q, opt) : potential_nonresonant_T0(q, opt);
  return nonres + potential_resonant(q, opt);
}

/// Central difference of a potential U(z) with one Richardson step:
/// F = -(4 D(h/2) - D(h)) / 3, D(h) = (U(z+h) - U(z-h)) / 2h.
template <class Potential>
double richardson_force(const Potential& u, double z, double h) {
  if (!(h > 0.0) || !(h < z)) throw DomainError("force: finite-difference step must lie in (0, z)");
  const double d1 = (u(z + h) - u(z - h)) / (2.0 * h);
  const double d2 = (u(z + 0.5 * h) - u(z - 0.5 * h)) / h;
  return -(4.0 * d2 - d1) / 3.0;
}

inline double force_step(double z, const CPOptions& opt) { return std::max(opt.fd_relative_step * z, opt.fd_min_step); }

/// F = -dU/dz_A (N); negative = attractive.
inline double force(const CPQuery& q, const CPOptions& opt = {}, double step_multiplier = 1.0) {
  q.validate();
  auto u = [&](double z) { return potential_value(q.at(z), opt); };
  return richardson_force(u, q.z, step_multiplier * force_step(q.z, opt));
}

/// Potential terms, force and warnings at one point.
inline CPResult evaluate(const CPQuery& q, const CPOptions& opt = {}) {
  CPResult out = potential_total(q, opt);
  out.f_total = force(q, opt);
  return out;
}

}  // namespace gcp
