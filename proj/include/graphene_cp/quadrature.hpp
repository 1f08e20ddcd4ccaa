#pragma once

// Adaptive Gauss-Kronrod quadrature for smooth integrands on finite and
// semi-infinite domains, plus a convergence-controlled series summation used
// for Matsubara sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "graphene_cp/errors.hpp"

namespace gcp::quad {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 2000;
  /// Characteristic decay length of the integrand, in units of the
  /// integration variable. Only used by the semi-infinite mapping.
  double decay_scale = 1.0;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      throw ConfigurationError("quadrature: rel_tol must lie in (0, 1)");
    if (!(abs_tol >= 0.0)) throw ConfigurationError("quadrature: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw ConfigurationError("quadrature: max_subdivisions must be >= 1");
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
      throw ConfigurationError("quadrature: decay_scale must be finite and > 0");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600725566000, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
double checked_eval(const F& f, double x) {
  const double y = f(x);
  if (std::isnan(y)) {
    std::ostringstream os;
    os << "quadrature: integrand returned NaN at x = " << x;
    throw ConvergenceError(os.str());
  }
  return y;
}

template <class F>
Panel gk21(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_eval(f, center);
  double resk = fc * wgk[10];
  double resabs = std::abs(resk);
  double resg = 0.0;
  std::array<double, 10> f1{}, f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * xgk[j];
    f1[j] = checked_eval(f, center - dx);
    f2[j] = checked_eval(f, center + dx);
    resk += wgk[j] * (f1[j] + f2[j]);
    resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += wg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = wgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j)
    resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double ahalf = std::abs(half);
  resk *= half;
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace detail

/// Adaptive integration of f over [a, b]: the panel with the largest error
/// estimate is bisected until the summed estimate meets the tolerance.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk21(f, a, b));
  out.evaluations = 21;
  double value = panels.top().value;
  double error = panels.top().error;

  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
  while (error > target() && out.subdivisions + 1 < cfg.max_subdivisions) {
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Panel too narrow to split further in floating point.
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    panels.pop();
    const detail::Panel left = detail::gk21(f, worst.a, mid);
    const detail::Panel right = detail::gk21(f, mid, worst.b);
    out.evaluations += 42;
    ++out.subdivisions;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum from the panels to shed accumulated rounding in the running totals.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error_estimate = error;
  out.converged = error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  return out;
}

/// Integral of f over [lower, inf) using x = lower + s u / (1 - u) with
/// s = cfg.decay_scale, followed by adaptive refinement on u in [0, 1).
template <class F>
QuadratureResult integrate_semi_infinite(const F& f, const QuadratureConfig& cfg, double lower = 0.0) {
  cfg.validate();
  const double s = cfg.decay_scale;
  auto mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    if (one_minus <= 0.0) return 0.0;
    const double x = lower + s * u / one_minus;
    if (!std::isfinite(x)) return 0.0;
    const double y = f(x);
    if (y == 0.0) return 0.0;
    return y * s / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

struct SeriesOptions {
  /// Number of consecutive negligible terms that ends the explicit sum.
  int consecutive = 3;
  std::size_t max_terms = 100000;
  /// Weight the j = 0 term by 1/2.
  bool half_weight_first = true;
  /// Estimate the remainder by integrating the term function over
  /// [J - 1/2, inf) (midpoint Euler-Maclaurin) once the explicit sum stops.
  bool tail_integral = false;
  /// With tail_integral, stop the explicit sum at this index even when not
  /// yet converged and hand the rest to the integral. 0 disables.
  std::size_t tail_switch = 0;
  /// Quadrature for the tail; decay_scale is in index units.
  QuadratureConfig tail_quadrature{};
};

struct SeriesResult {
  double value = 0.0;
  double tail = 0.0;
  std::size_t terms = 0;
  bool switched_to_integral = false;
};

/// Sum_j w_j term(j), w_0 = 1/2 when requested. The explicit sum stops once
/// `consecutive` successive terms each contribute less than rel_tol of the
/// running sum. The term callable receives the index as a double so that a
/// continuous extension can be integrated for the remainder.
template <class Term>
SeriesResult sum_until_converged(const Term& term, double rel_tol, const SeriesOptions& opt = {}) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ConfigurationError("series: rel_tol must lie in (0, 1)");
  if (opt.consecutive < 1) throw ConfigurationError("series: consecutive must be >= 1");
  SeriesResult out;
  double sum = 0.0;
  int small = 0;
  std::size_t j = 0;
  for (;; ++j) {
    if (opt.tail_integral && opt.tail_switch > 0 && j == opt.tail_switch) {
      out.switched_to_integral = true;
      break;
    }
    if (j == opt.max_terms) {
      std::ostringstream os;
      os << "series: no convergence within the cap of " << opt.max_terms << " terms (partial sum " << sum
         << ")";
      throw ConvergenceError(os.str());
    }
    double t = term(static_cast<double>(j));
    if (std::isnan(t)) throw ConvergenceError("series: term " + std::to_string(j) + " is NaN");
    if (j == 0 && opt.half_weight_first) t *= 0.5;
    sum += t;
    small = (std::abs(t) <= rel_tol * std::abs(sum)) ? small + 1 : 0;
    if (small >= opt.consecutive) {
      ++j;
      break;
    }
  }
  out.terms = j;
  if (opt.tail_integral && j > 0) {
    const double start = static_cast<double>(j) - 0.5;
    auto cfg = opt.tail_quadrature;
    const QuadratureResult r = integrate_semi_infinite(term, cfg, start);
    if (!r.converged) throw ConvergenceError("series: tail integral did not converge");
    // First Euler-Maclaurin correction for the midpoint rule:
    // sum_{j>=J} f(j) = int_{J-1/2}^inf f + f'(J-1/2)/24 + ...
    const double slope = term(start + 0.5) - term(start - 0.5);
    out.tail = r.value + slope / 24.0;
  }
  out.value = sum + out.tail;
  return out;
}

}  // namespace gcp::quad
