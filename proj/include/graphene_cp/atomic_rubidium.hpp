#pragma once

// Rubidium-87 atomic structure: quantum-defect energies, Coulomb-approximation
// radial matrix elements, transition tables and the scalar dynamic
// polarizability on the imaginary frequency axis.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphene_cp/constants.hpp"
#include "graphene_cp/errors.hpp"

#ifndef GCP_DATA_DIR
#define GCP_DATA_DIR "data"
#endif

namespace gcp {

inline constexpr const char* rb87_species = "87Rb";

/// Quantum numbers (n, l, j) of a single-electron alkali state; j is stored
/// doubled so half-integers stay exact.
struct StateLabel {
  int n = 0;
  int l = 0;
  int two_j = 1;

  double j() const { return 0.5 * two_j; }
  friend bool operator==(const StateLabel&, const StateLabel&) = default;
  friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

inline char series_letter(int l) {
  static constexpr char letters[] = "SPDFGHIK";
  return (l >= 0 && l < 8) ? letters[l] : '?';
}

inline std::string to_string(const StateLabel& s) {
  return std::to_string(s.n) + series_letter(s.l) + std::to_string(s.two_j) + "/2";
}

/// Parses labels such as "32S1/2" or "5P3/2".
inline StateLabel parse_state_label(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*([A-Za-z])\s*(\d+)/2\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw DomainError("malformed state label '" + text + "' (expected e.g. 32S1/2)");
  StateLabel s;
  s.n = std::stoi(m[1]);
  s.two_j = std::stoi(m[3]);
  switch (std::toupper(static_cast<unsigned char>(m[2].str()[0]))) {
    case 'S': s.l = 0; break;
    case 'P': s.l = 1; break;
    case 'D': s.l = 2; break;
    default: throw UnsupportedError("unknown series '" + m[2].str() + "' in state label '" + text + "'");
  }
  if (s.l >= s.n) throw DomainError("state label '" + text + "': l must be < n");
  if (s.two_j != 2 * s.l + 1 && s.two_j != 2 * s.l - 1)
    throw DomainError("state label '" + text + "': j must be l +/- 1/2");
  return s;
}

struct AtomicState {
  StateLabel label;
  double n_star = 0.0;  // effective principal quantum number n - delta
  double energy = 0.0;  // J, below the ionization limit

  std::string species() const { return rb87_species; }
  std::string name() const { return to_string(label); }
};

//
// Data files
//

namespace detail {

inline std::string data_error(const std::string& file, int line, const std::string& what) {
  std::ostringstream os;
  os << file << ":" << line << ": " << what;
  return os.str();
}

inline int parse_two_j(const std::string& token) {
  static const std::regex half(R"(^(\d+)/2$)");
  std::smatch m;
  if (!std::regex_match(token, m, half)) throw DomainError("bad j '" + token + "'");
  return std::stoi(m[1]);
}

// Reads non-comment lines, checking for the "# format-version: 1" header.
inline std::vector<std::pair<int, std::string>> read_versioned_rows(std::istream& in, const std::string& name) {
  std::vector<std::pair<int, std::string>> rows;
  std::string line;
  int lineno = 0;
  bool versioned = false;
  static const std::regex version(R"(^#\s*format-version:\s*(\S+)\s*$)");
  while (std::getline(in, line)) {
    ++lineno;
    std::smatch m;
    if (std::regex_match(line, m, version)) {
      if (m[1] != "1") throw DataFileError(data_error(name, lineno, "unsupported format-version " + m[1].str()));
      versioned = true;
      continue;
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.emplace_back(lineno, line);
  }
  if (!versioned) throw DataFileError(name + ": missing '# format-version: 1' header");
  return rows;
}

}  // namespace detail

/// Rydberg-Ritz quantum defects per (l, j) series.
class QuantumDefectTable {
 public:
  struct Coefficients {
    double delta0 = 0.0;
    double delta2 = 0.0;
  };

  void set(int l, int two_j, Coefficients c) { series_[{l, two_j}] = c; }

  bool contains(int l, int two_j) const { return series_.count({l, two_j}) != 0; }

  const Coefficients& coefficients(int l, int two_j) const {
    const auto it = series_.find({l, two_j});
    if (it == series_.end()) {
      std::ostringstream os;
      os << "no quantum-defect data for l = " << l << ", j = " << two_j << "/2";
      throw UnsupportedError(os.str());
    }
    return it->second;
  }

  /// delta = delta0 + delta2 / (n - delta0)^2
  double defect(int l, int two_j, int n) const {
    const Coefficients& c = coefficients(l, two_j);
    const double x = n - c.delta0;
    return c.delta0 + c.delta2 / (x * x);
  }

  static QuantumDefectTable parse(std::istream& in, const std::string& name = "<defects>") {
    QuantumDefectTable t;
    for (const auto& [lineno, text] : detail::read_versioned_rows(in, name)) {
      std::istringstream row(text);
      int l = -1;
      std::string j;
      Coefficients c;
      std::string extra;
      if (!(row >> l >> j >> c.delta0 >> c.delta2) || (row >> extra))
        throw DataFileError(detail::data_error(name, lineno, "expected 'l j delta0 delta2'"));
      int two_j = 0;
      try {
        two_j = detail::parse_two_j(j);
      } catch (const Error& e) {
        throw DataFileError(detail::data_error(name, lineno, e.what()));
      }
      t.set(l, two_j, c);
    }
    if (t.series_.empty()) throw DataFileError(name + ": no quantum-defect rows");
    return t;
  }

  static QuantumDefectTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataFileError("cannot open quantum-defect file " + path.string());
    return parse(in, path.string());
  }

 private:
  std::map<std::pair<int, int>, Coefficients> series_;
};

/// One row of the low-lying line-data file.
struct LineRecord {
  StateLabel lower;
  StateLabel upper;
  double wavelength_nm = 0.0;
  double reduced_dipole_au = 0.0;  // <lower||er||upper>, e a_B, symmetric convention
};

inline std::vector<LineRecord> parse_line_data(std::istream& in, const std::string& name = "<lines>") {
  std::vector<LineRecord> out;
  for (const auto& [lineno, text] : detail::read_versioned_rows(in, name)) {
    std::istringstream row(text);
    std::string lower, upper, extra;
    LineRecord rec;
    if (!(row >> lower >> upper >> rec.wavelength_nm >> rec.reduced_dipole_au) || (row >> extra))
      throw DataFileError(detail::data_error(name, lineno, "expected 'lower upper wavelength_nm reduced_dipole_ea0'"));
    try {
      rec.lower = parse_state_label(lower);
      rec.upper = parse_state_label(upper);
    } catch (const Error& e) {
      throw DataFileError(detail::data_error(name, lineno, e.what()));
    }
    if (!(rec.wavelength_nm > 0.0)) throw DataFileError(detail::data_error(name, lineno, "wavelength must be > 0"));
    if (!(rec.reduced_dipole_au >= 0.0))
      throw DataFileError(detail::data_error(name, lineno, "reduced dipole must be >= 0"));
    if (std::abs(rec.lower.l - rec.upper.l) != 1)
      throw DataFileError(detail::data_error(name, lineno, "not an electric-dipole transition"));
    out.push_back(rec);
  }
  if (out.empty()) throw DataFileError(name + ": no line rows");
  return out;
}

inline std::vector<LineRecord> load_line_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataFileError("cannot open line-data file " + path.string());
  return parse_line_data(in, path.string());
}

/// Line-data path: $GRAPHENE_CP_DATA if set, otherwise the shipped file.
inline std::filesystem::path default_line_data_path() {
  if (const char* env = std::getenv("GRAPHENE_CP_DATA"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(GCP_DATA_DIR) / "rb87_lines.dat";
}

/// Quantum-defect path: $GRAPHENE_CP_DEFECTS if set, otherwise the shipped file.
inline std::filesystem::path default_defect_path() {
  if (const char* env = std::getenv("GRAPHENE_CP_DEFECTS"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(GCP_DATA_DIR) / "rb87_quantum_defects.dat";
}

//
// Radial wavefunctions in the Coulomb approximation
//

struct RadialGridOptions {
  double step = 0.002;       // in ln(r)
  double r_inner = 1.0;      // a_B, inner cut of the inward integration
  double core_radius = 10.0; // a_B, region whose norm share is checked
  double max_core_fraction = 1e-2;
};

namespace detail {

// Inward Numerov integration of y'' = [(l+1/2)^2 - 2r + r^2/n*^2] y on t = ln r,
// where u(r) = sqrt(r) y(t) is the reduced radial function (atomic units).
inline std::vector<double> numerov_inward(double n_star, int l, const std::vector<double>& r, double h) {
  const std::size_t count = r.size();
  std::vector<double> g(count), y(count, 0.0);
  const double lh = (l + 0.5) * (l + 0.5);
  for (std::size_t i = 0; i < count; ++i) g[i] = lh - 2.0 * r[i] + r[i] * r[i] / (n_star * n_star);
  const double h12 = h * h / 12.0;
  y[0] = 1e-30;
  y[1] = y[0] * std::exp(h * std::sqrt(std::max(g[0], 0.0)));
  for (std::size_t i = 1; i + 1 < count; ++i) {
    y[i + 1] = (2.0 * y[i] * (1.0 + 5.0 * h12 * g[i]) - y[i - 1] * (1.0 - h12 * g[i - 1])) / (1.0 - h12 * g[i + 1]);
  }
  return y;
}

struct RadialPair {
  std::vector<double> r;
  std::vector<double> ya, yb;
  double step;
};

inline void normalize_and_check(std::vector<double>& y, const std::vector<double>& r, double h,
                                const RadialGridOptions& opt, double n_star, int l) {
  double norm = 0.0;
  double core = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = y[i] * y[i] * r[i] * r[i];
    norm += w;
    if (r[i] < opt.core_radius) core += w;
  }
  if (!std::isfinite(norm) || !(norm > 0.0)) {
    std::ostringstream os;
    os << "radial wavefunction n* = " << n_star << ", l = " << l << " has non-finite norm";
    throw ConvergenceError(os.str());
  }
  if (core / norm > opt.max_core_fraction) {
    std::ostringstream os;
    os << "radial wavefunction n* = " << n_star << ", l = " << l << " diverges at the core: "
       << core / norm << " of the norm lies inside r < " << opt.core_radius << " a_B";
    throw ConvergenceError(os.str());
  }
  const double scale = 1.0 / std::sqrt(norm * h);
  for (double& v : y) v *= scale;
}

inline RadialPair radial_pair(double n_star_a, int l_a, double n_star_b, int l_b, const RadialGridOptions& opt) {
  const double n_max = std::max(n_star_a, n_star_b);
  const double r_outer = 2.0 * n_max * (n_max + 15.0);
  const double t_outer = std::log(r_outer);
  const double t_inner = std::log(opt.r_inner);
  const auto count = static_cast<std::size_t>((t_outer - t_inner) / opt.step) + 1;
  RadialPair p;
  p.step = opt.step;
  p.r.resize(count);
  for (std::size_t i = 0; i < count; ++i) p.r[i] = std::exp(t_outer - opt.step * static_cast<double>(i));
  p.ya = numerov_inward(n_star_a, l_a, p.r, opt.step);
  p.yb = numerov_inward(n_star_b, l_b, p.r, opt.step);
  normalize_and_check(p.ya, p.r, opt.step, opt, n_star_a, l_a);
  normalize_and_check(p.yb, p.r, opt.step, opt, n_star_b, l_b);
  return p;
}

}  // namespace detail

//
// Transitions
//

struct Transition {
  AtomicState lower;
  AtomicState upper;
  double omega = 0.0;           // rad/s, > 0
  double reduced_dipole = 0.0;  // C m, <lower||d||upper> (symmetric convention)
};

/// Signed coupling of the center state |n> to a partner |k>.
struct Coupling {
  double omega_kn = 0.0;   // (E_k - E_n)/hbar; negative for downward partners
  double dipole_sq = 0.0;  // |<n||d||k>|^2, C^2 m^2
};

struct TransitionTable {
  AtomicState center;
  std::vector<Transition> transitions;
  int truncation_window = 0;

  /// Couplings as seen from the center state.
  std::vector<Coupling> couplings() const {
    std::vector<Coupling> out;
    out.reserve(transitions.size());
    for (const Transition& t : transitions) {
      const bool center_is_lower = t.lower.label == center.label;
      out.push_back({center_is_lower ? t.omega : -t.omega, t.reduced_dipole * t.reduced_dipole});
    }
    return out;
  }

  double multiplicity() const { return center.label.two_j + 1.0; }

  /// |omega| of the transition with the largest static weight |d|^2/|omega|.
  double dominant_omega() const {
    double best = 0.0, omega = 0.0;
    for (const Coupling& c : couplings()) {
      const double w = c.dipole_sq / std::abs(c.omega_kn);
      if (w > best) {
        best = w;
        omega = std::abs(c.omega_kn);
      }
    }
    return omega;
  }
};

/// Scalar dynamic polarizability at imaginary frequency i xi (C m^2/V):
/// 2 / (3 hbar (2j+1)) sum_k omega_kn |<n||d||k>|^2 / (omega_kn^2 + xi^2).
/// Downward partners carry negative omega_kn.
inline double polarizability_imag_freq(const std::vector<Coupling>& couplings, double multiplicity, double xi) {
  if (!(xi >= 0.0)) throw DomainError("polarizability: xi must be >= 0");
  double sum = 0.0;
  for (const Coupling& c : couplings) sum += c.omega_kn * c.dipole_sq / (c.omega_kn * c.omega_kn + xi * xi);
  return 2.0 * sum / (3.0 * codata.hbar * multiplicity);
}

inline double polarizability_imag_freq(const TransitionTable& t, double xi) {
  return polarizability_imag_freq(t.couplings(), t.multiplicity(), xi);
}

/// Squared angular reduction factor relating |<l j||r||l' j'>|^2 to the radial
/// integral squared, for the S1/2 -> P_j' series: (2j'+1)/3.
inline double angular_factor_sq(const StateLabel& from, const StateLabel& to) {
  if (from.l == 0 && from.two_j == 1 && to.l == 1) return (to.two_j + 1.0) / 3.0;
  if (to.l == 0 && to.two_j == 1 && from.l == 1) return (from.two_j + 1.0) / 3.0;
  throw UnsupportedError("angular factor only implemented for S1/2 <-> P transitions");
}

/// Atomic-structure data for 87Rb.
class Rubidium {
 public:
  Rubidium(QuantumDefectTable defects, std::vector<LineRecord> lines)
      : defects_(std::move(defects)), lines_(std::move(lines)) {}

  /// Loads the shipped (or environment-overridden) data files.
  static Rubidium load_default() {
    return Rubidium(QuantumDefectTable::load(default_defect_path()), load_line_data(default_line_data_path()));
  }

  const QuantumDefectTable& defects() const { return defects_; }
  const std::vector<LineRecord>& lines() const { return lines_; }

  double quantum_defect(int l, int two_j, int n) const { return defects_.defect(l, two_j, n); }

  AtomicState state(const StateLabel& label) const {
    if (label.n < 5) throw UnsupportedError("states below n = 5 are core states for Rb");
    if (label.l < 0 || label.l >= label.n) throw DomainError("state: need 0 <= l < n");
    AtomicState s;
    s.label = label;
    s.n_star = label.n - defects_.defect(label.l, label.two_j, label.n);
    if (!(s.n_star > 0.0)) throw DomainError("state: effective quantum number must be positive");
    s.energy = state_energy(s.n_star);
    return s;
  }

  AtomicState state(const std::string& label) const { return state(parse_state_label(label)); }

  /// -h c Ry_Rb / n*^2
  static double state_energy(double n_star) { return -codata.h * codata.c * codata.Ry_Rb / (n_star * n_star); }

  static double state_energy(const AtomicState& s) { return state_energy(s.n_star); }

  /// Radial integral <a|r|b> in units of a_B, positive by convention.
  double radial_matrix_element(const AtomicState& a, const AtomicState& b, const RadialGridOptions& opt = {}) const {
    if (std::abs(a.label.l - b.label.l) != 1)
      throw DomainError("radial matrix element: selection rule |l - l'| = 1 violated for " + a.name() + " - " +
                        b.name());
    if (a.label.n < 10 || b.label.n < 10)
      throw UnsupportedError("radial matrix element: Coulomb approximation needs n >= 10 (" + a.name() + ", " +
                             b.name() + "); use line data for low-lying states");
    const detail::RadialPair p = detail::radial_pair(a.n_star, a.label.l, b.n_star, b.label.l, opt);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.r.size(); ++i) sum += p.ya[i] * p.yb[i] * p.r[i] * p.r[i] * p.r[i];
    return std::abs(sum * p.step);
  }

  /// Transition table around an S1/2 center state. 5S1/2 uses the line-data
  /// file; Rydberg nS1/2 (n >= 10) couples to nP1/2 and nP3/2 with
  /// n' in [n - window, n + window - 1], i.e. `window` P levels on each side.
  TransitionTable build_transition_table(const AtomicState& center, int window) const {
    const StateLabel& c = center.label;
    if (c.l != 0 || c.two_j != 1) throw UnsupportedError("transition table: only nS1/2 center states are supported");
    TransitionTable table;
    table.center = center;
    table.truncation_window = window;
    if (window <= 0) throw ConfigurationError("transition table: window must be >= 1 (empty table)");

    if (c.n < 10) {
      for (const LineRecord& rec : lines_) {
        if (!(rec.lower == c) && !(rec.upper == c)) continue;
        Transition t;
        t.lower = state(rec.lower);
        t.upper = state(rec.upper);
        t.omega = wavelength_to_omega(rec.wavelength_nm * 1e-9);
        t.reduced_dipole = au_to_si_dipole(rec.reduced_dipole_au);
        table.transitions.push_back(t);
      }
    } else {
      for (int np = c.n - window; np <= c.n + window - 1; ++np) {
        if (np < 10) continue;
        for (int two_j : {1, 3}) {
          const AtomicState partner = state(StateLabel{np, 1, two_j});
          const double radial = radial_matrix_element(center, partner);
          Transition t;
          const bool up = partner.energy > center.energy;
          t.lower = up ? center : partner;
          t.upper = up ? partner : center;
          t.omega = std::abs(partner.energy - center.energy) / codata.hbar;
          t.reduced_dipole = au_to_si_dipole(radial * std::sqrt(angular_factor_sq(c, partner.label)));
          table.transitions.push_back(t);
        }
      }
    }
    if (table.transitions.empty())
      throw ConfigurationError("transition table for " + center.name() + " is empty");
    return table;
  }

 private:
  QuantumDefectTable defects_;
  std::vector<LineRecord> lines_;
};

}  // namespace gcp
