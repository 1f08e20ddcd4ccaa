#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "graphene_cp/atomic_rubidium.hpp"

using namespace gcp;

namespace {

const Rubidium& rb() {
  static const Rubidium r = Rubidium::load_default();
  return r;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(StateLabel, ParseAndPrint) {
  const StateLabel s = parse_state_label("32S1/2");
  EXPECT_EQ(s.n, 32);
  EXPECT_EQ(s.l, 0);
  EXPECT_EQ(s.two_j, 1);
  EXPECT_EQ(to_string(parse_state_label("5P3/2")), "5P3/2");
}

TEST(StateLabel, Rejections) {
  EXPECT_THROW(parse_state_label("32X1/2"), UnsupportedError);
  EXPECT_THROW(parse_state_label("32S"), DomainError);
  EXPECT_THROW(parse_state_label("32S3/2"), DomainError);
  EXPECT_THROW(parse_state_label("1P1/2"), DomainError);
}

TEST(QuantumDefect, RitzValues) {
  EXPECT_NEAR(rb().quantum_defect(0, 1, 32), 3.131, 1e-3);
  const auto& c = rb().defects().coefficients(0, 1);
  EXPECT_NEAR(rb().quantum_defect(0, 1, 100000), c.delta0, 1e-10);
  EXPECT_THROW(rb().quantum_defect(5, 9, 30), UnsupportedError);
}

TEST(Energy, Values) {
  const AtomicState s32 = rb().state("32S1/2");
  const double expected = -codata.h * codata.c * codata.Ry_Rb / (28.87 * 28.87);
  EXPECT_NEAR(s32.energy / expected, 1.0, 2e-4);
  EXPECT_GT(rb().state("33S1/2").energy, s32.energy);
  EXPECT_NEAR(Rubidium::state_energy(40.0) / Rubidium::state_energy(20.0), 0.25, 1e-15);
}

TEST(Energy, SeriesOrdering) {
  for (int n = 10; n <= 80; ++n) {
    const double s = rb().state(StateLabel{n, 0, 1}).energy;
    const double p1 = rb().state(StateLabel{n, 1, 1}).energy;
    const double p3 = rb().state(StateLabel{n, 1, 3}).energy;
    const double s_next = rb().state(StateLabel{n + 1, 0, 1}).energy;
    EXPECT_LT(s, p1) << n;
    EXPECT_LT(s, p3) << n;
    EXPECT_LT(p1, s_next) << n;
    EXPECT_LT(p3, s_next) << n;
  }
}

TEST(Energy, InvalidStates) {
  EXPECT_THROW(rb().state(StateLabel{4, 0, 1}), UnsupportedError);
  EXPECT_THROW(rb().state(StateLabel{30, 3, 5}), UnsupportedError);
}

// Reference values: u(r) = W_{n*, l+1/2}(2r/n*) integrated over r in [1, 2n*(n*+15)] a_B
// with arbitrary-precision Whittaker functions.
TEST(Radial, MatchesWhittakerOracle) {
  struct Case {
    StateLabel a, b;
    double expected;
  };
  const Case cases[] = {
      {{26, 0, 1}, {26, 1, 1}, 619.0562946495048},  {{26, 0, 1}, {25, 1, 3}, 545.9192057697487},
      {{32, 0, 1}, {32, 1, 3}, 963.9942491172269},  {{32, 0, 1}, {31, 1, 1}, 862.0685686504723},
      {{43, 0, 1}, {43, 1, 1}, 1851.6554096401621}, {{43, 0, 1}, {42, 1, 3}, 1691.697519736199},
  };
  for (const Case& c : cases) {
    const double v = rb().radial_matrix_element(rb().state(c.a), rb().state(c.b));
    EXPECT_NEAR(v / c.expected, 1.0, 1e-6) << to_string(c.a) << " " << to_string(c.b);
  }
}

TEST(Radial, QuasiClassicalMagnitude) {
  const AtomicState s = rb().state("32S1/2");
  for (int two_j : {1, 3}) {
    const double v = rb().radial_matrix_element(s, rb().state(StateLabel{32, 1, two_j}));
    const double ratio = v / (1.5 * s.n_star * s.n_star);
    EXPECT_GT(ratio, 0.7);
    EXPECT_LT(ratio, 1.3);
  }
}

TEST(Radial, SymmetricAndGrowingWithN) {
  const AtomicState a = rb().state("30S1/2"), b = rb().state("30P3/2");
  EXPECT_NEAR(rb().radial_matrix_element(a, b), rb().radial_matrix_element(b, a), 1e-9);
  double prev = 0.0;
  for (int n = 26; n <= 43; ++n) {
    const double v = rb().radial_matrix_element(rb().state(StateLabel{n, 0, 1}), rb().state(StateLabel{n, 1, 1}));
    EXPECT_GT(v, prev) << n;
    prev = v;
  }
}

TEST(Radial, SelectionRuleAndLowStates) {
  EXPECT_THROW(rb().radial_matrix_element(rb().state("32S1/2"), rb().state("32D3/2")), DomainError);
  EXPECT_THROW(rb().radial_matrix_element(rb().state("5S1/2"), rb().state("5P1/2")), UnsupportedError);
}

TEST(Radial, CoreDivergenceIsDiagnosed) {
  RadialGridOptions opt;
  opt.max_core_fraction = 1e-12;
  try {
    rb().radial_matrix_element(rb().state("12S1/2"), rb().state("12P1/2"), opt);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("n* ="), std::string::npos);
  }
}

TEST(TransitionTable, GroundState) {
  const auto t = rb().build_transition_table(rb().state("5S1/2"), 5);
  ASSERT_EQ(t.transitions.size(), 2u);
  for (const auto& tr : t.transitions) {
    EXPECT_EQ(tr.lower.label, t.center.label);
    EXPECT_GT(tr.omega, 0.0);
  }
}

TEST(TransitionTable, RydbergCountAndInvariants) {
  const auto t = rb().build_transition_table(rb().state("32S1/2"), 5);
  ASSERT_EQ(t.transitions.size(), 20u);
  std::set<StateLabel> partners;
  for (const auto& tr : t.transitions) {
    const bool involves_center = tr.lower.label == t.center.label || tr.upper.label == t.center.label;
    EXPECT_TRUE(involves_center);
    EXPECT_GT(tr.omega, 0.0);
    EXPECT_GE(tr.reduced_dipole, 0.0);
    EXPECT_EQ(std::abs(tr.lower.label.l - tr.upper.label.l), 1);
    EXPECT_LE(std::abs(tr.lower.label.two_j - tr.upper.label.two_j), 2);
    EXPECT_NEAR(tr.omega, (tr.upper.energy - tr.lower.energy) / codata.hbar, 1e-9 * tr.omega);
    partners.insert(tr.lower.label == t.center.label ? tr.upper.label : tr.lower.label);
  }
  EXPECT_EQ(partners.size(), 20u);
}

TEST(TransitionTable, Rejections) {
  EXPECT_THROW(rb().build_transition_table(rb().state("32S1/2"), 0), ConfigurationError);
  EXPECT_THROW(rb().build_transition_table(rb().state("32P1/2"), 5), UnsupportedError);
}

TEST(TransitionTable, RydbergFrequenciesBelowOneTerahertz) {
  for (int n = 26; n <= 43; ++n) {
    const auto t = rb().build_transition_table(rb().state(StateLabel{n, 0, 1}), 5);
    for (const auto& tr : t.transitions)
      EXPECT_LT(tr.omega / (2.0 * pi), 1e12) << to_string(tr.lower.label) << " - " << to_string(tr.upper.label);
  }
}

TEST(Polarizability, GroundStateStatic) {
  const auto t = rb().build_transition_table(rb().state("5S1/2"), 5);
  EXPECT_NEAR(polarizability_imag_freq(t, 0.0) / 5.25e-39, 1.0, 0.05);
}

TEST(Polarizability, GroundStatePositiveDecreasing) {
  const auto t = rb().build_transition_table(rb().state("5S1/2"), 5);
  double prev = polarizability_imag_freq(t, 0.0);
  for (double xi = 1e12; xi < 1e18; xi *= 1.5) {
    const double a = polarizability_imag_freq(t, xi);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, prev);
    prev = a;
  }
  EXPECT_LT(polarizability_imag_freq(t, 1e22) / polarizability_imag_freq(t, 0.0), 1e-10);
}

TEST(Polarizability, RydbergStaticScalesAsNStarSeventh) {
  std::vector<double> x, y;
  for (int n = 26; n <= 43; ++n) {
    const AtomicState s = rb().state(StateLabel{n, 0, 1});
    const double a = polarizability_imag_freq(rb().build_transition_table(s, 5), 0.0);
    ASSERT_GT(a, 0.0);
    x.push_back(std::log(s.n_star));
    y.push_back(std::log(a));
  }
  EXPECT_NEAR(fit_slope(x, y), 7.0, 0.5);
}

TEST(Polarizability, WindowConvergence) {
  for (int n = 26; n <= 43; ++n) {
    const AtomicState s = rb().state(StateLabel{n, 0, 1});
    const auto t5 = rb().build_transition_table(s, 5);
    const auto t8 = rb().build_transition_table(s, 8);
    const double w0 = t5.dominant_omega();
    for (int k = 0; k <= 50; ++k) {
      const double xi = 10.0 * w0 * k / 50.0;
      const double a5 = polarizability_imag_freq(t5, xi), a8 = polarizability_imag_freq(t8, xi);
      EXPECT_LT(std::abs(a5 - a8) / std::abs(a8), 0.02) << n << " xi " << xi;
    }
  }
}

TEST(DataFiles, LineDataParses) {
  std::istringstream in("# format-version: 1\n5S1/2 5P1/2 794.978851 4.231\n");
  const auto rows = parse_line_data(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].wavelength_nm, 794.978851);
}

TEST(DataFiles, MalformedRowsCarryLineNumbers) {
  std::istringstream missing("5S1/2 5P1/2 794.978851 4.231\n");
  EXPECT_THROW(parse_line_data(missing), DataFileError);
  std::istringstream bad("# format-version: 1\n# comment\n5S1/2 5P1/2 nope 4.231\n");
  try {
    parse_line_data(bad, "lines.dat");
    FAIL() << "expected DataFileError";
  } catch (const DataFileError& e) {
    EXPECT_NE(std::string(e.what()).find("lines.dat:3"), std::string::npos) << e.what();
  }
  std::istringstream not_dipole("# format-version: 1\n5S1/2 6S1/2 100 1\n");
  EXPECT_THROW(parse_line_data(not_dipole), DataFileError);
  std::istringstream version("# format-version: 2\n");
  EXPECT_THROW(parse_line_data(version), DataFileError);
  std::istringstream defects("# format-version: 1\n0 1/2 3.13\n");
  EXPECT_THROW(QuantumDefectTable::parse(defects), DataFileError);
}

TEST(DataFiles, EnvironmentOverride) {
  const std::string path = ::testing::TempDir() + "gcp_lines_override.dat";
  {
    std::ofstream out(path);
    out << "# format-version: 1\n5S1/2 5P3/2 780.241209 6.0\n";
  }
  ::setenv("GRAPHENE_CP_DATA", path.c_str(), 1);
  const Rubidium r = Rubidium::load_default();
  ::unsetenv("GRAPHENE_CP_DATA");
  ASSERT_EQ(r.lines().size(), 1u);
  EXPECT_DOUBLE_EQ(r.lines()[0].reduced_dipole_au, 6.0);
}
