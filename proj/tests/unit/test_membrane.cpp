#include <gtest/gtest.h>

#include <cmath>

#include "graphene_cp/membrane_mechanics.hpp"
#include "graphene_cp/scenarios.hpp"

using namespace gcp;

namespace {
const MembraneSpec paper = MembraneSpec::paper_cantilever();
}

TEST(Frequency, PaperCantilever) {
  EXPECT_NEAR(fundamental_frequency(paper) / 3.7e5, 1.0, 0.02);
}

TEST(Frequency, TensionlessLimit) {
  MembraneSpec m = paper;
  m.tension = 0.0;
  const double expected = m.clamping * std::sqrt(m.youngs_modulus / m.density) * m.thickness / (m.length * m.length);
  EXPECT_DOUBLE_EQ(fundamental_frequency(m), expected);
  MembraneSpec longer = m;
  longer.length *= 2.0;
  EXPECT_NEAR(fundamental_frequency(longer) / fundamental_frequency(m), 0.25, 1e-14);
}

TEST(Frequency, IncreasingInTension) {
  double prev = 0.0;
  for (double t = 0.0; t < 1e-8; t += 1e-10) {
    MembraneSpec m = paper;
    m.tension = t;
    EXPECT_GT(fundamental_frequency(m), prev);
    prev = fundamental_frequency(m);
  }
}

TEST(Frequency, IncreasingInThickness) {
  double prev = 0.0;
  for (double th = 0.1e-9; th < 5e-9; th *= 1.3) {
    MembraneSpec m = paper;
    m.thickness = th;
    EXPECT_GT(fundamental_frequency(m), prev) << "t = " << th;
    prev = fundamental_frequency(m);
  }
}

TEST(Frequency, IncreasingInThicknessWithoutTension) {
  double prev = 0.0;
  for (double th = 0.1e-9; th < 5e-9; th *= 1.3) {
    MembraneSpec m = paper;
    m.tension = 0.0;
    m.thickness = th;
    EXPECT_GT(fundamental_frequency(m), prev);
    prev = fundamental_frequency(m);
  }
}

TEST(Frequency, DecreasingInLength) {
  double prev = 1e300;
  for (double l = 0.5e-6; l < 50e-6; l *= 1.3) {
    MembraneSpec m = paper;
    m.length = l;
    EXPECT_LT(fundamental_frequency(m), prev);
    prev = fundamental_frequency(m);
  }
}

TEST(Spring, PaperCantilever) {
  EXPECT_NEAR(spring_constant(paper) / 1.6e-5, 1.0, 0.03);
}

TEST(Spring, TensionlessIndependentOfWidth) {
  MembraneSpec m = paper;
  m.tension = 0.0;
  MembraneSpec wide = m;
  wide.width *= 3.0;
  EXPECT_NEAR(spring_constant(wide) / spring_constant(m), 1.0, 1e-12);
}

TEST(Spring, TensionDominatedIndependentOfWidth) {
  MembraneSpec m = paper;
  m.youngs_modulus = 1e-30;
  MembraneSpec wide = m;
  wide.width *= 3.0;
  EXPECT_NEAR(spring_constant(wide) / spring_constant(m), 1.0, 1e-9);
}

TEST(Spring, TensionlessDensityInvariance) {
  MembraneSpec m = paper;
  m.tension = 0.0;
  MembraneSpec dense = m;
  dense.density *= 4.0;
  EXPECT_NEAR(fundamental_frequency(dense) / fundamental_frequency(m), 0.5, 1e-14);
  EXPECT_NEAR(effective_mass(dense) / effective_mass(m), 4.0, 1e-14);
  EXPECT_NEAR(spring_constant(dense) / spring_constant(m), 1.0, 1e-12);
}

TEST(Force, SixteenFemtonewtons) {
  EXPECT_NEAR(force_for_amplitude(paper, 1e-9) / 1.6e-14, 1.0, 0.03);
  EXPECT_NEAR(force_for_amplitude(paper, 2e-9), 2.0 * force_for_amplitude(paper, 1e-9), 1e-28);
  EXPECT_THROW(force_for_amplitude(paper, 0.0), DomainError);
}

TEST(Force, Linearity) {
  for (double a1 : {1e-10, 7e-10, 3e-9})
    for (double a2 : {2e-10, 1e-9}) {
      const double sum = force_for_amplitude(paper, a1) + force_for_amplitude(paper, a2);
      EXPECT_NEAR(force_for_amplitude(paper, a1 + a2) / sum, 1.0, 1e-12);
    }
}

TEST(Spec, Validation) {
  MembraneSpec m = paper;
  m.clamping = 0.5;
  EXPECT_THROW(m.validate(), DomainError);
  m.custom_clamping = true;
  EXPECT_NO_THROW(m.validate());
  m = paper;
  m.thickness = 0.0;
  EXPECT_THROW(m.validate(), DomainError);
  m = paper;
  m.tension = -1.0;
  EXPECT_THROW(m.validate(), DomainError);
  m = paper;
  m.clamping = clamping_doubly_clamped;
  EXPECT_NO_THROW(m.validate());
}

TEST(Atoms, PublishedExamples) {
  const double f_req = 1.597e-14;
  EXPECT_EQ(atoms_needed(f_req, 5.72e-16).count, 28);
  EXPECT_EQ(atoms_needed(f_req, 3.72e-16).count, 43);
  EXPECT_EQ(atoms_needed(f_req, f_req).count, 1);
  EXPECT_THROW(atoms_needed(f_req, 0.0), DomainError);
}

TEST(Atoms, DirectionAndRounding) {
  EXPECT_EQ(atoms_needed(1.0, 0.3).direction, ForceDirection::repulsive);
  EXPECT_EQ(atoms_needed(1.0, -0.3).direction, ForceDirection::attractive);
  EXPECT_EQ(atoms_needed(1.0, -0.3).count, 4);
  EXPECT_EQ(atoms_needed(1.0, 0.3, Rounding::nearest).count, 3);
  EXPECT_EQ(atoms_needed(1.0, 10.0, Rounding::nearest).count, 1);
}

TEST(Atoms, TableIConsistencyLoop) {
  const double f_req = force_for_amplitude(paper, 1e-9);
  for (const auto& e : scenarios::paper_table1())
    EXPECT_EQ(atoms_needed(f_req, e.force).count, e.atoms) << e.n << " T=" << e.temperature;
}

TEST(Atoms, MonotoneInForce) {
  const double f_req = force_for_amplitude(paper, 1e-9);
  long prev = atoms_needed(f_req, 1e-18).count;
  for (double f = 1e-18; f < 1e-13; f *= 1.1) {
    const long n = atoms_needed(f_req, f).count;
    EXPECT_LE(n, prev);
    prev = n;
  }
}
