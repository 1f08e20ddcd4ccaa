#include <gtest/gtest.h>

#include <cmath>

#include "graphene_cp/scenarios.hpp"

using namespace gcp;
using namespace gcp::scenarios;

namespace {

const Rubidium& rb() {
  static const Rubidium r = Rubidium::load_default();
  return r;
}

double f_required() { return force_for_amplitude(MembraneSpec::paper_cantilever(), 1e-9); }

}  // namespace

TEST(MinDistance, TableIIValues) {
  for (const auto& e : paper_table2()) EXPECT_NEAR(min_distance(e.n) * 1e9, e.z_min_nm, 1.0) << e.n;
  EXPECT_NEAR(min_distance(60) / min_distance(30), 4.0, 1e-14);
  EXPECT_THROW(min_distance(4), DomainError);
}

TEST(ScalingLaw, Prefactor) {
  EXPECT_NEAR(scaling_law_coefficient(1.597e-14, ScalingReference::paper()) / 3.6e-6, 1.0, 0.02);
}

TEST(ScalingLaw, TableIICounts) {
  const auto ref = ScalingReference::paper();
  for (const auto& e : paper_table2()) {
    EXPECT_LE(std::abs(scaling_law_atoms(e.n, f_required(), ref).count - e.atoms), 1) << e.n;
  }
  EXPECT_EQ(scaling_law_atoms(43, f_required(), ref).count, 13);
  EXPECT_EQ(scaling_law_atoms(43, f_required(), ref, Rounding::nearest).count, 12);
  EXPECT_EQ(scaling_law_atoms(30, f_required(), ref).count, 3);
  EXPECT_EQ(scaling_law_atoms(36, f_required(), ref).count, 7);
  EXPECT_EQ(scaling_law_atoms(36, f_required(), ref, Rounding::nearest).count, 6);
}

TEST(ScalingLaw, BadReference) {
  ScalingReference ref;
  ref.force = 0.0;
  EXPECT_THROW(scaling_law_force(30, ref), DomainError);
  ref.force = -1e-16;
  EXPECT_THROW(scaling_law_atoms(30, 1e-14, ref), DomainError);
}

TEST(PaperTables, ReferenceRows) {
  const auto& t1 = paper_table1();
  EXPECT_EQ(t1.size(), 16u);
  EXPECT_DOUBLE_EQ(t1[0].force, 2.29e-16);
  EXPECT_EQ(t1[0].atoms, 70);
  EXPECT_DOUBLE_EQ(t1[6].force, 7.47e-16);
}

TEST(Table2, ScalingRowsReportBothConventions) {
  ScenarioConfig cfg;
  const ScenarioReport rep = reproduce_table2(rb(), cfg);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_LT(rep.rows[i - 1].state, rep.rows[i].state);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.source, RowSource::scaling);
    ASSERT_TRUE(r.atoms && r.paper_atoms);
    if (r.state.n == 36) {
      EXPECT_EQ(*r.atoms, 7);
      ASSERT_TRUE(r.atoms_alternate);
      EXPECT_EQ(*r.atoms_alternate, 6);
    }
    if (r.state.n == 30) {
      EXPECT_FALSE(r.atoms_alternate);
    }
  }
}

TEST(Table2, FullComputationRows) {
  ScenarioConfig cfg;
  cfg.table2_full_cp = true;
  const ScenarioReport rep = reproduce_table2(rb(), cfg);
  ASSERT_EQ(rep.rows.size(), 8u);
  int computed = 0;
  for (const auto& r : rep.rows) {
    if (r.source != RowSource::cp) continue;
    ++computed;
    ASSERT_TRUE(r.force && r.u_total);
    EXPECT_GT(*r.force, 0.0);
    EXPECT_NEAR(r.distance, min_distance(r.state.n), 1e-15);
  }
  EXPECT_EQ(computed, 4);
}

TEST(Table1, StructureAndProvenance) {
  ScenarioConfig cfg;
  const ScenarioReport rep = reproduce_table1(rb(), cfg);
  ASSERT_EQ(rep.rows.size(), 16u);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    const bool ordered = a.state < b.state || (a.state == b.state && (a.distance < b.distance ||
                                                                       (a.distance == b.distance && a.temperature < b.temperature)));
    EXPECT_TRUE(ordered) << i;
  }
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.source, RowSource::cp);
    ASSERT_TRUE(r.force && r.paper_force && r.atoms && r.paper_atoms);
    EXPECT_EQ(*r.force > 0.0, *r.paper_force > 0.0) << to_string(r.state) << " z=" << r.distance << " T=" << r.temperature;
  }
}

TEST(Table1, DeterministicAcrossThreadCounts) {
  ScenarioConfig one;
  one.threads = 1;
  ScenarioConfig many;
  many.threads = 8;
  const auto a = reproduce_table1(rb(), one);
  const auto b = reproduce_table1(rb(), many);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].state, b.rows[i].state);
    EXPECT_EQ(*a.rows[i].force, *b.rows[i].force);
  }
}

TEST(Point, WarnsInsideMinimalDistance) {
  ScenarioConfig cfg;
  auto t = std::make_shared<const TransitionTable>(rb().build_transition_table(rb().state("32S1/2"), 5));
  const ScenarioRow inside = evaluate_point(t, 100e-9, 0.0, cfg, f_required());
  bool flagged = false;
  for (const auto& w : inside.warnings) flagged |= w.find("z_min") != std::string::npos;
  EXPECT_TRUE(flagged);
  const ScenarioRow outside = evaluate_point(t, 300e-9, 0.0, cfg, f_required());
  EXPECT_TRUE(outside.warnings.empty());
}
