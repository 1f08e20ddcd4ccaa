#pragma once

// End-to-end drivers: CP force per atom -> atoms needed for a ripple, for the
// published state/distance/temperature grid, plus the minimal-distance rule
// and the n^4/z^4 scaling estimate calibrated on a reference state.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphene_cp/atomic_rubidium.hpp"
#include "graphene_cp/constants.hpp"
#include "graphene_cp/cp_interaction.hpp"
#include "graphene_cp/membrane_mechanics.hpp"
#include "graphene_cp/parallel.hpp"

namespace gcp::scenarios {

/// z_min(n) = sqrt(5) n^2 a_B, with the bare principal quantum number.
inline double min_distance(int n) {
  if (n < 5) throw DomainError("min_distance: n must be >= 5");
  return std::sqrt(5.0) * n * n * codata.a_B;
}

/// Reference point of the n^4/z^4 scaling law.
struct ScalingReference {
  int n = 32;
  double distance = 200e-9;  // m
  double force = 5.72e-16;   // N, per atom

  /// 32S1/2 at 200 nm and T = 0.
  static ScalingReference paper() { return {}; }
};

/// Force per atom at z_min(n) from F_ref (n/n_ref)^4 (z_ref/z_min(n))^4.
inline double scaling_law_force(int n, const ScalingReference& ref) {
  if (!(ref.force > 0.0)) throw DomainError("scaling law: reference force must be > 0");
  const double nr = static_cast<double>(n) / ref.n;
  const double zr = ref.distance / min_distance(n);
  return ref.force * std::pow(nr, 4) * std::pow(zr, 4);
}

/// Atoms needed at z_min(n) divided by n^4; constant because F(z_min(n)) ~ n^-4.
inline double scaling_law_coefficient(double f_required, const ScalingReference& ref) {
  const int n = ref.n;
  return f_required / scaling_law_force(n, ref) / std::pow(static_cast<double>(n), 4);
}

inline AtomCount scaling_law_atoms(int n, double f_required, const ScalingReference& ref,
                                   Rounding rounding = Rounding::ceiling) {
  return atoms_needed(f_required, scaling_law_force(n, ref), rounding);
}

//
// Published reference values
//

struct PaperTable1Entry {
  int n;
  bool at_min_distance;  // false: z = 200 nm
  double temperature;
  double force;
  long atoms;
};

inline constexpr double table1_distance = 200e-9;

inline const std::array<PaperTable1Entry, 16>& paper_table1() {
  static const std::array<PaperTable1Entry, 16> rows{{
      {26, false, 0.0, 2.29e-16, 70},   {26, false, 300.0, -1.89e-15, 9},
      {29, false, 0.0, 3.72e-16, 43},   {29, false, 300.0, -4.08e-15, 4},
      {32, false, 0.0, 5.72e-16, 28},   {32, false, 300.0, -8.15e-15, 2},
      {34, false, 0.0, 7.47e-16, 22},   {34, false, 300.0, -1.25e-14, 2},
      {26, true, 0.0, 8.88e-15, 2},     {26, true, 300.0, -7.36e-14, 1},
      {29, true, 0.0, 6.04e-15, 3},     {29, true, 300.0, -6.65e-14, 1},
      {32, true, 0.0, 4.25e-15, 4},     {32, true, 300.0, -6.05e-14, 1},
      {34, true, 0.0, 3.41e-15, 5},     {34, true, 300.0, -5.69e-14, 1},
  }};
  return rows;
}

struct PaperTable2Entry {
  int n;
  double z_min_nm;
  long atoms;
};

inline const std::array<PaperTable2Entry, 4>& paper_table2() {
  static const std::array<PaperTable2Entry, 4> rows{{{23, 62.0, 1}, {30, 106.0, 3}, {36, 153.0, 6}, {43, 218.0, 12}}};
  return rows;
}

//
// Reports
//

enum class RowSource { cp, scaling, paper };

inline std::string to_string(RowSource s) {
  switch (s) {
    case RowSource::cp: return "computed";
    case RowSource::scaling: return "scaling";
    case RowSource::paper: return "paper";
  }
  return "?";
}

struct ScenarioRow {
  StateLabel state;
  double distance = 0.0;
  double temperature = 0.0;
  RowSource source = RowSource::cp;
  std::optional<double> u_nonres, u_res, u_total;
  std::optional<double> force;
  std::optional<long> atoms;
  /// Count under the other rounding convention, when it differs.
  std::optional<long> atoms_alternate;
  std::optional<double> paper_force;
  std::optional<long> paper_atoms;
  std::vector<std::string> warnings;
};

struct ScenarioConfig {
  CPOptions cp{};
  GrapheneModel graphene{};
  MembraneSpec membrane = MembraneSpec::paper_cantilever();
  double amplitude = 1e-9;
  int window = 5;
  Rounding rounding = Rounding::ceiling;
  unsigned threads = 0;
  ScalingReference reference = ScalingReference::paper();
  /// Also run the full CP computation for the Table II states.
  bool table2_full_cp = false;
};

struct ScenarioReport {
  std::vector<ScenarioRow> rows;
  double f_required = 0.0;
  Rounding rounding = Rounding::ceiling;
  std::string title;
};

inline Rounding other(Rounding r) { return r == Rounding::ceiling ? Rounding::nearest : Rounding::ceiling; }

/// Fills the atom count (and the alternate-convention count if different).
inline void assign_atoms(ScenarioRow& row, double f_required, Rounding rounding) {
  if (!row.force || *row.force == 0.0) return;
  row.atoms = atoms_needed(f_required, *row.force, rounding).count;
  const long alt = atoms_needed(f_required, *row.force, other(rounding)).count;
  if (alt != *row.atoms) row.atoms_alternate = alt;
}

/// Full CP evaluation (potential terms, force, atom count) at one point.
inline ScenarioRow evaluate_point(const std::shared_ptr<const TransitionTable>& table, double z, double temperature,
                                  const ScenarioConfig& cfg, double f_required) {
  CPQuery q;
  q.table = table;
  q.graphene = cfg.graphene;
  q.z = z;
  q.temperature = temperature;
  const CPResult r = evaluate(q, cfg.cp);
  ScenarioRow row;
  row.state = table->center.label;
  row.distance = z;
  row.temperature = temperature;
  row.source = RowSource::cp;
  row.u_nonres = r.u_nonres;
  row.u_res = r.u_res;
  row.u_total = r.u_total;
  row.force = r.f_total;
  row.warnings = r.warnings;
  const int n = row.state.n;
  if (row.state.n >= 10 && z < min_distance(n)) {
    row.warnings.push_back("z = " + std::to_string(z) + " m is inside z_min(" + std::to_string(n) +
                           ") = " + std::to_string(min_distance(n)) + " m");
  }
  assign_atoms(row, f_required, cfg.rounding);
  return row;
}

inline void sort_rows(std::vector<ScenarioRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ScenarioRow& a, const ScenarioRow& b) {
    if (a.state != b.state) return a.state < b.state;
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.temperature < b.temperature;
  });
}

/// States {26, 29, 32, 34}S1/2 x {200 nm, z_min(n)} x {0, 300 K}, computed and
/// side by side with the published forces and atom counts.
inline ScenarioReport reproduce_table1(const Rubidium& rb, const ScenarioConfig& cfg) {
  ScenarioReport report;
  report.title = "table1";
  report.rounding = cfg.rounding;
  report.f_required = force_for_amplitude(cfg.membrane, cfg.amplitude);

  const auto& paper = paper_table1();
  std::array<std::shared_ptr<const TransitionTable>, 4> tables;
  constexpr std::array<int, 4> states{26, 29, 32, 34};
  parallel_for(states.size(), cfg.threads, [&](std::size_t i) {
    tables[i] = std::make_shared<const TransitionTable>(
        rb.build_transition_table(rb.state(StateLabel{states[i], 0, 1}), cfg.window));
  });
  auto table_for = [&](int n) {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == n) return tables[i];
    throw ConfigurationError("table1: unexpected state");
  };

  report.rows.resize(paper.size());
  parallel_for(paper.size(), cfg.threads, [&](std::size_t i) {
    const PaperTable1Entry& e = paper[i];
    const double z = e.at_min_distance ? min_distance(e.n) : table1_distance;
    ScenarioRow row = evaluate_point(table_for(e.n), z, e.temperature, cfg, report.f_required);
    row.paper_force = e.force;
    row.paper_atoms = e.atoms;
    report.rows[i] = std::move(row);
  });
  sort_rows(report.rows);
  return report;
}

/// States {23, 30, 36, 43}S1/2 at z_min(n), T = 0, from the scaling law (and
/// optionally the full CP computation), alongside the published values.
inline ScenarioReport reproduce_table2(const Rubidium& rb, const ScenarioConfig& cfg) {
  ScenarioReport report;
  report.title = "table2";
  report.rounding = cfg.rounding;
  report.f_required = force_for_amplitude(cfg.membrane, cfg.amplitude);

  for (const PaperTable2Entry& e : paper_table2()) {
    ScenarioRow row;
    row.state = StateLabel{e.n, 0, 1};
    row.distance = min_distance(e.n);
    row.temperature = 0.0;
    row.source = RowSource::scaling;
    row.force = scaling_law_force(e.n, cfg.reference);
    assign_atoms(row, report.f_required, cfg.rounding);
    row.paper_atoms = e.atoms;
    report.rows.push_back(row);
  }
  if (cfg.table2_full_cp) {
    const auto& paper = paper_table2();
    std::vector<ScenarioRow> cp_rows(paper.size());
    parallel_for(paper.size(), cfg.threads, [&](std::size_t i) {
      const int n = paper[i].n;
      auto table = std::make_shared<const TransitionTable>(
          rb.build_transition_table(rb.state(StateLabel{n, 0, 1}), cfg.window));
      cp_rows[i] = evaluate_point(table, min_distance(n), 0.0, cfg, report.f_required);
      cp_rows[i].paper_atoms = paper[i].atoms;
    });
    report.rows.insert(report.rows.end(), cp_rows.begin(), cp_rows.end());
  }
  sort_rows(report.rows);
  return report;
}

}  // namespace gcp::scenarios
