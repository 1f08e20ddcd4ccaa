#pragma once

// graphene-cp command line: configuration (flags over config file over
// defaults), orchestration of the library calls, CSV/JSON emission.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphene_cp/atomic_rubidium.hpp"
#include "graphene_cp/cp_interaction.hpp"
#include "graphene_cp/errors.hpp"
#include "graphene_cp/graphene_optics.hpp"
#include "graphene_cp/membrane_mechanics.hpp"
#include "graphene_cp/parallel.hpp"
#include "graphene_cp/scenarios.hpp"

namespace gcp::cli {

inline constexpr const char* program_name = "graphene-cp";
inline constexpr const char* program_version = "0.1.0";

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_nonconvergence = 3;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"cp", "force", "sweep", "table1", "table2", "membrane", "atoms-needed"};
  return c;
}

//
// Distance specs
//

struct DistanceSpec {
  double start = 200e-9;
  double stop = 200e-9;
  int points = 1;
  bool log = false;
  bool is_range = false;

  std::vector<double> values() const {
    if (!is_range) return {start};
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      v[i] = log ? start * std::pow(stop / start, t) : start + (stop - start) * t;
    }
    v.back() = stop;
    return v;
  }
};

inline double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError(what + ": not a number: '" + text + "'");
  return v;
}

/// "z" or "start:stop:points[:lin|log]" (metres).
inline DistanceSpec parse_distance(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) throw UsageError("distance: empty");
  DistanceSpec d;
  if (parts.size() == 1) {
    d.start = d.stop = parse_number(parts[0], "distance");
    if (!(d.start > 0.0)) throw UsageError("distance: must be > 0");
    return d;
  }
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("distance range: expected start:stop:points[:lin|log]");
  d.is_range = true;
  d.start = parse_number(parts[0], "distance range start");
  d.stop = parse_number(parts[1], "distance range stop");
  const double pts = parse_number(parts[2], "distance range points");
  if (pts != std::floor(pts) || pts < 2 || pts > 1e6) throw UsageError("distance range: points must be an integer >= 2");
  d.points = static_cast<int>(pts);
  if (parts.size() == 4) {
    if (parts[3] == "log") d.log = true;
    else if (parts[3] != "lin") throw UsageError("distance range: spacing must be 'lin' or 'log'");
  }
  if (!(d.start > 0.0)) throw UsageError("distance range: start must be > 0");
  if (!(d.stop > d.start)) throw UsageError("distance range: stop must be > start");
  return d;
}

//
// Config file: flat "key = value", '#' comments
//

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in,
                                                                          const std::string& name = "<config>") {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(name + ":" + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

//
// RunConfig
//

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  StateLabel state{32, 0, 1};
  DistanceSpec distance{};
  double temperature = 0.0;
  int window = 5;
  GrapheneModel graphene{};
  CPOptions cp{};
  MembraneSpec membrane = MembraneSpec::paper_cantilever();
  double amplitude = 1e-9;
  Rounding rounding = Rounding::ceiling;
  bool full_cp = false;
  std::optional<double> force_per_atom;
  std::optional<double> required_force;
  unsigned threads = 0;
  Format format = Format::csv;
  std::string output;  // empty: standard output
  bool timestamp = false;
};

namespace detail {

struct RawOptions {
  std::string command;
  std::string state = "32S1/2";
  std::string distance = "200e-9";
  double temperature = 0.0;
  int window = 5;
  bool paper_constants = false;
  std::optional<double> v_tilde, alpha_fs;
  double rel_tol = CPOptions{}.outer_rel_tol;
  double inner_rel_tol = CPOptions{}.inner_rel_tol;
  std::size_t max_subdivisions = CPOptions{}.max_subdivisions;
  std::string contraction = "trace";
  MembraneSpec membrane = MembraneSpec::paper_cantilever();
  bool custom_clamping = false;
  double amplitude = 1e-9;
  std::string rounding = "ceiling";
  bool full_cp = false;
  std::optional<double> force_per_atom, required_force;
  unsigned threads = 0;
  std::string format = "csv";
  std::string output;
  std::string config;
  bool timestamp = false;
};

inline void build_app(CLI::App& app, RawOptions& o) {
  app.description("Casimir-Polder forces of Rb atoms on graphene and the atom numbers that ripple a membrane");
  app.set_version_flag("--version", program_version);
  app.add_option("command", o.command, "cp | force | sweep | table1 | table2 | membrane | atoms-needed")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--state", o.state, "atomic state, e.g. 32S1/2 or 5S1/2");
  app.add_option("--distance", o.distance, "atom-sheet distance in m, or start:stop:points[:lin|log]");
  app.add_option("--temperature", o.temperature, "temperature in K");
  app.add_option("--window", o.window, "P levels on each side of a Rydberg state");
  app.add_flag("--paper-constants", o.paper_constants, "use alpha = 1/137 and v_F/c = 1/300");
  app.add_option("--v-tilde", o.v_tilde, "Fermi velocity over c");
  app.add_option("--alpha-fs", o.alpha_fs, "fine-structure constant");
  app.add_option("--rel-tol", o.rel_tol, "relative tolerance of the frequency integral");
  app.add_option("--inner-rel-tol", o.inner_rel_tol, "relative tolerance of the wave-vector integrals");
  app.add_option("--max-subdivisions", o.max_subdivisions, "panel budget per integral");
  app.add_option("--contraction", o.contraction, "resonant dipole contraction: trace | isotropic")
      ->check(CLI::IsMember({"trace", "isotropic"}));
  app.add_option("--youngs-modulus", o.membrane.youngs_modulus, "Pa");
  app.add_option("--density", o.membrane.density, "kg/m^3");
  app.add_option("--thickness", o.membrane.thickness, "m");
  app.add_option("--width", o.membrane.width, "m");
  app.add_option("--length", o.membrane.length, "m");
  app.add_option("--tension", o.membrane.tension, "N");
  app.add_option("--clamping", o.membrane.clamping, "clamping coefficient A (1.03 or 0.162)");
  app.add_flag("--custom-clamping", o.custom_clamping, "accept any A > 0");
  app.add_option("--amplitude", o.amplitude, "ripple amplitude in m");
  app.add_option("--rounding", o.rounding, "atom-count rounding: ceiling | nearest")
      ->check(CLI::IsMember({"ceiling", "nearest"}));
  app.add_flag("--full-cp", o.full_cp, "table2: also run the full CP computation");
  app.add_option("--force-per-atom", o.force_per_atom, "atoms-needed: force per atom in N");
  app.add_option("--required-force", o.required_force, "atoms-needed: required force in N");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");
  app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", o.output, "output file (default: standard output)");
  app.add_option("--config", o.config, "flat key = value configuration file");
  app.add_flag("--timestamp", o.timestamp, "record the wall-clock time in the output metadata");
  for (CLI::Option* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

/// Value of --config in the raw arguments, if any.
inline std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  return path;
}

}  // namespace detail

/// Parses arguments (without the program name). Config-file keys are the long
/// flag names without the leading dashes; command-line flags take precedence.
inline RunConfig parse_config(const std::vector<std::string>& args) {
  detail::RawOptions o;
  CLI::App app{"", program_name};
  detail::build_app(app, o);

  std::vector<std::string> merged;
  if (const auto path = detail::find_config_path(args)) {
    std::ifstream in(*path);
    if (!in) throw UsageError("cannot open config file '" + *path + "'");
    for (const auto& [key, value] : parse_config_text(in, *path)) {
      if (key == "config" || key == "command" || key == "help" || key == "version" ||
          app.get_option_no_throw("--" + key) == nullptr)
        throw UsageError(*path + ": unknown key '" + key + "'");
      merged.push_back("--" + key + "=" + value);
    }
  }
  merged.insert(merged.end(), args.begin(), args.end());
  std::reverse(merged.begin(), merged.end());
  app.parse(merged);  // CLI::ParseError propagates to the caller

  RunConfig cfg;
  cfg.command = o.command;
  try {
    cfg.state = parse_state_label(o.state);
  } catch (const Error& e) {
    throw UsageError(std::string("--state: ") + e.what());
  }
  cfg.distance = parse_distance(o.distance);
  if (!(o.temperature >= 0.0)) throw UsageError("--temperature must be >= 0");
  cfg.temperature = o.temperature;
  if (o.window < 1) throw UsageError("--window must be >= 1");
  cfg.window = o.window;

  cfg.graphene = o.paper_constants ? GrapheneModel::paper_rounded() : GrapheneModel{};
  if (o.v_tilde) cfg.graphene.v_tilde = *o.v_tilde;
  if (o.alpha_fs) cfg.graphene.alpha_fs = *o.alpha_fs;
  if (!(cfg.graphene.v_tilde > 0.0 && cfg.graphene.v_tilde < 1.0)) throw UsageError("--v-tilde must lie in (0, 1)");
  if (!(cfg.graphene.alpha_fs > 0.0)) throw UsageError("--alpha-fs must be > 0");

  if (!(o.rel_tol > 0.0 && o.rel_tol < 1.0)) throw UsageError("--rel-tol must lie in (0, 1)");
  if (!(o.inner_rel_tol > 0.0 && o.inner_rel_tol < 1.0)) throw UsageError("--inner-rel-tol must lie in (0, 1)");
  if (o.max_subdivisions < 1) throw UsageError("--max-subdivisions must be >= 1");
  cfg.cp.outer_rel_tol = o.rel_tol;
  cfg.cp.inner_rel_tol = o.inner_rel_tol;
  cfg.cp.max_subdivisions = o.max_subdivisions;
  cfg.cp.contraction = o.contraction == "isotropic" ? ResonantContraction::isotropic : ResonantContraction::trace;

  cfg.membrane = o.membrane;
  cfg.membrane.custom_clamping = o.custom_clamping;
  try {
    cfg.membrane.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!(o.amplitude > 0.0)) throw UsageError("--amplitude must be > 0");
  cfg.amplitude = o.amplitude;
  cfg.rounding = o.rounding == "nearest" ? Rounding::nearest : Rounding::ceiling;
  cfg.full_cp = o.full_cp;
  if (o.force_per_atom && *o.force_per_atom == 0.0) throw UsageError("--force-per-atom must be nonzero");
  if (o.required_force && !(*o.required_force > 0.0)) throw UsageError("--required-force must be > 0");
  cfg.force_per_atom = o.force_per_atom;
  cfg.required_force = o.required_force;
  cfg.threads = o.threads;
  cfg.format = o.format == "json" ? Format::json : Format::csv;
  cfg.output = o.output;
  cfg.timestamp = o.timestamp;

  const bool needs_range = cfg.command == "sweep";
  const bool needs_point = cfg.command == "cp" || cfg.command == "force" || cfg.command == "atoms-needed";
  if (needs_range && !cfg.distance.is_range) throw UsageError("sweep needs --distance start:stop:points[:lin|log]");
  if (needs_point && cfg.distance.is_range) throw UsageError(cfg.command + " takes a single --distance");
  return cfg;
}

//
// Output tables
//

using Cell = std::variant<std::monostate, double, long, std::string>;

struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

inline const std::vector<std::string>& cp_columns() {
  static const std::vector<std::string> c{"state",     "distance_m", "temperature_K", "u_nonres_J", "u_res_J",
                                          "u_total_J", "force_N",    "n_atoms",       "flag"};
  return c;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const double* d = std::get_if<double>(&c)) return std::stod(format_double(*d));
  if (const long* l = std::get_if<long>(&c)) return *l;
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& out, const OutputTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

inline void write_json(std::ostream& out, const OutputTable& t) {
  nlohmann::ordered_json doc;
  doc["meta"] = t.meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

inline Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }
inline Cell opt_cell(const std::optional<long>& v) { return v ? Cell{*v} : Cell{}; }

inline std::string row_flag(const scenarios::ScenarioRow& r, Rounding rounding) {
  std::string flag = scenarios::to_string(r.source);
  if (r.atoms_alternate) flag += "|" + to_string(scenarios::other(rounding)) + "=" + std::to_string(*r.atoms_alternate);
  return flag;
}

inline std::vector<Cell> scenario_cells(const scenarios::ScenarioRow& r, Rounding rounding) {
  return {to_string(r.state), r.distance,          r.temperature,  opt_cell(r.u_nonres),       opt_cell(r.u_res),
          opt_cell(r.u_total), opt_cell(r.force), opt_cell(r.atoms), row_flag(r, rounding)};
}

inline std::vector<Cell> paper_cells(const StateLabel& s, double z, double t, std::optional<double> force,
                                     std::optional<long> atoms) {
  return {to_string(s), z, t, Cell{}, Cell{}, Cell{}, opt_cell(force), opt_cell(atoms), std::string("paper")};
}

inline nlohmann::ordered_json base_meta(const RunConfig& cfg) {
  nlohmann::ordered_json m;
  m["program"] = program_name;
  m["version"] = program_version;
  m["command"] = cfg.command;
  m["conventions"] = {
      {"contraction", cfg.cp.contraction == ResonantContraction::trace ? "trace" : "isotropic"},
      {"rounding", to_string(cfg.rounding)},
      {"v_tilde", cfg.graphene.v_tilde},
      {"alpha_fs", cfg.graphene.alpha_fs},
      {"window", cfg.window},
      {"force_sign", "negative = attractive"},
  };
  m["tolerances"] = {
      {"rel_tol", cfg.cp.outer_rel_tol},
      {"inner_rel_tol", cfg.cp.inner_rel_tol},
      {"max_subdivisions", cfg.cp.max_subdivisions},
  };
  if (cfg.timestamp) m["timestamp"] = utc_timestamp();
  return m;
}

inline scenarios::ScenarioConfig scenario_config(const RunConfig& cfg) {
  scenarios::ScenarioConfig s;
  s.cp = cfg.cp;
  s.graphene = cfg.graphene;
  s.membrane = cfg.membrane;
  s.amplitude = cfg.amplitude;
  s.window = cfg.window;
  s.rounding = cfg.rounding;
  s.threads = cfg.threads;
  s.table2_full_cp = cfg.full_cp;
  return s;
}

inline std::shared_ptr<const TransitionTable> table_for(const RunConfig& cfg) {
  const Rubidium rb = Rubidium::load_default();
  return std::make_shared<const TransitionTable>(rb.build_transition_table(rb.state(cfg.state), cfg.window));
}

}  // namespace detail

/// Builds the output table of a command; warnings are appended to `warnings`.
inline OutputTable execute(const RunConfig& cfg, std::vector<std::string>& warnings) {
  OutputTable out;
  out.meta = detail::base_meta(cfg);
  const scenarios::ScenarioConfig scfg = detail::scenario_config(cfg);

  auto collect = [&](const std::vector<std::string>& w) { warnings.insert(warnings.end(), w.begin(), w.end()); };

  if (cfg.command == "membrane") {
    out.columns = {"youngs_modulus_Pa", "density_kg_m3", "thickness_m", "width_m",  "length_m",
                   "tension_N",         "clamping",      "f0_Hz",       "m_eff_kg", "kappa_eff_N_m",
                   "amplitude_m",       "force_N"};
    const MembraneSpec& m = cfg.membrane;
    out.rows.push_back({m.youngs_modulus, m.density, m.thickness, m.width, m.length, m.tension, m.clamping,
                        fundamental_frequency(m), effective_mass(m), spring_constant(m), cfg.amplitude,
                        force_for_amplitude(m, cfg.amplitude)});
    return out;
  }

  const double f_required = cfg.required_force ? *cfg.required_force : force_for_amplitude(cfg.membrane, cfg.amplitude);
  out.meta["required_force_N"] = std::stod(format_double(f_required));
  out.meta["amplitude_m"] = cfg.amplitude;

  if (cfg.command == "atoms-needed") {
    out.columns = {"state", "distance_m", "temperature_K", "required_force_N", "force_per_atom_N",
                   "n_atoms", "n_atoms_alternate", "direction", "rounding"};
    Cell state, z, t;
    double f_atom = 0.0;
    if (cfg.force_per_atom) {
      f_atom = *cfg.force_per_atom;
    } else {
      CPQuery q{detail::table_for(cfg), cfg.graphene, cfg.distance.start, cfg.temperature};
      const CPResult r = evaluate(q, cfg.cp);
      collect(r.warnings);
      f_atom = r.f_total;
      state = to_string(cfg.state);
      z = cfg.distance.start;
      t = cfg.temperature;
    }
    const AtomCount a = atoms_needed(f_required, f_atom, cfg.rounding);
    const AtomCount alt = atoms_needed(f_required, f_atom, scenarios::other(cfg.rounding));
    out.rows.push_back({state, z, t, f_required, f_atom, a.count, alt.count, to_string(a.direction),
                        to_string(cfg.rounding)});
    return out;
  }

  out.columns = cp_columns();

  if (cfg.command == "table1") {
    const scenarios::ScenarioReport rep = scenarios::reproduce_table1(Rubidium::load_default(), scfg);
    for (const auto& r : rep.rows) {
      collect(r.warnings);
      out.rows.push_back(detail::scenario_cells(r, cfg.rounding));
      out.rows.push_back(detail::paper_cells(r.state, r.distance, r.temperature, r.paper_force, r.paper_atoms));
    }
    return out;
  }

  if (cfg.command == "table2") {
    const scenarios::ScenarioReport rep = scenarios::reproduce_table2(Rubidium::load_default(), scfg);
    out.meta["scaling_prefactor"] = scenarios::scaling_law_coefficient(f_required, scfg.reference);
    for (const auto& r : rep.rows) {
      collect(r.warnings);
      out.rows.push_back(detail::scenario_cells(r, cfg.rounding));
    }
    for (const auto& e : scenarios::paper_table2())
      out.rows.push_back(detail::paper_cells(StateLabel{e.n, 0, 1}, e.z_min_nm * 1e-9, 0.0, std::nullopt, e.atoms));
    return out;
  }

  // cp, force, sweep
  const auto table = detail::table_for(cfg);
  const std::vector<double> zs = cfg.distance.values();
  std::vector<scenarios::ScenarioRow> rows(zs.size());
  const bool potential_only = cfg.command == "cp";
  parallel_for(zs.size(), cfg.threads, [&](std::size_t i) {
    if (potential_only) {
      CPQuery q{table, cfg.graphene, zs[i], cfg.temperature};
      const CPResult r = potential_total(q, cfg.cp);
      scenarios::ScenarioRow row;
      row.state = cfg.state;
      row.distance = zs[i];
      row.temperature = cfg.temperature;
      row.u_nonres = r.u_nonres;
      row.u_res = r.u_res;
      row.u_total = r.u_total;
      row.warnings = r.warnings;
      rows[i] = std::move(row);
    } else {
      rows[i] = scenarios::evaluate_point(table, zs[i], cfg.temperature, scfg, f_required);
    }
  });
  for (const auto& r : rows) {
    collect(r.warnings);
    out.rows.push_back(detail::scenario_cells(r, cfg.rounding));
  }
  return out;
}

/// Runs a parsed configuration; data to `out` (or --output), diagnostics to `diag`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    std::vector<std::string> warnings;
    const OutputTable table = execute(cfg, warnings);
    std::ostringstream payload;
    if (cfg.format == Format::json) {
      write_json(payload, table);
    } else {
      if (cfg.timestamp) payload << "# timestamp: " << table.meta.value("timestamp", "") << '\n';
      write_csv(payload, table);
    }
    for (const auto& w : warnings) diag << "warning: " << w << '\n';
    if (cfg.output.empty()) {
      out << payload.str();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw Error("cannot write '" + cfg.output + "'");
      file << payload.str();
      if (!file) throw Error("write to '" + cfg.output + "' failed");
    }
    return exit_ok;
  } catch (const UsageError& e) {
    diag << program_name << ": " << e.what() << '\n';
    return exit_usage;
  } catch (const ConvergenceError& e) {
    diag << program_name << ": numerical non-convergence: " << e.what() << '\n';
    return exit_nonconvergence;
  } catch (const std::exception& e) {
    diag << program_name << ": error: " << e.what() << '\n';
    return exit_failure;
  }
}

/// Entry point shared by the executable and the tests.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const CLI::CallForHelp&) {
    CLI::App app{"", program_name};
    detail::RawOptions o;
    detail::build_app(app, o);
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << program_version << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    diag << program_name << ": " << e.what() << '\n';
    return exit_usage;
  } catch (const UsageError& e) {
    diag << program_name << ": " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    diag << program_name << ": error: " << e.what() << '\n';
    return exit_failure;
  }
  return run(cfg, out, diag);
}

}  // namespace gcp::cli
