#pragma once

#include <string>
#include <vector>

#include "qb/dynamics.hpp"

namespace qb {

enum class SweepAxis { none, theta, delta, r, size };

struct SweepSpec {
  SweepAxis axis = SweepAxis::none;
  double start = 0.0;
  double stop = 0.0;
  int count = 1; // closed interval with explicit point count
};

// One experiment configuration. When use_delta is set the relative phase is
// specified directly: phi = 0 and varphi = delta.
struct Scenario {
  int n_charger = 1;
  int n_battery = 1;
  double theta = 0.0;
  double phi = 0.0;
  double r = 0.0;
  double varphi = 0.0;
  bool use_delta = false;
  double delta = 0.0;
  double gamma = 1.0;
  double t_q = std::numeric_limits<double>::infinity();
  double t_end = 10.0;
  int grid = 400;
  SweepSpec sweep;
};

// Column-named table of doubles; the uniform exchange format for every
// subcommand (CSV/JSON/SVG emission and the golden comparisons).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct PowerSummary {
  double p_w_max = 0.0;
  double t_w_max = 0.0;
  double p_e_max = 0.0;
  double t_e_max = 0.0;
};

struct DynamicsResult {
  Table table; // t, E_B, W_B, W_B_P, W_B_C, C_B, S_B
  PowerSummary power;
};

// Steady-state metrics per sweep point (columns
// sweep_value, E_B, W_B, W_B_P, W_B_C, C_B, S_B). A scenario without a sweep
// axis yields one row keyed by theta.
Table run_steady_sweep(const Scenario& sc);

DynamicsResult run_dynamics(const Scenario& sc);

// One dynamics run per sweep point; rows
// sweep_value, P_W_max, P_E_max, t_W_max, t_E_max.
Table run_power_scaling(const Scenario& sc);

// The three reservoir protocols on one configuration: continuous squeezing,
// finite-time quench at sc.t_q, and always-vacuum.
struct QuenchComparison {
  DynamicsResult continuous;
  DynamicsResult quenched;
  DynamicsResult vacuum;
};

QuenchComparison run_quench_comparison(const Scenario& sc);

enum class EmitFormat { csv, json, svg };

void emit(const Table& table, const std::string& path, EmitFormat format);
void emit_power_sidecar(const PowerSummary& power, const std::string& csv_path);
Table parse_csv(const std::string& path);

// Pinned regression scenarios. Each entry regenerates one table
// deterministically; golden_check compares against data/golden/<name>.csv at
// 1e-8 relative tolerance (or rewrites the files when regenerate is set).
struct GoldenEntry {
  std::string name;
  Table (*generate)();
};

const std::vector<GoldenEntry>& golden_suite();
// Returns the list of failed entries (empty = pass).
std::vector<std::string> golden_check(const std::string& golden_dir, bool regenerate);

} // namespace qb
