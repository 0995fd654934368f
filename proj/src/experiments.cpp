#include "qb/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qb/error.hpp"
#include "qb/state_prep.hpp"
#include "qb/steady_state.hpp"

namespace qb {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ResolvedPoint {
  SystemGeometry geom;
  ChargerPrep prep;
  ReservoirParams params;
};

double sweep_value_at(const SweepSpec& sweep, int i) {
  if (sweep.count <= 1) return sweep.start;
  return sweep.start + (sweep.stop - sweep.start) * static_cast<double>(i) / (sweep.count - 1);
}

ResolvedPoint resolve(const Scenario& sc, double value) {
  Scenario pt = sc;
  switch (sc.sweep.axis) {
    case SweepAxis::none: break;
    case SweepAxis::theta: pt.theta = value; break;
    case SweepAxis::delta:
      pt.use_delta = true;
      pt.delta = value;
      break;
    case SweepAxis::r: pt.r = value; break;
    case SweepAxis::size: {
      const int n = static_cast<int>(std::lround(value));
      pt.n_charger = n;
      pt.n_battery = n;
      break;
    }
  }
  const double phi = pt.use_delta ? 0.0 : pt.phi;
  const double varphi = pt.use_delta ? pt.delta : pt.varphi;
  ResolvedPoint rp{make_geometry(pt.n_charger, pt.n_battery), make_prep(pt.theta, phi),
                   squeezing_params(pt.r, varphi, pt.gamma)};
  return rp;
}

std::vector<double> sweep_values(const Scenario& sc) {
  if (sc.sweep.axis == SweepAxis::none) return {sc.theta};
  if (sc.sweep.count < 1) throw ConfigError("sweep: point count must be >= 1");
  std::vector<double> v(sc.sweep.count);
  for (int i = 0; i < sc.sweep.count; ++i) v[i] = sweep_value_at(sc.sweep, i);
  return v;
}

const std::vector<std::string> kSteadyColumns = {"sweep_value", "E_B", "W_B", "W_B_P",
                                                 "W_B_C",       "C_B", "S_B"};
const std::vector<std::string> kDynamicsColumns = {"t",     "E_B", "W_B", "W_B_P",
                                                   "W_B_C", "C_B", "S_B"};

} // namespace

Table run_steady_sweep(const Scenario& sc) {
  Table out;
  out.columns = kSteadyColumns;
  for (double v : sweep_values(sc)) {
    try {
      const ResolvedPoint rp = resolve(sc, v);
      const DensityMatrix rho0 = initial_state(rp.geom, rp.prep);
      const DensityMatrix ss = steady_state(rho0, rp.geom, rp.params);
      const ErgotropyReport rep = make_report(ss, rp.geom);
      out.rows.push_back({v, rep.energy_per_spin, rep.ergotropy_per_spin, rep.incoherent_per_spin,
                          rep.coherent_per_spin, rep.coherence_l1, rep.log_neg});
    } catch (const NumericalError& err) {
      std::ostringstream msg;
      msg << err.what() << " (at sweep point " << v << ")";
      throw NumericalError(msg.str());
    } catch (const ConfigError& err) {
      std::ostringstream msg;
      msg << err.what() << " (at sweep point " << v << ")";
      throw ConfigError(msg.str());
    }
  }
  return out;
}

DynamicsResult run_dynamics(const Scenario& sc) {
  if (sc.sweep.axis != SweepAxis::none && sc.sweep.axis != SweepAxis::size &&
      sc.sweep.axis != SweepAxis::r)
    throw ConfigError("run_dynamics: only single-point scenarios here; use run_power_scaling");
  const ResolvedPoint rp = resolve(sc, sc.theta);
  const DensityMatrix rho0 = initial_state(rp.geom, rp.prep);
  const QuenchSchedule schedule{sc.r, sc.t_q};
  const Trajectory traj = evolve(rho0, rp.geom, rp.params, schedule, sc.t_end, sc.grid);
  const ObservableSeries series = observables_along(traj, battery_hamiltonian(rp.geom.n_battery));
  const PowerSeries power = charging_power(series);

  DynamicsResult res;
  res.table.columns = kDynamicsColumns;
  for (std::size_t i = 0; i < series.times.size(); ++i)
    res.table.rows.push_back({series.times[i], series.e_b[i], series.w_b[i], series.w_p[i],
                              series.w_c[i], series.c_b[i], series.s_b[i]});
  res.power = {power.p_w_max, power.t_w_max, power.p_e_max, power.t_e_max};
  return res;
}

Table run_power_scaling(const Scenario& sc) {
  Table out;
  out.columns = {"sweep_value", "P_W_max", "P_E_max", "t_W_max", "t_E_max"};
  for (double v : sweep_values(sc)) {
    try {
      Scenario pt = sc;
      pt.sweep.axis = SweepAxis::none;
      switch (sc.sweep.axis) {
        case SweepAxis::theta: pt.theta = v; break;
        case SweepAxis::delta:
          pt.use_delta = true;
          pt.delta = v;
          break;
        case SweepAxis::r: pt.r = v; break;
        case SweepAxis::size: {
          const int n = static_cast<int>(std::lround(v));
          pt.n_charger = n;
          pt.n_battery = n;
          break;
        }
        case SweepAxis::none: break;
      }
      const DynamicsResult dyn = run_dynamics(pt);
      out.rows.push_back(
          {v, dyn.power.p_w_max, dyn.power.p_e_max, dyn.power.t_w_max, dyn.power.t_e_max});
    } catch (const NumericalError& err) {
      std::ostringstream msg;
      msg << err.what() << " (at sweep point " << v << ")";
      throw NumericalError(msg.str());
    } catch (const ConfigError& err) {
      std::ostringstream msg;
      msg << err.what() << " (at sweep point " << v << ")";
      throw ConfigError(msg.str());
    }
  }
  return out;
}

QuenchComparison run_quench_comparison(const Scenario& sc) {
  if (!std::isfinite(sc.t_q)) throw ConfigError("quench comparison needs a finite t_q");
  QuenchComparison cmp;
  Scenario cont = sc;
  cont.t_q = std::numeric_limits<double>::infinity();
  cmp.continuous = run_dynamics(cont);
  cmp.quenched = run_dynamics(sc);
  Scenario vac = sc;
  vac.r = 0.0;
  vac.t_q = std::numeric_limits<double>::infinity();
  cmp.vacuum = run_dynamics(vac);
  return cmp;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

// RFC 4180: quote a field only when it contains a comma, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_csv(const Table& table, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    f << (j ? "," : "") << csv_field(table.columns[j]);
  f << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) f << (j ? "," : "") << format_number(row[j]);
    f << "\n";
  }
  if (!f) throw ConfigError("write failed for " + path);
}

void emit_json(const Table& table, const std::string& path) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj;
    for (std::size_t j = 0; j < row.size(); ++j) obj[table.columns[j]] = row[j];
    rows.push_back(obj);
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << rows.dump(2) << "\n";
}

void emit_svg(const Table& table, const std::string& path) {
  if (table.rows.empty() || table.columns.size() < 2) throw ConfigError("svg: empty table");
  const int width = 800, height = 500, margin = 60;
  double xmin = table.rows.front()[0], xmax = xmin, ymin = 0.0, ymax = 0.0;
  bool first_y = true;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (first_y) {
        ymin = ymax = row[j];
        first_y = false;
      }
      ymin = std::min(ymin, row[j]);
      ymax = std::max(ymax, row[j]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const auto sx = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  const auto sy = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2"};
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
    << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
    << height - margin << "\" stroke=\"black\"/>\n";
  for (std::size_t j = 1; j < table.columns.size(); ++j) {
    f << "<polyline fill=\"none\" stroke=\"" << palette[(j - 1) % 7] << "\" points=\"";
    for (const auto& row : table.rows) f << sx(row[0]) << "," << sy(row[j]) << " ";
    f << "\"/>\n";
    f << "<text x=\"" << width - margin + 5 << "\" y=\"" << margin + 16 * j << "\" fill=\""
      << palette[(j - 1) % 7] << "\" font-size=\"12\">" << table.columns[j] << "</text>\n";
  }
  f << "<text x=\"" << margin << "\" y=\"" << height - margin + 20 << "\" font-size=\"12\">"
    << format_number(xmin) << "</text>\n";
  f << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 20
    << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(xmax) << "</text>\n";
  f << "<text x=\"" << margin - 5 << "\" y=\"" << height - margin
    << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(ymin) << "</text>\n";
  f << "<text x=\"" << margin - 5 << "\" y=\"" << margin
    << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(ymax) << "</text>\n";
  f << "</svg>\n";
}

} // namespace

void emit(const Table& table, const std::string& path, EmitFormat format) {
  if (table.rows.empty()) throw ConfigError("emit: empty table");
  switch (format) {
    case EmitFormat::csv: emit_csv(table, path); break;
    case EmitFormat::json: emit_json(table, path); break;
    case EmitFormat::svg: emit_svg(table, path); break;
  }
}

void emit_power_sidecar(const PowerSummary& power, const std::string& csv_path) {
  std::string path = csv_path;
  const std::size_t dot = path.rfind(".csv");
  if (dot != std::string::npos && dot == path.size() - 4) path.resize(dot);
  path += ".power.json";
  nlohmann::json j = {{"P_W_max", power.p_w_max},
                      {"t_W_max", power.t_w_max},
                      {"P_E_max", power.p_e_max},
                      {"t_E_max", power.t_e_max}};
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << j.dump(2) << "\n";
}

Table parse_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  Table out;
  std::string line;
  if (!std::getline(f, line)) throw ConfigError("empty csv: " + path);
  std::stringstream header(line);
  std::string field;
  while (std::getline(header, field, ',')) {
    if (!field.empty() && field.front() == '"' && field.back() == '"')
      field = field.substr(1, field.size() - 2);
    out.columns.push_back(field);
  }
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::vector<double> values;
    while (std::getline(row, field, ',')) values.push_back(std::strtod(field.c_str(), nullptr));
    if (values.size() != out.columns.size())
      throw ConfigError("csv row width mismatch in " + path);
    out.rows.push_back(std::move(values));
  }
  return out;
}

namespace {

Scenario base_scenario(int n, double theta, double r, double t_end, int grid) {
  Scenario sc;
  sc.n_charger = n;
  sc.n_battery = n;
  sc.theta = theta;
  sc.use_delta = true;
  sc.delta = 0.0;
  sc.r = r;
  sc.t_end = t_end;
  sc.grid = grid;
  return sc;
}

Table golden_n1_theta() {
  Scenario sc = base_scenario(1, 0.0, 0.5, 0, 0);
  sc.sweep = {SweepAxis::theta, 0.0, kPi, 41};
  return run_steady_sweep(sc);
}

Table golden_n4_theta() {
  Scenario sc = base_scenario(4, 0.0, 0.5, 0, 0);
  sc.sweep = {SweepAxis::theta, 0.0, kPi, 33};
  return run_steady_sweep(sc);
}

Table golden_n4_delta() {
  Scenario sc = base_scenario(4, kPi / 3.0, 0.5, 0, 0);
  sc.sweep = {SweepAxis::delta, -kPi, kPi, 41};
  return run_steady_sweep(sc);
}

template <int Theta60, int RHalf>
Table golden_dynamics() {
  const double theta = Theta60 ? kPi / 3.0 : 0.0;
  const double r = RHalf ? 0.5 : 0.0;
  return run_dynamics(base_scenario(4, theta, r, 6.0, 121)).table;
}

template <int Which>
Table golden_protocols() {
  Scenario sc = base_scenario(4, kPi / 3.0, 0.5, 6.0, 121);
  sc.t_q = 0.5;
  const QuenchComparison cmp = run_quench_comparison(sc);
  if (Which == 0) return cmp.continuous.table;
  if (Which == 1) return cmp.quenched.table;
  return cmp.vacuum.table;
}

template <int Coherent>
Table golden_scaling() {
  Scenario sc = base_scenario(1, Coherent ? kPi / 3.0 : 0.0, Coherent ? 0.5 : 0.0, 6.0, 241);
  sc.sweep = {SweepAxis::size, 1.0, 4.0, 4};
  return run_power_scaling(sc);
}

} // namespace

const std::vector<GoldenEntry>& golden_suite() {
  static const std::vector<GoldenEntry> suite = {
      {"n1_theta_sweep", golden_n1_theta},
      {"n4_theta_sweep", golden_n4_theta},
      {"n4_delta_sweep", golden_n4_delta},
      {"dyn_theta0_vacuum", golden_dynamics<0, 0>},
      {"dyn_theta0_squeezed", golden_dynamics<0, 1>},
      {"dyn_theta60_vacuum", golden_dynamics<1, 0>},
      {"dyn_theta60_squeezed", golden_dynamics<1, 1>},
      {"protocol_continuous", golden_protocols<0>},
      {"protocol_quench", golden_protocols<1>},
      {"protocol_vacuum", golden_protocols<2>},
      {"power_scaling_vacuum", golden_scaling<0>},
      {"power_scaling_coherent", golden_scaling<1>},
  };
  return suite;
}

std::vector<std::string> golden_check(const std::string& golden_dir, bool regenerate) {
  std::vector<std::string> failures;
  for (const GoldenEntry& entry : golden_suite()) {
    const std::string path = golden_dir + "/" + entry.name + ".csv";
    const Table fresh = entry.generate();
    if (regenerate) {
      emit(fresh, path, EmitFormat::csv);
      continue;
    }
    Table stored;
    try {
      stored = parse_csv(path);
    } catch (const std::exception&) {
      failures.push_back(entry.name + ": missing golden file");
      continue;
    }
    bool ok = stored.columns == fresh.columns && stored.rows.size() == fresh.rows.size();
    for (std::size_t i = 0; ok && i < fresh.rows.size(); ++i)
      for (std::size_t j = 0; ok && j < fresh.rows[i].size(); ++j) {
        const double a = fresh.rows[i][j], b = stored.rows[i][j];
        if (std::abs(a - b) > 1e-8 * std::max({1.0, std::abs(a), std::abs(b)})) ok = false;
      }
    if (!ok) failures.push_back(entry.name);
  }
  return failures;
}

} // namespace qb
