// qbsim: dissipative charging experiments for a collective-spin battery
// coupled with its charger to a shared squeezed-vacuum reservoir.
//
// Subcommands: steady, evolve, sweep, power-scaling, quench, golden-check.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qb/error.hpp"
#include "qb/experiments.hpp"

namespace {

struct CliOptions {
  qb::Scenario scenario;
  std::string sweep_spec;
  std::string out = "out.csv";
  std::string format = "csv";
  bool delta_given = false;
  double delta = 0.0;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--nc", opt.scenario.n_charger, "Charger spin count")->check(CLI::PositiveNumber);
  cmd->add_option("--nb", opt.scenario.n_battery, "Battery spin count")->check(CLI::PositiveNumber);
  cmd->add_option("--theta", opt.scenario.theta, "Charger polar angle (rad)");
  cmd->add_option("--phi", opt.scenario.phi, "Charger azimuthal angle (rad)");
  cmd->add_option("--delta", opt.delta,
                  "Relative phase varphi - 2 phi (rad); overrides --phi/--varphi")
      ->each([&opt](const std::string&) { opt.delta_given = true; });
  cmd->add_option("--r", opt.scenario.r, "Squeezing strength")->check(CLI::NonNegativeNumber);
  cmd->add_option("--varphi", opt.scenario.varphi, "Squeezing phase (rad)");
  cmd->add_option("--gamma", opt.scenario.gamma, "Collective decay rate")->default_val(1.0);
  cmd->add_option("--tq", opt.scenario.t_q, "Squeezing quench time (1/gamma)");
  cmd->add_option("--t-end", opt.scenario.t_end, "Integration span (1/gamma)");
  cmd->add_option("--grid", opt.scenario.grid, "Output grid points")->check(CLI::PositiveNumber);
  cmd->add_option("--sweep", opt.sweep_spec, "Sweep axis:start:stop:count");
  cmd->add_option("--out", opt.out, "Output path");
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
}

qb::SweepSpec parse_sweep(const std::string& spec) {
  qb::SweepSpec sweep;
  if (spec.empty()) return sweep;
  std::string axis;
  double start = 0.0, stop = 0.0;
  int count = 0;
  char extra = '\0';
  std::string tail(spec);
  const std::size_t c1 = tail.find(':');
  if (c1 == std::string::npos) throw qb::ConfigError("sweep spec must be axis:start:stop:count");
  axis = tail.substr(0, c1);
  if (std::sscanf(tail.c_str() + c1 + 1, "%lf:%lf:%d%c", &start, &stop, &count, &extra) != 3)
    throw qb::ConfigError("sweep spec must be axis:start:stop:count");
  if (axis == "theta") sweep.axis = qb::SweepAxis::theta;
  else if (axis == "delta") sweep.axis = qb::SweepAxis::delta;
  else if (axis == "r") sweep.axis = qb::SweepAxis::r;
  else if (axis == "size") sweep.axis = qb::SweepAxis::size;
  else throw qb::ConfigError("unknown sweep axis '" + axis + "'");
  if (count < 1) throw qb::ConfigError("sweep count must be >= 1");
  sweep.start = start;
  sweep.stop = stop;
  sweep.count = count;
  return sweep;
}

qb::EmitFormat parse_format(const std::string& f) {
  if (f == "json") return qb::EmitFormat::json;
  if (f == "svg") return qb::EmitFormat::svg;
  return qb::EmitFormat::csv;
}

qb::Scenario finalize(CliOptions& opt) {
  opt.scenario.sweep = parse_sweep(opt.sweep_spec);
  if (opt.delta_given) {
    opt.scenario.use_delta = true;
    opt.scenario.delta = opt.delta;
  }
  return opt.scenario;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string::npos) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective-spin quantum battery simulator"};
  app.require_subcommand(1);
  // key = value file with one section per subcommand; command-line flags win
  app.set_config("--config", "", "Config file ([subcommand] sections of key = value lines)");

  CliOptions steady_opt, evolve_opt, sweep_opt, power_opt, quench_opt;
  std::string golden_dir = "data/golden";
  bool golden_regen = false;

  CLI::App* steady = app.add_subcommand("steady", "Steady-state metrics for one configuration");
  add_common(steady, steady_opt);
  CLI::App* evolve = app.add_subcommand("evolve", "Time-resolved observables");
  add_common(evolve, evolve_opt);
  CLI::App* sweep = app.add_subcommand("sweep", "Steady-state sweep over one axis");
  add_common(sweep, sweep_opt);
  CLI::App* power = app.add_subcommand("power-scaling", "Max charging power per sweep point");
  add_common(power, power_opt);
  CLI::App* quench =
      app.add_subcommand("quench", "Continuous / finite-time / vacuum protocol comparison");
  add_common(quench, quench_opt);
  CLI::App* golden = app.add_subcommand("golden-check", "Regression-check the pinned scenarios");
  golden->add_option("--dir", golden_dir, "Golden data directory");
  golden->add_flag("--regen", golden_regen, "Rewrite the golden files");

  try {
    app.parse(argc, argv);

    if (steady->parsed()) {
      const qb::Table table = qb::run_steady_sweep(finalize(steady_opt));
      qb::emit(table, steady_opt.out, parse_format(steady_opt.format));
    } else if (sweep->parsed()) {
      qb::Scenario sc = finalize(sweep_opt);
      if (sc.sweep.axis == qb::SweepAxis::none)
        throw qb::ConfigError("sweep: --sweep axis:start:stop:count is required");
      const qb::Table table = qb::run_steady_sweep(sc);
      qb::emit(table, sweep_opt.out, parse_format(sweep_opt.format));
    } else if (evolve->parsed()) {
      const qb::DynamicsResult res = qb::run_dynamics(finalize(evolve_opt));
      qb::emit(res.table, evolve_opt.out, parse_format(evolve_opt.format));
      qb::emit_power_sidecar(res.power, evolve_opt.out);
    } else if (power->parsed()) {
      qb::Scenario sc = finalize(power_opt);
      if (sc.sweep.axis == qb::SweepAxis::none)
        throw qb::ConfigError("power-scaling: --sweep axis:start:stop:count is required");
      const qb::Table table = qb::run_power_scaling(sc);
      qb::emit(table, power_opt.out, parse_format(power_opt.format));
    } else if (quench->parsed()) {
      const qb::Scenario sc = finalize(quench_opt);
      const qb::QuenchComparison cmp = qb::run_quench_comparison(sc);
      const qb::EmitFormat fmt = parse_format(quench_opt.format);
      const std::string base = quench_opt.out;
      qb::emit(cmp.continuous.table, with_suffix(base, "_continuous"), fmt);
      qb::emit(cmp.quenched.table, with_suffix(base, "_quench"), fmt);
      qb::emit(cmp.vacuum.table, with_suffix(base, "_vacuum"), fmt);
      if (fmt == qb::EmitFormat::csv) {
        qb::emit_power_sidecar(cmp.continuous.power, with_suffix(base, "_continuous"));
        qb::emit_power_sidecar(cmp.quenched.power, with_suffix(base, "_quench"));
        qb::emit_power_sidecar(cmp.vacuum.power, with_suffix(base, "_vacuum"));
      }
    } else if (golden->parsed()) {
      const std::vector<std::string> failures = qb::golden_check(golden_dir, golden_regen);
      if (golden_regen) {
        std::cout << "regenerated " << qb::golden_suite().size() << " golden tables in "
                  << golden_dir << "\n";
      } else if (failures.empty()) {
        std::cout << "golden-check: all " << qb::golden_suite().size() << " tables match\n";
      } else {
        for (const std::string& name : failures)
          std::cerr << "golden-check mismatch: " << name << "\n";
        return 2;
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const qb::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const qb::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
