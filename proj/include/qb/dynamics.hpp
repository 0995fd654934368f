#pragma once

#include <limits>
#include <vector>

#include "qb/metrics.hpp"
#include "qb/reservoir.hpp"
#include "qb/spin.hpp"

namespace qb {

// Piecewise-constant squeezing schedule: r(t) = r_initial for t < t_q, then 0.
// t_q = infinity means continuous squeezing, t_q = 0 always-vacuum.
struct QuenchSchedule {
  double r_initial = 0.0;
  double t_q = std::numeric_limits<double>::infinity();
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states; // product basis
  SystemGeometry geometry;
};

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> e_b;  // energy per battery spin
  std::vector<double> w_b;  // ergotropy per battery spin
  std::vector<double> w_p;  // incoherent part, per spin
  std::vector<double> w_c;  // coherent part, per spin
  std::vector<double> c_b;  // l1 coherence of the battery state
  std::vector<double> s_b;  // charger-battery logarithmic negativity (bits)
};

struct PowerSeries {
  std::vector<double> times;
  std::vector<double> p_w; // d(w_b)/dt
  std::vector<double> p_e; // d(e_b)/dt
  double p_w_max = 0.0;
  double t_w_max = 0.0;
  double p_e_max = 0.0;
  double t_e_max = 0.0;
};

// Integrates the master equation with an adaptive Dormand-Prince 5(4) pair
// (rtol 1e-9, atol 1e-11) on the density matrix, restarting exactly at the
// quench time. States are recorded on a uniform grid of grid_points times
// spanning [0, t_end]. varphi and gamma come from params; r comes from the
// schedule.
Trajectory evolve(const DensityMatrix& rho0, const SystemGeometry& geom,
                  const ReservoirParams& params, const QuenchSchedule& schedule, double t_end,
                  int grid_points = 400);

// Open-ended run until ||d rho/dt||_F < 1e-10 sustained over one time unit.
// Throws NumericalError if max_t is reached first.
DensityMatrix evolve_to_steady(const DensityMatrix& rho0, const SystemGeometry& geom,
                               const ReservoirParams& params, double max_t = 600.0);

ObservableSeries observables_along(const Trajectory& traj, const BatteryHamiltonian& hb);

// Centered finite differences with local quadratic refinement of the maxima;
// the t = 0 derivative is one-sided and maxima are searched over t > 0.
PowerSeries charging_power(const ObservableSeries& series);

} // namespace qb
