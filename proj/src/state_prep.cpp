#include "qb/state_prep.hpp"

#include <cmath>

#include "qb/error.hpp"

namespace qb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

ChargerPrep make_prep(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi)) throw ConfigError("theta must lie in [0, pi]");
  return ChargerPrep{theta, wrap_angle(phi)};
}

std::vector<cplx> spin_coherent(int n_spins, const ChargerPrep& prep) {
  if (n_spins < 1) throw ConfigError("spin_coherent: N must be >= 1");
  const double j = 0.5 * n_spins;
  const int dim = n_spins + 1;
  const double c = std::cos(0.5 * prep.theta);
  const double s = std::sin(0.5 * prep.theta);
  std::vector<cplx> v(dim);
  for (int i = 0; i < dim; ++i) {
    const double m = j - i;
    const double jpm = j + m; // = n_spins - i
    const double jmm = j - m; // = i
    // log-gamma binomials keep this stable out to N ~ 30
    const double ln_binom =
        std::lgamma(2.0 * j + 1.0) - std::lgamma(jpm + 1.0) - std::lgamma(jmm + 1.0);
    double amp = 0.0;
    if (c == 0.0 || s == 0.0) {
      // endpoint angles: only the stretched components survive (0^0 := 1)
      amp = (c == 0.0 && jpm == 0.0) || (s == 0.0 && jmm == 0.0) ? 1.0 : 0.0;
      if (c == 0.0 && s == 0.0) amp = 0.0; // unreachable, theta in [0,pi]
    } else {
      amp = std::exp(0.5 * ln_binom + jpm * std::log(c) + jmm * std::log(s));
    }
    v[i] = amp * std::exp(cplx{0.0, -m * prep.phi});
  }
  return v;
}

DensityMatrix initial_state(const SystemGeometry& geom, const ChargerPrep& prep) {
  const std::vector<cplx> charger = spin_coherent(geom.n_charger, prep);
  const int dc = geom.n_charger + 1;
  const int db = geom.n_battery + 1;
  std::vector<cplx> full(static_cast<std::size_t>(dc) * db, cplx{0.0, 0.0});
  // battery fully down-polarized: last Dicke index (M = -J_B)
  for (int ic = 0; ic < dc; ++ic) full[static_cast<std::size_t>(ic) * db + (db - 1)] = charger[ic];

  DensityMatrix rho;
  rho.data = Matrix(geom.dim, geom.dim);
  rho.basis = Basis::product;
  rho.dim_charger = dc;
  rho.dim_battery = db;
  for (int i = 0; i < geom.dim; ++i)
    for (int k = 0; k < geom.dim; ++k) rho.data(i, k) = full[i] * std::conj(full[k]);
  return rho;
}

} // namespace qb
