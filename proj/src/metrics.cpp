#include "qb/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qb/error.hpp"
#include "qb/linalg/decomp.hpp"

namespace qb {

BatteryHamiltonian battery_hamiltonian(int n_battery) {
  if (n_battery < 1) throw ConfigError("battery_hamiltonian: N_B must be >= 1");
  BatteryHamiltonian bh;
  bh.n_spins = n_battery;
  bh.h = Matrix(n_battery + 1, n_battery + 1);
  for (int i = 0; i <= n_battery; ++i) bh.h(i, i) = static_cast<double>(n_battery - i);
  return bh;
}

Spectrum state_spectrum(const Matrix& rho) {
  linalg::HermitianEig eig = linalg::hermitian_eig(rho);
  Spectrum s;
  const int n = rho.rows();
  s.values.resize(n);
  s.vectors = Matrix(n, n);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    double v = eig.values[n - 1 - j]; // descending
    if (v < 0.0 && v >= -1e-9) v = 0.0;
    s.values[j] = v;
    total += v;
    for (int i = 0; i < n; ++i) s.vectors(i, j) = eig.vectors(i, n - 1 - j);
  }
  if (total > 0.0 && std::abs(total - 1.0) < 1e-6)
    for (double& v : s.values) v /= total;
  return s;
}

Matrix passive_state(const Matrix& rho, const Matrix& h) {
  const linalg::HermitianEig he = linalg::hermitian_eig(h);
  const Spectrum sp = state_spectrum(rho);
  const int n = rho.rows();
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(i, j) += sp.values[k] * he.vectors(i, k) * std::conj(he.vectors(j, k));
  }
  return out;
}

double ergotropy(const Matrix& rho, const Matrix& h) {
  const linalg::HermitianEig he = linalg::hermitian_eig(h);
  const Spectrum sp = state_spectrum(rho);
  const double e_now = std::real((h * rho).trace());
  double e_passive = 0.0;
  for (std::size_t k = 0; k < sp.values.size(); ++k) e_passive += sp.values[k] * he.values[k];
  return std::max(0.0, e_now - e_passive);
}

std::pair<double, double> ergotropy_split(const Matrix& rho, const Matrix& h) {
  const double w = ergotropy(rho, h);
  const linalg::HermitianEig he = linalg::hermitian_eig(h);
  const int n = rho.rows();
  // populations of rho in the energy eigenbasis
  std::vector<double> pops(n);
  for (int j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += std::conj(he.vectors(a, j)) * rho(a, b) * he.vectors(b, j);
    pops[j] = std::max(0.0, acc.real());
  }
  double e_diag = 0.0;
  for (int j = 0; j < n; ++j) e_diag += pops[j] * he.values[j];
  std::vector<double> sorted = pops;
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
  double e_passive = 0.0;
  for (int j = 0; j < n; ++j) e_passive += sorted[j] * he.values[j];
  const double w_p = std::max(0.0, e_diag - e_passive);
  return {w_p, w - w_p};
}

double l1_coherence(const Matrix& rho, const Matrix& h) {
  const linalg::HermitianEig he = linalg::hermitian_eig(h);
  const Matrix b = he.vectors.adjoint() * rho * he.vectors;
  double c = 0.0;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (i != j) c += std::abs(b(i, j));
  return c;
}

double energy(const Matrix& rho, const Matrix& h) { return std::real((h * rho).trace()); }

Matrix partial_transpose(const DensityMatrix& rho, const SystemGeometry& geom, Subsystem which) {
  if (rho.basis != Basis::product)
    throw ConfigError("partial_transpose: convert to the product basis first");
  if (rho.data.rows() != geom.dim) throw ConfigError("partial_transpose: dimension mismatch");
  const int dc = geom.n_charger + 1;
  const int db = geom.n_battery + 1;
  Matrix out(geom.dim, geom.dim);
  for (int c1 = 0; c1 < dc; ++c1)
    for (int b1 = 0; b1 < db; ++b1)
      for (int c2 = 0; c2 < dc; ++c2)
        for (int b2 = 0; b2 < db; ++b2) {
          const int row = c1 * db + b1, col = c2 * db + b2;
          const int src_row = which == Subsystem::battery ? c1 * db + b2 : c2 * db + b1;
          const int src_col = which == Subsystem::battery ? c2 * db + b1 : c1 * db + b2;
          out(row, col) = rho.data(src_row, src_col);
        }
  return out;
}

double log_negativity(const DensityMatrix& rho, const SystemGeometry& geom) {
  const Matrix pt = partial_transpose(rho, geom, Subsystem::battery);
  const linalg::HermitianEig eig = linalg::hermitian_eig(pt);
  double trace_norm = 0.0;
  for (double v : eig.values) trace_norm += std::abs(v);
  return std::log2(trace_norm);
}

ErgotropyReport make_report(const DensityMatrix& rho_product, const SystemGeometry& geom) {
  const DensityMatrix rho_b = partial_trace_charger(rho_product, geom);
  const BatteryHamiltonian bh = battery_hamiltonian(geom.n_battery);
  ErgotropyReport rep;
  rep.energy = energy(rho_b.data, bh.h);
  rep.ergotropy = ergotropy(rho_b.data, bh.h);
  const auto [wp, wc] = ergotropy_split(rho_b.data, bh.h);
  rep.incoherent = wp;
  rep.coherent = wc;
  rep.coherence_l1 = l1_coherence(rho_b.data, bh.h);
  rep.log_neg = log_negativity(rho_product, geom);
  const double inv_n = 1.0 / geom.n_battery;
  rep.energy_per_spin = rep.energy * inv_n;
  rep.ergotropy_per_spin = rep.ergotropy * inv_n;
  rep.incoherent_per_spin = rep.incoherent * inv_n;
  rep.coherent_per_spin = rep.coherent * inv_n;
  return rep;
}

} // namespace qb
