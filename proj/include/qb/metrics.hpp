#pragma once

#include <utility>
#include <vector>

#include "qb/spin.hpp"

namespace qb {

// Free battery Hamiltonian H = hbar*omega (J_B^z + N_B/2) in the battery
// Dicke basis (M descending), with hbar*omega = 1. Ground state energy 0,
// eigenvalues 0..N_B.
struct BatteryHamiltonian {
  int n_spins = 0;
  Matrix h;
};

BatteryHamiltonian battery_hamiltonian(int n_battery);

// State eigenvalues descending, eigenvectors as columns. Eigenvalues in
// [-1e-9, 0) are integrator round-off: clipped to zero, then renormalized.
struct Spectrum {
  std::vector<double> values;
  Matrix vectors;
};

Spectrum state_spectrum(const Matrix& rho);

// Populations anti-ordered against energies; no work extractable.
Matrix passive_state(const Matrix& rho, const Matrix& h);

// W = Tr(H rho) - Tr(H passive(rho)) >= 0.
double ergotropy(const Matrix& rho, const Matrix& h);

// (W_P, W_C): ergotropy of the energy-dephased state, and the remainder.
std::pair<double, double> ergotropy_split(const Matrix& rho, const Matrix& h);

// Sum of |off-diagonal| entries in the eigenbasis of h.
double l1_coherence(const Matrix& rho, const Matrix& h);

double energy(const Matrix& rho, const Matrix& h);

enum class Subsystem { charger, battery };

Matrix partial_transpose(const DensityMatrix& rho, const SystemGeometry& geom, Subsystem which);

// log2 of the trace norm of the partial transpose over the battery.
// Product-basis input required.
double log_negativity(const DensityMatrix& rho, const SystemGeometry& geom);

// Per-state bundle of every reported metric, with per-battery-spin
// normalizations used in the sweeps and plots.
struct ErgotropyReport {
  double energy = 0.0;     // E, units hbar*omega
  double ergotropy = 0.0;  // W
  double incoherent = 0.0; // W_P
  double coherent = 0.0;   // W_C
  double coherence_l1 = 0.0;
  double log_neg = 0.0; // bits
  double energy_per_spin = 0.0;
  double ergotropy_per_spin = 0.0;
  double incoherent_per_spin = 0.0;
  double coherent_per_spin = 0.0;
};

ErgotropyReport make_report(const DensityMatrix& rho_product, const SystemGeometry& geom);

} // namespace qb
