#pragma once

#include <vector>

#include "qb/spin.hpp"

namespace qb {

// Bloch angles of the charger preparation. theta in [0, pi]; phi is wrapped
// into [-pi, pi).
struct ChargerPrep {
  double theta = 0.0;
  double phi = 0.0;
};

ChargerPrep make_prep(double theta, double phi);

double wrap_angle(double a); // into [-pi, pi)

// Spin-coherent state of N spins in the Dicke basis |J=N/2, M>, M descending:
// amplitudes sqrt(C(2J, J+M)) cos^{J+M}(theta/2) sin^{J-M}(theta/2) e^{-iM phi}.
std::vector<cplx> spin_coherent(int n_spins, const ChargerPrep& prep);

// |theta,phi>_C (x) |down...down>_B as a pure product-basis density matrix.
DensityMatrix initial_state(const SystemGeometry& geom, const ChargerPrep& prep);

} // namespace qb
