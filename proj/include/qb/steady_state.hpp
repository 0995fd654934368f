#pragma once

#include <utility>
#include <vector>

#include "qb/reservoir.hpp"
#include "qb/spin.hpp"

namespace qb {

// Biorthogonal right/left eigenvectors of the jump operator restricted to
// one J sector:
//   L |Psi_{J,M}> = lambda_{J,M} |Psi_{J,M}>,  L^dag |Phi_{J,M}> = lambda* |Phi_{J,M}>,
//   lambda_{J,M} = sqrt(2 sinh 2r) M,   <Phi_M|Psi_M'> = delta_{MM'}.
// Construction: Psi = A exp[(alpha - i varphi/2) Jz] exp(-i pi/2 Jy) |J,M>,
// Phi the same with alpha -> -alpha, where exp(2 alpha) = tanh(r).
// Normalization gauge: ||Psi|| = 1 and <Phi|Psi> = 1.
struct BiorthogonalSector {
  double j = 0.0;
  double alpha = 0.0;
  std::vector<std::vector<cplx>> psi; // index k, M = J - k
  std::vector<std::vector<cplx>> phi;
  std::vector<double> lambdas;
};

// Requires r > 0 (alpha diverges at r = 0; the generic null-space path in
// steady_state covers that limit).
BiorthogonalSector biorthogonal_sector(double j, const ReservoirParams& params);

// The two N_C = N_B = 1 dark states, in the product basis {uu, ud, du, dd}:
// the singlet (ud - du)/sqrt(2), and
// sqrt((1+n)/(1+2n)) (|m| e^{-i varphi}/(1+n) uu - dd).
std::pair<std::vector<cplx>, std::vector<cplx>> dark_states_n1(const ReservoirParams& params);

// Stationary sector weights C_JK, indexed by sector position in the
// geometry's descending-J order. Zero where no stationary element exists.
struct SteadyStateWeights {
  Matrix c;
};

// Direct steady state by per-block null-space projection of rho0. Blocks with
// empty null space decay to zero; ambiguous null dimensions raise
// NumericalError. The result is returned in the basis of the input.
DensityMatrix steady_state(const DensityMatrix& rho0, const SystemGeometry& geom,
                           const ReservoirParams& params, SteadyStateWeights* weights = nullptr);

// Closed-form N_C = N_B = 1 steady-state battery matrix, basis {down, up}.
Matrix analytic_rho_b_n1(double theta, double delta, const ReservoirParams& params);

// Closed-form N_C = N_B = 1 steady-state ergotropy (units hbar*omega).
double analytic_ergotropy_n1(double theta, double delta, const ReservoirParams& params);

// Closed-form N_C = N_B = 2, theta = 0 battery matrix in the triplet basis
// {|1,-1>, |1,0>, |1,1>}.
Matrix analytic_rho_b_n2_theta0(const ReservoirParams& params, double delta);

} // namespace qb
