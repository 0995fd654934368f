#pragma once

#include <utility>
#include <vector>

#include "qb/linalg/matrix.hpp"

namespace qb {

using linalg::Matrix;
using linalg::cplx;

// One total-spin-J Dicke ladder. Basis ordering is |J,M> with
// M = J, J-1, ..., -J (stretched state first).
struct SpinSector {
  double j = 0.0;
  int dim = 0;
  Matrix jp; // raising
  Matrix jm; // lowering
  Matrix jz;
};

enum class Basis { product, coupled };

// Charger (N_C spins) + battery (N_B spins), each restricted to its
// symmetric subspace J = N/2. The coupled basis is the direct sum of the
// sectors J = |J_C - J_B| ... J_C + J_B, ordered by descending J.
struct SystemGeometry {
  int n_charger = 0;
  int n_battery = 0;
  double j_charger = 0.0;
  double j_battery = 0.0;
  int dim = 0; // (N_C+1)(N_B+1)
  bool even_parity = true;
  std::vector<SpinSector> sectors;
  std::vector<int> sector_offsets; // start row of each sector in the coupled basis
  Matrix u_cg;                     // coupled = u_cg * product; unitary
};

// Hermitian, unit-trace state tagged with its basis. dim_charger/dim_battery
// describe the tensor factorization when basis == product.
struct DensityMatrix {
  Matrix data;
  Basis basis = Basis::product;
  int dim_charger = 0;
  int dim_battery = 0;
};

// Throws NumericalError unless Hermitian to 1e-12, unit trace to 1e-10 and
// min eigenvalue >= -1e-9.
void check_density(const DensityMatrix& rho);

bool is_half_integer(double x);

// Standard angular momentum matrices <J,M+-1|J^+-|J,M> = sqrt(J(J+1)-M(M+-1)).
SpinSector ladder_matrices(double j);

// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.
// Zero when M != m1+m2 or the triangle rule fails.
double clebsch_gordan(double j1, double j2, double m1, double m2, double big_j, double big_m);

SystemGeometry make_geometry(int n_charger, int n_battery);

DensityMatrix to_coupled(const DensityMatrix& rho, const SystemGeometry& geom);
DensityMatrix to_product(const DensityMatrix& rho, const SystemGeometry& geom);
std::vector<cplx> to_coupled(const std::vector<cplx>& v, const SystemGeometry& geom);
std::vector<cplx> to_product(const std::vector<cplx>& v, const SystemGeometry& geom);

// Battery reduced state (basis M = J_B ... -J_B). Product-basis input only.
DensityMatrix partial_trace_charger(const DensityMatrix& rho, const SystemGeometry& geom);

// Collective operators J^+- = J_C^+- + J_B^+- on the full product space.
Matrix collective_plus(const SystemGeometry& geom);
Matrix collective_minus(const SystemGeometry& geom);

} // namespace qb
