#pragma once

#include "qb/spin.hpp"

namespace qb {

// Squeezed-reservoir parameters. n_bar = sinh^2 r, m_bar = sinh r cosh r e^{i varphi},
// so the pure-squeezed-vacuum identity n_bar(n_bar+1) = |m_bar|^2 holds by
// construction. gamma is the collective decay rate (simulation unit 1).
struct ReservoirParams {
  double r = 0.0;
  double varphi = 0.0;
  double n_bar = 0.0;
  cplx m_bar{0.0, 0.0};
  double gamma = 1.0;
};

// delta = varphi - 2*phi, wrapped into [-pi, pi). The only phase combination
// observables depend on.
struct RelativePhase {
  double delta = 0.0;
};

ReservoirParams squeezing_params(double r, double varphi, double gamma = 1.0);
RelativePhase relative_phase(double varphi, double phi);

// Bogoliubov-mixed jump operator
//   L = J^- cosh(r) e^{+i varphi/2} + J^+ sinh(r) e^{-i varphi/2}.
Matrix jump_operator(const ReservoirParams& params, const Matrix& jplus, const Matrix& jminus);

// gamma (2 L rho L^dag - L^dag L rho - rho L^dag L)
Matrix lindblad_rhs_compact(const Matrix& rho, const Matrix& jump, double gamma);

// Four-term squeezed-bath generator
//   gamma (n+1) D[J^-] + gamma n D[J^+]
//   + gamma m_bar (2 J^- rho J^- - {J^-J^-, rho})
//   + gamma conj(m_bar) (2 J^+ rho J^+ - {J^+J^+, rho})
// with D[O] rho = 2 O rho O^dag - {O^dag O, rho}. For n(n+1) = |m|^2 this
// equals lindblad_rhs_compact with the jump operator above.
Matrix lindblad_rhs_general(const Matrix& rho, double n_bar, cplx m_bar, const Matrix& jplus,
                            const Matrix& jminus, double gamma);

// Column-vectorized generator of the (J,K) coherence block:
//   2 conj(L_K) kron L_J - I kron (L_J^dag L_J) - (L_K^dag L_K)^T kron I.
// Acts on vec(X) for X of shape dim_J x dim_K; gamma is factored out.
Matrix liouvillian_block(const SpinSector& sector_j, const SpinSector& sector_k,
                         const ReservoirParams& params);

} // namespace qb
