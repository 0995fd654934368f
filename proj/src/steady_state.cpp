#include "qb/steady_state.hpp"

#include <cmath>
#include <sstream>

#include "qb/error.hpp"
#include "qb/linalg/decomp.hpp"

namespace qb {

using linalg::unvec;
using linalg::vec;

BiorthogonalSector biorthogonal_sector(double j, const ReservoirParams& params) {
  if (params.r <= 0.0)
    throw NumericalError(
        "biorthogonal_sector: construction is singular at r = 0; "
        "use the generic null-space path of steady_state");
  const SpinSector sec = ladder_matrices(j);
  BiorthogonalSector out;
  out.j = j;
  out.alpha = 0.5 * std::log(std::tanh(params.r));
  const double lam0 = std::sqrt(2.0 * std::sinh(2.0 * params.r));

  // exp(-i pi/2 Jy) columns give the rotated Dicke states
  Matrix jy = sec.jp;
  jy.add_scaled(-1.0, sec.jm);
  jy *= cplx{0.0, -0.5};
  const Matrix rot = linalg::expm_hermitian_times(jy, cplx{0.0, -0.5 * 3.14159265358979323846});

  const cplx beta_psi = cplx{out.alpha, -0.5 * params.varphi};
  const cplx beta_phi = cplx{-out.alpha, -0.5 * params.varphi};
  out.psi.resize(sec.dim);
  out.phi.resize(sec.dim);
  out.lambdas.resize(sec.dim);
  for (int k = 0; k < sec.dim; ++k) {
    const double m = j - k;
    out.lambdas[k] = lam0 * m;
    std::vector<cplx> psi(sec.dim), phi(sec.dim);
    for (int i = 0; i < sec.dim; ++i) {
      const double mi = j - i;
      psi[i] = std::exp(beta_psi * mi) * rot(i, k);
      phi[i] = std::exp(beta_phi * mi) * rot(i, k);
    }
    // ||Psi|| = 1; <Phi|Psi> = 1 then holds with the reciprocal scale on Phi
    const double a = 1.0 / linalg::norm(psi);
    for (auto& x : psi) x *= a;
    for (auto& x : phi) x *= 1.0 / a;
    const cplx overlap = kernels::dot_conj(phi.data(), psi.data(), sec.dim);
    for (auto& x : phi) x /= std::conj(overlap);
    out.psi[k] = std::move(psi);
    out.phi[k] = std::move(phi);
  }
  return out;
}

std::pair<std::vector<cplx>, std::vector<cplx>> dark_states_n1(const ReservoirParams& params) {
  const double n = params.n_bar;
  const double mabs = std::abs(params.m_bar);
  const double s2 = 1.0 / std::sqrt(2.0);
  std::vector<cplx> d1 = {0.0, s2, -s2, 0.0};
  const double pref = std::sqrt((1.0 + n) / (1.0 + 2.0 * n));
  std::vector<cplx> d2 = {
      pref * (mabs / (1.0 + n)) * std::exp(cplx{0.0, -params.varphi}), 0.0, 0.0, -pref};
  return {d1, d2};
}

namespace {

struct BlockNull {
  int dim = 0; // 0 or 1 for this model
  std::vector<cplx> right;
  std::vector<cplx> left; // scaled so that left^dag . right = 1
};

BlockNull block_null(const Matrix& gen) {
  const linalg::NullSpace right = linalg::null_space(gen);
  BlockNull out;
  if (right.dim == 0) return out;
  const linalg::NullSpace left = linalg::null_space(gen.adjoint());
  if (left.dim != right.dim)
    throw NumericalError("steady_state: left/right null-space dimensions disagree");
  if (right.dim != 1) {
    std::ostringstream msg;
    msg << "steady_state: unexpected null-space dimension " << right.dim;
    throw NumericalError(msg.str());
  }
  out.dim = 1;
  const int n = gen.rows();
  out.right.assign(right.basis.data(), right.basis.data() + n);
  out.left.assign(left.basis.data(), left.basis.data() + n);
  return out;
}

void biorthonormalize(BlockNull& bn) {
  const cplx s =
      kernels::dot_conj(bn.left.data(), bn.right.data(), static_cast<int>(bn.right.size()));
  if (std::abs(s) < 1e-12)
    throw NumericalError("steady_state: defective null pair, <left|right> ~ 0");
  for (auto& x : bn.left) x /= std::conj(s);
}

} // namespace

DensityMatrix steady_state(const DensityMatrix& rho0, const SystemGeometry& geom,
                           const ReservoirParams& params, SteadyStateWeights* weights) {
  const Basis input_basis = rho0.basis;
  const DensityMatrix rho_c = input_basis == Basis::coupled ? rho0 : to_coupled(rho0, geom);

  const int ns = static_cast<int>(geom.sectors.size());
  DensityMatrix out = rho_c;
  out.data = Matrix(geom.dim, geom.dim);
  Matrix cmat(ns, ns);

  for (int si = 0; si < ns; ++si) {
    for (int sk = si; sk < ns; ++sk) {
      const int oj = geom.sector_offsets[si], dj = geom.sectors[si].dim;
      const int ok = geom.sector_offsets[sk], dk = geom.sectors[sk].dim;
      const Matrix x0 = rho_c.data.block(oj, ok, dj, dk);

      BlockNull bn = block_null(liouvillian_block(geom.sectors[si], geom.sectors[sk], params));
      if (bn.dim == 0) continue;

      Matrix rep = unvec(bn.right, dj, dk);
      if (si == sk) {
        // pick the Hermitian representative and give it unit trace, so the
        // diagonal weight is the trapped sector population
        const Matrix herm = hermitize(rep);
        Matrix anti = rep;
        anti -= herm;
        rep = herm.frobenius_norm() >= anti.frobenius_norm() ? herm : hermitize(rep * cplx{0.0, 1.0});
        const double tr = rep.trace().real();
        if (std::abs(tr) < 1e-12)
          throw NumericalError("steady_state: traceless diagonal null block");
        rep *= 1.0 / tr;
      } else {
        // deterministic phase: largest component real positive
        int imax = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < bn.right.size(); ++i)
          if (std::abs(bn.right[i]) > best) {
            best = std::abs(bn.right[i]);
            imax = static_cast<int>(i);
          }
        rep *= std::abs(bn.right[imax]) / bn.right[imax];
      }
      bn.right = vec(rep);
      biorthonormalize(bn);

      const std::vector<cplx> x0v = vec(x0);
      const cplx c =
          kernels::dot_conj(bn.left.data(), x0v.data(), static_cast<int>(x0v.size()));
      cmat(si, sk) = c;
      cmat(sk, si) = std::conj(c);

      Matrix block = rep;
      block *= c;
      out.data.set_block(oj, ok, block);
      if (sk != si) out.data.set_block(ok, oj, block.adjoint());
    }
  }

  out.data = hermitize(out.data);
  const double tr = out.data.trace().real();
  if (std::abs(tr - 1.0) > 1e-6)
    throw NumericalError("steady_state: projected state trace departs from 1");
  out.data *= 1.0 / tr;

  if (weights != nullptr) weights->c = cmat;

  DensityMatrix result = input_basis == Basis::coupled ? out : to_product(out, geom);
  check_density(result);
  return result;
}

Matrix analytic_rho_b_n1(double theta, double delta, const ReservoirParams& params) {
  const double n = params.n_bar;
  const double mabs = std::abs(params.m_bar);
  const double den = 8.0 * (1.0 + 2.0 * n);
  const cplx off = -2.0 * std::sin(theta) * (1.0 + n + mabs * std::exp(cplx{0.0, delta}));
  Matrix rho(2, 2);
  rho(0, 0) = (7.0 + 8.0 * n - std::cos(theta)) / den;
  rho(0, 1) = off / den;
  rho(1, 0) = std::conj(off) / den;
  rho(1, 1) = (1.0 + 8.0 * n + std::cos(theta)) / den;
  return rho;
}

double analytic_ergotropy_n1(double theta, double delta, const ReservoirParams& params) {
  const double n = params.n_bar;
  const double mabs = std::abs(params.m_bar);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double root = std::sqrt(10.0 - 6.0 * std::cos(theta) + (3.0 + 12.0 * n + 8.0 * n * n) * s2 +
                                8.0 * (1.0 + n) * mabs * s2 * std::cos(delta));
  return (-3.0 + std::cos(theta) + root) / (8.0 * (1.0 + 2.0 * n));
}

Matrix analytic_rho_b_n2_theta0(const ReservoirParams& params, double delta) {
  const double n = params.n_bar;
  const double mabs = std::abs(params.m_bar);
  const double den = 12.0 * (1.0 + 2.0 * n) * (3.0 + 8.0 * n + 8.0 * n * n);
  Matrix rho(3, 3);
  rho(0, 0) = (19.0 + 79.0 * n + 120.0 * n * n + 64.0 * n * n * n) / den;
  rho(1, 1) = (13.0 + 58.0 * n + 96.0 * n * n + 64.0 * n * n * n) / den;
  rho(2, 2) = (4.0 + 31.0 * n + 72.0 * n * n + 64.0 * n * n * n) / den;
  rho(0, 2) = 3.0 * mabs * std::exp(cplx{0.0, delta}) / den;
  rho(2, 0) = std::conj(rho(0, 2));
  return rho;
}

} // namespace qb
