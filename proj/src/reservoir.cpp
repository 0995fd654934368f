#include "qb/reservoir.hpp"

#include <cmath>

#include "qb/error.hpp"
#include "qb/state_prep.hpp"

namespace qb {

ReservoirParams squeezing_params(double r, double varphi, double gamma) {
  if (r < 0.0) throw ConfigError("squeezing_params: r must be >= 0");
  if (gamma <= 0.0) throw ConfigError("squeezing_params: gamma must be > 0");
  ReservoirParams p;
  p.r = r;
  p.varphi = varphi;
  p.gamma = gamma;
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  p.n_bar = sh * sh;
  p.m_bar = sh * ch * std::exp(cplx{0.0, varphi});
  return p;
}

RelativePhase relative_phase(double varphi, double phi) {
  return RelativePhase{wrap_angle(varphi - 2.0 * phi)};
}

Matrix jump_operator(const ReservoirParams& params, const Matrix& jplus, const Matrix& jminus) {
  if (jplus.rows() != jminus.rows() || jplus.cols() != jminus.cols() ||
      jplus.rows() != jplus.cols())
    throw ConfigError("jump_operator: operator dimension mismatch");
  const cplx half_phase = std::exp(cplx{0.0, 0.5 * params.varphi});
  Matrix l = jminus * (std::cosh(params.r) * half_phase);
  l.add_scaled(std::sinh(params.r) / half_phase, jplus);
  return l;
}

Matrix lindblad_rhs_compact(const Matrix& rho, const Matrix& jump, double gamma) {
  if (rho.rows() != jump.rows() || rho.cols() != jump.cols())
    throw ConfigError("lindblad_rhs_compact: dimension mismatch");
  const Matrix jd = jump.adjoint();
  const Matrix jdj = jd * jump;
  Matrix out = (jump * rho) * jd;
  out *= 2.0;
  out.add_scaled(-1.0, jdj * rho);
  out.add_scaled(-1.0, rho * jdj);
  out *= gamma;
  return out;
}

namespace {

// 2 A rho B - B A rho - rho B A, the building block of every term in the
// general form (with B = A^dag for the number terms).
Matrix sandwich(const Matrix& rho, const Matrix& a, const Matrix& b) {
  const Matrix ba = b * a;
  Matrix out = (a * rho) * b;
  out *= 2.0;
  out.add_scaled(-1.0, ba * rho);
  out.add_scaled(-1.0, rho * ba);
  return out;
}

} // namespace

Matrix lindblad_rhs_general(const Matrix& rho, double n_bar, cplx m_bar, const Matrix& jplus,
                            const Matrix& jminus, double gamma) {
  if (n_bar < 0.0) throw ConfigError("lindblad_rhs_general: n_bar must be >= 0");
  if (std::norm(m_bar) > n_bar * (n_bar + 1.0) + 1e-12)
    throw ConfigError("lindblad_rhs_general: unphysical m_bar, |m|^2 > n(n+1)");
  if (rho.rows() != jplus.rows()) throw ConfigError("lindblad_rhs_general: dimension mismatch");

  Matrix out = sandwich(rho, jminus, jplus);
  out *= (n_bar + 1.0);
  if (n_bar != 0.0) out.add_scaled(n_bar, sandwich(rho, jplus, jminus));
  if (m_bar != cplx{0.0, 0.0}) {
    out.add_scaled(m_bar, sandwich(rho, jminus, jminus));
    out.add_scaled(std::conj(m_bar), sandwich(rho, jplus, jplus));
  }
  out *= gamma;
  return out;
}

Matrix liouvillian_block(const SpinSector& sector_j, const SpinSector& sector_k,
                         const ReservoirParams& params) {
  const Matrix lj = jump_operator(params, sector_j.jp, sector_j.jm);
  const Matrix lk = jump_operator(params, sector_k.jp, sector_k.jm);
  const Matrix idj = Matrix::identity(sector_j.dim);
  const Matrix idk = Matrix::identity(sector_k.dim);
  Matrix block = kron(lk.conjugate(), lj);
  block *= 2.0;
  block.add_scaled(-1.0, kron(idk, lj.adjoint() * lj));
  block.add_scaled(-1.0, kron((lk.adjoint() * lk).transpose(), idj));
  return block;
}

} // namespace qb
