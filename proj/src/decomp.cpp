#include "qb/linalg/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qb/error.hpp"

namespace qb::linalg {

namespace {

// Classic 2x2 Hermitian rotation parameters: given the pivot
// [[app, apq], [conj(apq), aqq]] compute (c, s, omega) with
// omega = apq/|apq| so that the rotation
//   [p'] = [ c      s*omega ] [p]
//   [q']   [-s*conj(omega) c ] [q]
// (applied as a congruence) annihilates the off-diagonal element.
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  cplx omega{1.0, 0.0};
};

Rotation make_rotation(double app, double aqq, cplx apq) {
  Rotation rot;
  const double beta = std::abs(apq);
  rot.omega = apq / beta;
  const double tau = (aqq - app) / (2.0 * beta);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = t * rot.c;
  return rot;
}

double offdiag_norm(const Matrix& a) {
  double acc = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

} // namespace

HermitianEig hermitian_eig(const Matrix& a) {
  const int n = a.rows();
  Matrix w = hermitize(a);
  Matrix v = Matrix::identity(n);

  const double scale = std::max(w.frobenius_norm(), 1e-300);
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(w) <= 1e-15 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = w(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const Rotation r = make_rotation(w(p, p).real(), w(q, q).real(), apq);
        const cplx so = r.s * r.omega;
        // w <- R^dagger w R : columns, then rows
        for (int i = 0; i < n; ++i) {
          const cplx wip = w(i, p), wiq = w(i, q);
          w(i, p) = r.c * wip - std::conj(so) * wiq;
          w(i, q) = so * wip + r.c * wiq;
        }
        for (int j = 0; j < n; ++j) {
          const cplx wpj = w(p, j), wqj = w(q, j);
          w(p, j) = r.c * wpj - so * wqj;
          w(q, j) = std::conj(so) * wpj + r.c * wqj;
        }
        for (int i = 0; i < n; ++i) {
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = r.c * vip - std::conj(so) * viq;
          v(i, q) = so * vip + r.c * viq;
        }
      }
    }
  }

  HermitianEig out;
  out.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = w(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });
  out.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

Matrix expm_hermitian_times(const Matrix& h, cplx factor) {
  const HermitianEig eig = hermitian_eig(h);
  const int n = h.rows();
  Matrix scaled = eig.vectors;
  for (int j = 0; j < n; ++j) {
    const cplx e = std::exp(factor * eig.values[j]);
    for (int i = 0; i < n; ++i) scaled(i, j) *= e;
  }
  return scaled * eig.vectors.adjoint();
}

Svd jacobi_svd(const Matrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  // Work on A^T so each original column is a contiguous row.
  Matrix w = a.transpose();
  Matrix vt = Matrix::identity(n); // rows are columns of V

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cplx* wp = w.data() + static_cast<std::size_t>(p) * m;
        cplx* wq = w.data() + static_cast<std::size_t>(q) * m;
        const double hpp = kernels::norm_sq(wp, m);
        const double hqq = kernels::norm_sq(wq, m);
        if (hpp == 0.0 || hqq == 0.0) continue;
        const cplx hpq = kernels::dot_conj(wp, wq, m);
        if (std::abs(hpq) <= 1e-15 * std::sqrt(hpp * hqq)) continue;
        rotated = true;
        const Rotation r = make_rotation(hpp, hqq, hpq);
        const cplx so = r.s * r.omega;
        for (int i = 0; i < m; ++i) {
          const cplx xp = wp[i], xq = wq[i];
          wp[i] = r.c * xp - std::conj(so) * xq;
          wq[i] = so * xp + r.c * xq;
        }
        cplx* vp = vt.data() + static_cast<std::size_t>(p) * n;
        cplx* vq = vt.data() + static_cast<std::size_t>(q) * n;
        for (int i = 0; i < n; ++i) {
          const cplx xp = vp[i], xq = vq[i];
          vp[i] = r.c * xp - std::conj(so) * xq;
          vq[i] = so * xp + r.c * xq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (int j = 0; j < n; ++j)
    sig[j] = std::sqrt(kernels::norm_sq(w.data() + static_cast<std::size_t>(j) * m, m));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sig[i] > sig[j]; });

  Svd out;
  out.singular.resize(n);
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.singular[j] = sig[src];
    for (int i = 0; i < n; ++i) out.v(i, j) = vt(src, i);
    if (sig[src] > 0.0) {
      const double inv = 1.0 / sig[src];
      for (int i = 0; i < m; ++i) out.u(i, j) = w(src, i) * inv;
    }
  }
  return out;
}

NullSpace null_space(const Matrix& a, double rel_tol, double min_gap_ratio) {
  const Svd svd = jacobi_svd(a);
  const int n = a.cols();
  NullSpace ns;
  const double smax = svd.singular.empty() ? 0.0 : svd.singular.front();
  if (smax == 0.0) {
    ns.dim = n;
    ns.basis = svd.v;
    return ns;
  }
  const double cut = rel_tol * smax;
  int kept = 0;
  while (kept < n && svd.singular[kept] >= cut) ++kept;
  ns.dim = n - kept;
  // When the cut separates two populated groups they must be well apart;
  // a clean "no null space" verdict (dim 0) needs no gap.
  if (ns.dim > 0 && kept > 0) {
    const double dropped = svd.singular[kept]; // largest zero-classified
    const double smallest_kept = svd.singular[kept - 1];
    if (dropped > 0.0 && smallest_kept / dropped < min_gap_ratio) {
      std::ostringstream msg;
      msg << "ambiguous null-space dimension: singular values straddle the cut (" << smallest_kept
          << " vs " << dropped << ", max " << smax << ")";
      throw NumericalError(msg.str());
    }
  }
  ns.basis = Matrix(n, ns.dim);
  for (int j = 0; j < ns.dim; ++j)
    for (int i = 0; i < n; ++i) ns.basis(i, j) = svd.v(i, kept + j);
  return ns;
}

} // namespace qb::linalg
