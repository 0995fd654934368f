#include "qb/linalg/kernels.hpp"



namespace qb::kernels::scalar {

// Reference matmul: accumulate row i of c as sum_l a(i,l) * b(l, :).
// The b-row walk keeps the inner loop contiguous for both c and b, which is
// also the access pattern the SIMD variants use.
void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    cplx* crow = c + static_cast<std::size_t>(i) * n;
    for (int l = 0; l < k; ++l) {
      const cplx ail = a[static_cast<std::size_t>(i) * k + l];
      if (ail == cplx{0.0, 0.0}) continue;
      const cplx* brow = b + static_cast<std::size_t>(l) * n;
      for (int j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  const std::size_t total = static_cast<std::size_t>(m) * n;
  for (std::size_t i = 0; i < total; ++i) c[i] = cplx{0.0, 0.0};
  matmul_acc(a, b, c, m, k, n);
}

void axpy(cplx alpha, const cplx* x, cplx* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cplx alpha, cplx* x, int n) {
  for (int i = 0; i < n; ++i) x[i] *= alpha;
}

double norm_sq(const cplx* x, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

cplx dot_conj(const cplx* x, const cplx* y, int n) {
  double re = 0.0, im = 0.0;
  for (int i = 0; i < n; ++i) {
    const cplx p = std::conj(x[i]) * y[i];
    re += p.real();
    im += p.imag();
  }
  return {re, im};
}

} // namespace qb::kernels::scalar
