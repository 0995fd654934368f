#include "qb/linalg/kernels.hpp"

#ifdef QB_HAVE_NEON_BACKEND

#include <arm_neon.h>

namespace qb::kernels::neon {

bool supported() { return true; } // NEON is baseline on aarch64

namespace {

// One float64x2_t holds a single complex double [re, im].
// acc += w * b using two fused ops: acc += wr*b, then acc += [-wi, wi]*swap(b).
inline float64x2_t cmul_acc(float64x2_t acc, double wr, float64x2_t wiv, float64x2_t b) {
  acc = vfmaq_n_f64(acc, b, wr);
  return vfmaq_f64(acc, vextq_f64(b, b, 1), wiv);
}

inline float64x2_t make_wiv(double wi) {
  const double pair[2] = {-wi, wi};
  return vld1q_f64(pair);
}

} // namespace

void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (int i = 0; i < m; ++i) {
    double* crow = cd + static_cast<std::size_t>(i) * n * 2;
    for (int l = 0; l < k; ++l) {
      const cplx ail = a[static_cast<std::size_t>(i) * k + l];
      if (ail == cplx{0.0, 0.0}) continue;
      const double wr = ail.real();
      const float64x2_t wiv = make_wiv(ail.imag());
      const double* brow = bd + static_cast<std::size_t>(l) * n * 2;
      for (int j = 0; j < n; ++j) {
        const float64x2_t acc = vld1q_f64(crow + 2 * j);
        const float64x2_t bv = vld1q_f64(brow + 2 * j);
        vst1q_f64(crow + 2 * j, cmul_acc(acc, wr, wiv, bv));
      }
    }
  }
}

void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  const std::size_t total = static_cast<std::size_t>(m) * n;
  for (std::size_t i = 0; i < total; ++i) c[i] = cplx{0.0, 0.0};
  matmul_acc(a, b, c, m, k, n);
}

void axpy(cplx alpha, const cplx* x, cplx* y, int n) {
  const double wr = alpha.real();
  const float64x2_t wiv = make_wiv(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (int i = 0; i < n; ++i) {
    const float64x2_t acc = vld1q_f64(yd + 2 * i);
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    vst1q_f64(yd + 2 * i, cmul_acc(acc, wr, wiv, xv));
  }
}

void scale(cplx alpha, cplx* x, int n) {
  const double wr = alpha.real();
  const float64x2_t wiv = make_wiv(alpha.imag());
  double* xd = reinterpret_cast<double*>(x);
  for (int i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    float64x2_t out = vmulq_n_f64(xv, wr);
    out = vfmaq_f64(out, vextq_f64(xv, xv, 1), wiv);
    vst1q_f64(xd + 2 * i, out);
  }
}

double norm_sq(const cplx* x, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (int i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    acc = vfmaq_f64(acc, xv, xv);
  }
  return vaddvq_f64(acc);
}

cplx dot_conj(const cplx* x, const cplx* y, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  float64x2_t racc = vdupq_n_f64(0.0);
  float64x2_t iacc = vdupq_n_f64(0.0);
  for (int i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    const float64x2_t yv = vld1q_f64(yd + 2 * i);
    racc = vfmaq_f64(racc, xv, yv);
    iacc = vfmaq_f64(iacc, vextq_f64(xv, xv, 1), yv);
  }
  const double re = vaddvq_f64(racc);
  const double im = vgetq_lane_f64(iacc, 1) - vgetq_lane_f64(iacc, 0);
  return {re, im};
}

} // namespace qb::kernels::neon

#endif // QB_HAVE_NEON_BACKEND
