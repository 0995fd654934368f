#include "qb/linalg/kernels.hpp"

#ifdef QB_HAVE_AVX2_BACKEND

#include <immintrin.h>

// Compiled with -mavx2 -mfma (see src/CMakeLists.txt). Nothing here runs
// unless avx2::supported() returned true at dispatch time.

namespace qb::kernels::avx2 {

bool supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

// One __m256d holds two complex doubles [re0, im0, re1, im1].
// acc += w * b for a broadcast complex w: with wr/wi broadcast across lanes,
// fmaddsub(wr, b, wi*swap(b)) yields [wr*re - wi*im, wr*im + wi*re] per pair.
inline __m256d cmul_acc(__m256d acc, __m256d wr, __m256d wi, __m256d b) {
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(wr, b, _mm256_mul_pd(wi, bsw)));
}

} // namespace

void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  const int n2 = n & ~1;
  for (int i = 0; i < m; ++i) {
    double* crow = cd + static_cast<std::size_t>(i) * n * 2;
    for (int l = 0; l < k; ++l) {
      const cplx ail = a[static_cast<std::size_t>(i) * k + l];
      if (ail == cplx{0.0, 0.0}) continue;
      const __m256d wr = _mm256_set1_pd(ail.real());
      const __m256d wi = _mm256_set1_pd(ail.imag());
      const double* brow = bd + static_cast<std::size_t>(l) * n * 2;
      int j = 0;
      for (; j < n2; j += 2) {
        const __m256d acc = _mm256_loadu_pd(crow + 2 * j);
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, cmul_acc(acc, wr, wi, bv));
      }
      if (j < n) {
        cplx* ctail = reinterpret_cast<cplx*>(crow) + j;
        const cplx* btail = reinterpret_cast<const cplx*>(brow) + j;
        *ctail += ail * *btail;
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
  const __m256d wr = _mm256_set1_pd(alpha.real());
  const __m256d wi = _mm256_set1_pd(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const int n2 = n & ~1;
  int i = 0;
  for (; i < n2; i += 2) {
    const __m256d acc = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, cmul_acc(acc, wr, wi, xv));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cplx alpha, cplx* x, int n) {
  const __m256d wr = _mm256_set1_pd(alpha.real());
  const __m256d wi = _mm256_set1_pd(alpha.imag());
  double* xd = reinterpret_cast<double*>(x);
  const int n2 = n & ~1;
  int i = 0;
  for (; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d xsw = _mm256_permute_pd(xv, 0x5);
    _mm256_storeu_pd(xd + 2 * i, _mm256_fmaddsub_pd(wr, xv, _mm256_mul_pd(wi, xsw)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

double norm_sq(const cplx* x, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  const int n2 = n & ~1;
  int i = 0;
  for (; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double out = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return out;
}

cplx dot_conj(const cplx* x, const cplx* y, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  // Real part: lane-wise x*y then pair sums. Imag part: swap(x)*y gives
  // [xi*yr, xr*yi]; per pair the imag contribution is odd lane - even lane.
  __m256d racc = _mm256_setzero_pd();
  __m256d iacc = _mm256_setzero_pd();
  const int n2 = n & ~1;
  int i = 0;
  for (; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    racc = _mm256_fmadd_pd(xv, yv, racc);
    iacc = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, iacc);
  }
  alignas(32) double rl[4], il[4];
  _mm256_store_pd(rl, racc);
  _mm256_store_pd(il, iacc);
  double re = rl[0] + rl[1] + rl[2] + rl[3];
  double im = (il[1] - il[0]) + (il[3] - il[2]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

} // namespace qb::kernels::avx2

#endif // QB_HAVE_AVX2_BACKEND
