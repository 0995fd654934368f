#pragma once

// Low-level dense complex kernels backing all matrix arithmetic in the
// simulator. Every kernel has a scalar reference implementation plus SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime from
// CPU capabilities. The scalar path is the semantic reference; the SIMD
// paths are equivalence-tested against it.
//
// Layout conventions: matrices are row-major and contiguous, values are
// std::complex<double> (interleaved re/im pairs).

#include <complex>
#include <cstddef>

namespace qb::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2, neon };

// Backend chosen for this process. Resolution order: QB_KERNEL_BACKEND
// environment variable ("scalar", "avx2", "neon", "auto"), then CPU probe.
Backend active_backend();
const char* backend_name(Backend b);

// c (m x n) = a (m x k) * b (k x n)
void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
// c (m x n) += a (m x k) * b (k x n)
void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
// y[i] += alpha * x[i]
void axpy(cplx alpha, const cplx* x, cplx* y, int n);
// x[i] *= alpha
void scale(cplx alpha, cplx* x, int n);
// sum |x[i]|^2
double norm_sq(const cplx* x, int n);
// sum conj(x[i]) * y[i]
cplx dot_conj(const cplx* x, const cplx* y, int n);

// Per-backend entry points, exposed for equivalence tests. The neon
// namespace exists only on aarch64 builds, avx2 only on x86-64.
namespace scalar {
void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
void axpy(cplx alpha, const cplx* x, cplx* y, int n);
void scale(cplx alpha, cplx* x, int n);
double norm_sq(const cplx* x, int n);
cplx dot_conj(const cplx* x, const cplx* y, int n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define QB_HAVE_AVX2_BACKEND 1
namespace avx2 {
bool supported();
void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
void axpy(cplx alpha, const cplx* x, cplx* y, int n);
void scale(cplx alpha, cplx* x, int n);
double norm_sq(const cplx* x, int n);
cplx dot_conj(const cplx* x, const cplx* y, int n);
} // namespace avx2
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define QB_HAVE_NEON_BACKEND 1
namespace neon {
bool supported();
void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);
void axpy(cplx alpha, const cplx* x, cplx* y, int n);
void scale(cplx alpha, cplx* x, int n);
double norm_sq(const cplx* x, int n);
cplx dot_conj(const cplx* x, const cplx* y, int n);
} // namespace neon
#endif

} // namespace qb::kernels
