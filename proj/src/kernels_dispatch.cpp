#include "qb/linalg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qb::kernels {

namespace {

struct Vtable {
  void (*matmul)(const cplx*, const cplx*, cplx*, int, int, int);
  void (*matmul_acc)(const cplx*, const cplx*, cplx*, int, int, int);
  void (*axpy)(cplx, const cplx*, cplx*, int);
  void (*scale)(cplx, cplx*, int);
  double (*norm_sq)(const cplx*, int);
  cplx (*dot_conj)(const cplx*, const cplx*, int);
  Backend backend;
};

constexpr Vtable kScalar = {scalar::matmul, scalar::matmul_acc, scalar::axpy,
                            scalar::scale,  scalar::norm_sq,    scalar::dot_conj,
                            Backend::scalar};

#ifdef QB_HAVE_AVX2_BACKEND
constexpr Vtable kAvx2 = {avx2::matmul, avx2::matmul_acc, avx2::axpy,
                          avx2::scale,  avx2::norm_sq,    avx2::dot_conj,
                          Backend::avx2};
#endif
#ifdef QB_HAVE_NEON_BACKEND
constexpr Vtable kNeon = {neon::matmul, neon::matmul_acc, neon::axpy,
                          neon::scale,  neon::norm_sq,    neon::dot_conj,
                          Backend::neon};
#endif

const Vtable& resolve() {
  const char* want = std::getenv("QB_KERNEL_BACKEND");
  if (want != nullptr) {
    if (std::strcmp(want, "scalar") == 0) return kScalar;
#ifdef QB_HAVE_AVX2_BACKEND
    if (std::strcmp(want, "avx2") == 0 && avx2::supported()) return kAvx2;
#endif
#ifdef QB_HAVE_NEON_BACKEND
    if (std::strcmp(want, "neon") == 0 && neon::supported()) return kNeon;
#endif
    // unknown or unsupported request falls through to the probe
  }
#ifdef QB_HAVE_AVX2_BACKEND
  if (avx2::supported()) return kAvx2;
#endif
#ifdef QB_HAVE_NEON_BACKEND
  if (neon::supported()) return kNeon;
#endif
  return kScalar;
}

const Vtable& table() {
  static const Vtable& t = resolve();
  return t;
}

} // namespace

Backend active_backend() { return table().backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  table().matmul(a, b, c, m, k, n);
}
void matmul_acc(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  table().matmul_acc(a, b, c, m, k, n);
}
void axpy(cplx alpha, const cplx* x, cplx* y, int n) { table().axpy(alpha, x, y, n); }
void scale(cplx alpha, cplx* x, int n) { table().scale(alpha, x, n); }
double norm_sq(const cplx* x, int n) { return table().norm_sq(x, n); }
cplx dot_conj(const cplx* x, const cplx* y, int n) { return table().dot_conj(x, y, n); }

} // namespace qb::kernels
