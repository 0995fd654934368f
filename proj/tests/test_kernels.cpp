#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "qb/linalg/kernels.hpp"

using qb::kernels::cplx;

namespace {

std::vector<cplx> random_array(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {dist(rng), dist(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Equivalence harness: every SIMD backend must reproduce the scalar
// reference on the same inputs (FMA reassociation allows ~1e-13 slack).
struct Backend {
  const char* name;
  void (*matmul)(const cplx*, const cplx*, cplx*, int, int, int);
  void (*matmul_acc)(const cplx*, const cplx*, cplx*, int, int, int);
  void (*axpy)(cplx, const cplx*, cplx*, int);
  void (*scale)(cplx, cplx*, int);
  double (*norm_sq)(const cplx*, int);
  cplx (*dot_conj)(const cplx*, const cplx*, int);
};

std::vector<Backend> simd_backends() {
  std::vector<Backend> out;
#ifdef QB_HAVE_AVX2_BACKEND
  if (qb::kernels::avx2::supported())
    out.push_back({"avx2", qb::kernels::avx2::matmul, qb::kernels::avx2::matmul_acc,
                   qb::kernels::avx2::axpy, qb::kernels::avx2::scale, qb::kernels::avx2::norm_sq,
                   qb::kernels::avx2::dot_conj});
#endif
#ifdef QB_HAVE_NEON_BACKEND
  if (qb::kernels::neon::supported())
    out.push_back({"neon", qb::kernels::neon::matmul, qb::kernels::neon::matmul_acc,
                   qb::kernels::neon::axpy, qb::kernels::neon::scale, qb::kernels::neon::norm_sq,
                   qb::kernels::neon::dot_conj});
#endif
  return out;
}

} // namespace

TEST_CASE("scalar matmul reference: hand-checked 2x2") {
  // [1+i, 2; 0, i] * [1, i; 1, 1]
  const std::vector<cplx> a = {{1, 1}, {2, 0}, {0, 0}, {0, 1}};
  const std::vector<cplx> b = {{1, 0}, {0, 1}, {1, 0}, {1, 0}};
  std::vector<cplx> c(4);
  qb::kernels::scalar::matmul(a.data(), b.data(), c.data(), 2, 2, 2);
  CHECK(std::abs(c[0] - cplx{3, 1}) < 1e-15);
  CHECK(std::abs(c[1] - cplx{1, 1}) < 1e-15); // (1+i)*i + 2 = 1+i
  CHECK(std::abs(c[2] - cplx{0, 1}) < 1e-15);
  CHECK(std::abs(c[3] - cplx{0, 1}) < 1e-15);
}

TEST_CASE("SIMD backends match the scalar reference") {
  const auto backends = simd_backends();
  if (backends.empty()) {
    MESSAGE("no SIMD backend available on this host; scalar only");
    return;
  }
  std::mt19937_64 rng(20260808);
  for (const Backend& be : backends) {
    CAPTURE(be.name);
    // odd and even sizes to hit remainder lanes
    for (const auto [m, k, n] : {std::array<int, 3>{1, 1, 1}, {2, 3, 5}, {4, 4, 4}, {7, 5, 3},
                                 {16, 16, 16}, {25, 25, 25}, {31, 17, 9}}) {
      const auto a = random_array(rng, m * k);
      const auto b = random_array(rng, k * n);
      std::vector<cplx> c_ref(m * n), c_simd(m * n);
      qb::kernels::scalar::matmul(a.data(), b.data(), c_ref.data(), m, k, n);
      be.matmul(a.data(), b.data(), c_simd.data(), m, k, n);
      CHECK(max_diff(c_ref, c_simd) < 1e-12);

      auto acc_ref = random_array(rng, m * n);
      auto acc_simd = acc_ref;
      qb::kernels::scalar::matmul_acc(a.data(), b.data(), acc_ref.data(), m, k, n);
      be.matmul_acc(a.data(), b.data(), acc_simd.data(), m, k, n);
      CHECK(max_diff(acc_ref, acc_simd) < 1e-12);
    }
    for (int n : {1, 2, 3, 8, 33, 100}) {
      const cplx alpha{0.7, -1.3};
      const auto x = random_array(rng, n);
      auto y_ref = random_array(rng, n);
      auto y_simd = y_ref;
      qb::kernels::scalar::axpy(alpha, x.data(), y_ref.data(), n);
      be.axpy(alpha, x.data(), y_simd.data(), n);
      CHECK(max_diff(y_ref, y_simd) < 1e-13);

      auto s_ref = x;
      auto s_simd = x;
      qb::kernels::scalar::scale(alpha, s_ref.data(), n);
      be.scale(alpha, s_simd.data(), n);
      CHECK(max_diff(s_ref, s_simd) < 1e-13);

      const auto y2 = random_array(rng, n);
      CHECK(qb::kernels::scalar::norm_sq(x.data(), n) ==
            doctest::Approx(be.norm_sq(x.data(), n)).epsilon(1e-13));
      const cplx d_ref = qb::kernels::scalar::dot_conj(x.data(), y2.data(), n);
      const cplx d_simd = be.dot_conj(x.data(), y2.data(), n);
      CHECK(std::abs(d_ref - d_simd) < 1e-12);
    }
  }
}

TEST_CASE("dispatch resolves to a working backend") {
  const auto backend = qb::kernels::active_backend();
  MESSAGE("active backend: ", qb::kernels::backend_name(backend));
  std::mt19937_64 rng(7);
  const int n = 9;
  const auto a = random_array(rng, n * n);
  const auto b = random_array(rng, n * n);
  std::vector<cplx> c1(n * n), c2(n * n);
  qb::kernels::matmul(a.data(), b.data(), c1.data(), n, n, n);
  qb::kernels::scalar::matmul(a.data(), b.data(), c2.data(), n, n, n);
  CHECK(max_diff(c1, c2) < 1e-12);
}
