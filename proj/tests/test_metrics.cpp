#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qb/error.hpp"
#include "qb/linalg/decomp.hpp"
#include "qb/metrics.hpp"
#include "support/helpers.hpp"

using namespace qb;
using qbtest::diff_norm;

namespace {

// Independent oracle: minimize Tr(H P rho P^dag) over all permutations of the
// eigenvalue-to-level assignment (validates the sorted-spectrum formula
// against the variational definition).
double ergotropy_bruteforce(const Matrix& rho, const Matrix& h) {
  const auto he = linalg::hermitian_eig(h);
  const auto se = linalg::hermitian_eig(rho);
  const int n = rho.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += se.values[perm[i]] * he.values[i];
    best = std::min(best, e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::real((h * rho).trace()) - best;
}

} // namespace

TEST_CASE("battery Hamiltonian: ground state at zero, levels 0..N") {
  for (int n : {1, 3, 6}) {
    const BatteryHamiltonian bh = battery_hamiltonian(n);
    CHECK(bh.h(n, n).real() == 0.0);
    CHECK(bh.h(0, 0).real() == doctest::Approx(n));
    for (int i = 0; i <= n; ++i) CHECK(bh.h(i, i).real() == doctest::Approx(n - i));
  }
}

TEST_CASE("passive state: fixed points and pure-state passivization") {
  const BatteryHamiltonian bh = battery_hamiltonian(2);
  // populations already anti-ordered against energy (basis is M descending,
  // so energies run 2,1,0 along the diagonal)
  Matrix rho(3, 3);
  rho(0, 0) = 0.1;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.6;
  CHECK(diff_norm(passive_state(rho, bh.h), rho) < 1e-13);

  Matrix top(3, 3);
  top(0, 0) = 1.0; // highest-energy eigenstate
  Matrix bottom(3, 3);
  bottom(2, 2) = 1.0;
  CHECK(diff_norm(passive_state(top, bh.h), bottom) < 1e-13);
}

TEST_CASE("ergotropy of a passive state is zero") {
  std::mt19937_64 rng(3);
  const BatteryHamiltonian bh = battery_hamiltonian(3);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix rho = qbtest::random_density(rng, 4);
    const Matrix pas = passive_state(rho, bh.h);
    CHECK(ergotropy(pas, bh.h) < 1e-11);
  }
}

TEST_CASE("ergotropy: maximally mixed and simple qubit values") {
  Matrix h(2, 2);
  h(1, 1) = 1.0;
  Matrix mixed = Matrix::identity(2);
  mixed *= 0.5;
  CHECK(ergotropy(mixed, h) < 1e-14);

  Matrix rho(2, 2);
  rho(0, 0) = 0.3;
  rho(1, 1) = 0.7;
  CHECK(ergotropy(rho, h) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("ergotropy equals the brute-force permutation oracle on 200 random states") {
  std::mt19937_64 rng(2026);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + (rep % 2);
    const Matrix rho = qbtest::random_density(rng, n);
    const Matrix h = qbtest::random_hermitian(rng, n);
    CHECK(std::abs(ergotropy(rho, h) - ergotropy_bruteforce(rho, h)) < 1e-11);
  }
}

TEST_CASE("ergotropy split: dephased input, pure superposition") {
  Matrix h(2, 2);
  h(1, 1) = 1.0;
  Matrix diag(2, 2);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.8;
  auto [wp_d, wc_d] = ergotropy_split(diag, h);
  CHECK(wp_d == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(wc_d) < 1e-12);

  // (|e0> + |e1>)/sqrt(2): W = 1/2 entirely from coherence
  Matrix plus(2, 2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  auto [wp, wc] = ergotropy_split(plus, h);
  CHECK(std::abs(wp) < 1e-12);
  CHECK(wc == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ergotropy(plus, h) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ergotropy is stable under degenerate eigenvalue tie-breaking") {
  std::mt19937_64 rng(11);
  const Matrix u = linalg::jacobi_svd(qbtest::random_matrix(rng, 3, 3)).v; // random unitary
  Matrix lam(3, 3);
  lam(0, 0) = 0.4;
  lam(1, 1) = 0.4;
  lam(2, 2) = 0.2;
  const Matrix rho = u * lam * u.adjoint();
  // swapping the two degenerate columns reproduces the same matrix; the
  // computed ergotropy must not depend on which copy the solver returns
  Matrix u2 = u;
  for (int i = 0; i < 3; ++i) std::swap(u2(i, 0), u2(i, 1));
  const Matrix rho2 = u2 * lam * u2.adjoint();
  const Matrix h = qbtest::random_hermitian(rng, 3);
  CHECK(std::abs(ergotropy(rho, h) - ergotropy(rho2, h)) < 1e-10);
}

TEST_CASE("l1 coherence: diagonal, qubit off-diagonal, dephasing idempotence") {
  Matrix h(2, 2);
  h(1, 1) = 1.0;
  Matrix diag(2, 2);
  diag(0, 0) = 0.4;
  diag(1, 1) = 0.6;
  CHECK(l1_coherence(diag, h) < 1e-14);

  Matrix rho(2, 2);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  rho(0, 1) = cplx{0.1, 0.2};
  rho(1, 0) = cplx{0.1, -0.2};
  CHECK(l1_coherence(rho, h) == doctest::Approx(2.0 * std::abs(cplx{0.1, 0.2})).epsilon(1e-12));

  // dephase rho in the energy basis; its coherence is zero
  Matrix dephased = rho;
  dephased(0, 1) = dephased(1, 0) = 0.0;
  CHECK(l1_coherence(dephased, h) < 1e-14);
}

TEST_CASE("log negativity: product states are PPT, the singlet carries one bit") {
  std::mt19937_64 rng(17);
  const SystemGeometry g = make_geometry(1, 1);
  DensityMatrix prod;
  prod.data = linalg::kron(qbtest::random_density(rng, 2), qbtest::random_density(rng, 2));
  prod.basis = Basis::product;
  prod.dim_charger = 2;
  prod.dim_battery = 2;
  CHECK(std::abs(log_negativity(prod, g)) < 1e-12);

  const double s2 = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> singlet = {0.0, s2, -s2, 0.0};
  DensityMatrix ent;
  ent.data = Matrix(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ent.data(i, j) = singlet[i] * std::conj(singlet[j]);
  ent.basis = Basis::product;
  ent.dim_charger = 2;
  ent.dim_battery = 2;
  CHECK(log_negativity(ent, g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("negativity is symmetric in the transposed subsystem") {
  std::mt19937_64 rng(29);
  const SystemGeometry g = make_geometry(2, 3);
  for (int rep = 0; rep < 5; ++rep) {
    DensityMatrix rho;
    rho.data = qbtest::random_density(rng, g.dim);
    rho.basis = Basis::product;
    rho.dim_charger = 3;
    rho.dim_battery = 4;
    const auto eig_b = linalg::hermitian_eig(partial_transpose(rho, g, Subsystem::battery));
    const auto eig_c = linalg::hermitian_eig(partial_transpose(rho, g, Subsystem::charger));
    double tn_b = 0.0, tn_c = 0.0;
    for (double v : eig_b.values) tn_b += std::abs(v);
    for (double v : eig_c.values) tn_c += std::abs(v);
    CHECK(std::abs(std::log2(tn_b) - std::log2(tn_c)) < 1e-10);
  }
}

TEST_CASE("coupled-basis input is rejected") {
  const SystemGeometry g = make_geometry(1, 1);
  DensityMatrix rho;
  rho.data = Matrix::identity(4);
  rho.data *= 0.25;
  rho.basis = Basis::coupled;
  CHECK_THROWS_AS((void)log_negativity(rho, g), ConfigError);
}
