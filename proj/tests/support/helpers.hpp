#pragma once

#include <random>

#include "qb/linalg/matrix.hpp"
#include "qb/spin.hpp"

namespace qbtest {

using qb::linalg::cplx;
using qb::linalg::Matrix;

inline Matrix random_matrix(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = {dist(rng), dist(rng)};
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int n) {
  return qb::linalg::hermitize(random_matrix(rng, n, n));
}

// Ginibre construction: G G^dag normalized to unit trace.
inline Matrix random_density(std::mt19937_64& rng, int n) {
  const Matrix g = random_matrix(rng, n, n);
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

inline double diff_norm(const Matrix& a, const Matrix& b) {
  Matrix d = a;
  d -= b;
  return d.max_abs();
}

inline double commutator_defect(const Matrix& a, const Matrix& b, const Matrix& expect) {
  Matrix c = a * b;
  c -= b * a;
  c -= expect;
  return c.max_abs();
}

} // namespace qbtest
