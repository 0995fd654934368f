#pragma once

#include <vector>

#include "qb/linalg/matrix.hpp"

namespace qb::linalg {

// Eigendecomposition of a Hermitian matrix, values ascending.
// a = vectors * diag(values) * vectors^dagger.
struct HermitianEig {
  std::vector<double> values;
  Matrix vectors; // column j is the eigenvector of values[j]
};

HermitianEig hermitian_eig(const Matrix& a);

// exp(factor * h) for Hermitian h, via eigendecomposition.
Matrix expm_hermitian_times(const Matrix& h, cplx factor);

// One-sided Jacobi SVD: a = u * diag(singular) * v^dagger, singular values
// descending. Jacobi resolves small singular values with high relative
// accuracy, which the null-space threshold below depends on. Columns of u
// belonging to (numerically) zero singular values are left as zero.
struct Svd {
  std::vector<double> singular;
  Matrix u;
  Matrix v;
};

Svd jacobi_svd(const Matrix& a);

// Null space of a square matrix. Singular values below rel_tol * sigma_max
// count as zero. If the cut falls inside a gap narrower than min_gap_ratio,
// the dimension is ambiguous and a NumericalError is thrown instead of a
// guess. A matrix that is identically zero has a full null space.
struct NullSpace {
  int dim = 0;
  Matrix basis; // columns span the null space (orthonormal)
};

NullSpace null_space(const Matrix& a, double rel_tol = 1e-10, double min_gap_ratio = 1e6);

} // namespace qb::linalg
