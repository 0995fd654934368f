#include "qb/linalg/matrix.hpp"

#include <cmath>

namespace qb::linalg {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const cplx w = a(ia, ja);
      if (w == cplx{0.0, 0.0}) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = w * b(ib, jb);
    }
  return out;
}

std::vector<cplx> vec(const Matrix& x) {
  std::vector<cplx> v(x.size());
  for (int j = 0; j < x.cols(); ++j)
    for (int i = 0; i < x.rows(); ++i) v[static_cast<std::size_t>(j) * x.rows() + i] = x(i, j);
  return v;
}

Matrix unvec(const std::vector<cplx>& v, int rows, int cols) {
  Matrix x(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) x(i, j) = v[static_cast<std::size_t>(j) * rows + i];
  return x;
}

Matrix reversed_basis(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(m.rows() - 1 - i, m.cols() - 1 - j);
  return out;
}

double norm(const std::vector<cplx>& v) {
  return std::sqrt(kernels::norm_sq(v.data(), static_cast<int>(v.size())));
}

std::vector<cplx> operator*(cplx s, std::vector<cplx> v) {
  kernels::scale(s, v.data(), static_cast<int>(v.size()));
  return v;
}

} // namespace qb::linalg
