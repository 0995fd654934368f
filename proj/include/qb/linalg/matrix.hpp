#pragma once

#include <complex>
#include <vector>

#include "qb/linalg/kernels.hpp"

namespace qb::linalg {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Value semantics throughout; all products
// route through the dispatched kernels.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix conjugate() const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    return std::sqrt(kernels::norm_sq(data_.data(), static_cast<int>(data_.size())));
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    kernels::axpy(1.0, o.data(), data(), static_cast<int>(size()));
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    kernels::axpy(-1.0, o.data(), data(), static_cast<int>(size()));
    return *this;
  }
  Matrix& operator*=(cplx s) {
    kernels::scale(s, data(), static_cast<int>(size()));
    return *this;
  }
  // this += alpha * o
  Matrix& add_scaled(cplx alpha, const Matrix& o) {
    kernels::axpy(alpha, o.data(), data(), static_cast<int>(size()));
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    kernels::matmul(a.data(), b.data(), c.data(), a.rows_, a.cols_, b.cols_);
    return c;
  }

  // Matrix-vector product.
  friend std::vector<cplx> operator*(const Matrix& a, const std::vector<cplx>& x) {
    std::vector<cplx> y(a.rows_);
    kernels::matmul(a.data(), x.data(), y.data(), a.rows_, a.cols_, 1);
    return y;
  }

  bool is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  Matrix block(int row0, int col0, int nrows, int ncols) const {
    Matrix out(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
    return out;
  }

  void set_block(int row0, int col0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// Column-stacking vectorization: vec(X)[col * rows + row] = X(row, col),
// so vec(A X B) = (B^T kron A) vec(X).
std::vector<cplx> vec(const Matrix& x);
Matrix unvec(const std::vector<cplx>& v, int rows, int cols);

// Reverses the basis order along both axes (index i -> n-1-i). Used when
// comparing against closed forms quoted in an energy-ascending basis.
Matrix reversed_basis(const Matrix& m);

inline Matrix hermitize(const Matrix& m) {
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return out;
}

double norm(const std::vector<cplx>& v);
std::vector<cplx> operator*(cplx s, std::vector<cplx> v);

} // namespace qb::linalg
