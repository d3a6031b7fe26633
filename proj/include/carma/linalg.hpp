#pragma once

// Small dense linear algebra for the CARMA state-space machinery. Sizes are
// tiny (p <= 10, Kronecker systems p^2 <= 100), so everything is dense and
// row-major with partial-pivot elimination.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace carma {

using Complex = std::complex<double>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

ComplexMatrix to_complex(const RealMatrix& m);

/// Largest absolute entry.
double max_abs(const RealMatrix& m);
double max_abs(const ComplexMatrix& m);

/// p x p companion matrix of z^p + a_1 z^{p-1} + ... + a_p: ones on the
/// superdiagonal, last row (-a_p, ..., -a_1). For p = 1 this is (-a_1).
RealMatrix companion(std::span<const double> a_coeffs);

/// e^{A t} by scaling and squaring around a diagonal [6/6] Pade approximant.
RealMatrix mat_exp(const RealMatrix& a, double t);

/// Solves A X = B by Gaussian elimination with partial pivoting.
/// Throws NumericalError when A is numerically singular.
RealMatrix solve(RealMatrix a, RealMatrix b);
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b);

/// Roots of the monic polynomial coeffs[0] z^p + coeffs[1] z^{p-1} + ... +
/// coeffs[p] (coeffs[0] must be 1), with multiplicity. Durand-Kerner.
std::vector<Complex> poly_roots(std::span<const double> coeffs);

/// Largest real part among the roots of z^p + a_1 z^{p-1} + ... + a_p.
double spectral_abscissa(std::span<const double> a_coeffs);

/// All roots of z^p + a_1 z^{p-1} + ... + a_p have real part < -1e-9.
bool is_stable(std::span<const double> a_coeffs);

/// (i w I - A)^{-1}.
ComplexMatrix resolvent(const RealMatrix& a, double omega);

/// P solving A P + P A^T + sigma2 e e^T = 0 with e the last unit vector,
/// via the Kronecker-vectorized p^2 x p^2 system.
RealMatrix lyapunov_solve(const RealMatrix& a, double sigma2);

}  // namespace carma
