#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace orlicz {

/// Dense row-major real matrix; just enough linear algebra for block algebras.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  double trace() const;
  double frobenius() const;
  double max_abs() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SymmetricEigen {
  std::vector<double> values;  ///< descending
  Matrix vectors;              ///< column k belongs to values[k]
};

inline constexpr double kSymmetryTolerance = 1e-12;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
/// 1e-12 of the matrix norm. Throws DomainError on non-symmetric input.
SymmetricEigen jacobi_eigen(const Matrix& sym);

struct SingularDecomposition {
  std::vector<double> values;  ///< descending, nonnegative
  Matrix right;                ///< right singular vectors as columns, same order
};

/// One-sided (Hestenes) Jacobi: rotates column pairs of A until they are
/// mutually orthogonal; the column norms are then the singular values.
SingularDecomposition singular_decomposition(const Matrix& a);

/// (A^T A)^{1/2} = V diag(sigma) V^T.
Matrix abs_matrix(const Matrix& a);

}  // namespace orlicz
