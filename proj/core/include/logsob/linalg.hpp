// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace logsob {

using Point = std::vector<double>;

/// Small dense row-major matrix. Dimensions here stay in the tens, so no
/// blocking or expression templates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  void set_identity();
  Matrix transpose() const;

  /// max_{i,j} |A_ij - A_ji|
  double asymmetry() const;
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// out = a * b, with out preallocated and not aliasing a or b.
void multiply_into(const Matrix& a, const Matrix& b, Matrix& out);

/// y = A x
void apply(const Matrix& a, std::span<const double> x, std::span<double> y);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `tol` times the Frobenius norm of the input (absolute when the input is 0).
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12, bool want_vectors = false);

double smallest_eigenvalue(const Matrix& a);

/// Largest singular value, via the eigenvalues of A^T A.
double spectral_norm(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace logsob
