#pragma once

// Small dense real matrices and a cyclic Jacobi eigensolver.

#include <cstddef>
#include <span>
#include <vector>

namespace isingql::linalg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  Matrix transposed() const;
  double max_abs() const;
  // Largest |a_ij - a_ji|.
  double asymmetry() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> v);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // row k is the eigenvector of values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the largest off-diagonal magnitude drops below
// tol * max(1, max|a_ij|). Throws a numerical error after max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace isingql::linalg
