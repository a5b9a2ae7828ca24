#include "isingql/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isingql/errors.hpp"
#include "isingql/kernels.hpp"

namespace isingql::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::asymmetry() const {
  if (rows_ != cols_) return INFINITY;
  double m = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) m = std::max(m, std::abs((*this)(r, c) - (*this)(c, r)));
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<double> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    out[i] = std::inner_product(r.begin(), r.end(), v.begin(), 0.0);
  }
  return out;
}

SymmetricEigen jacobi_eigen(const Matrix& input, double tol, int max_sweeps) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw Error(ErrorKind::DimensionMismatch, "Jacobi needs a square matrix");
  Matrix a = input;
  Matrix v = Matrix::identity(n);
  const auto& k = kernels::active();
  const double threshold = tol * std::max(1.0, a.max_abs());

  auto off_max = [&] {
    double m = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::abs(a(p, q)));
    }
    return m;
  };

  int sweep = 0;
  while (off_max() >= threshold) {
    if (sweep == max_sweeps) {
      throw Error(ErrorKind::Numerical,
                  "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    }
    ++sweep;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < threshold * 1e-3) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- P^T A P: rows through the kernel, columns by hand
        k.rotate(a.row(p).data(), a.row(q).data(), c, s, n);
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        k.rotate(v.row(p).data(), v.row(q).data(), c, s, n);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweep;
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    std::copy_n(v.row(order[i]).data(), n, out.vectors.row(i).data());
  }
  return out;
}

}  // namespace isingql::linalg
