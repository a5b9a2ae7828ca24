#pragma once

// Independent dense references for the tests. Nothing here goes through the
// library's Pauli or statevector code: operators are Kronecker products of
// explicit 2x2 matrices and spectra come from Eigen.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isingql/state.hpp"

namespace isingql::testing {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat pauli_2x2(char letter) {
  CMat m(2, 2);
  const std::complex<double> i{0.0, 1.0};
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

// letters[i] acts on site i; site i is bit i of the basis index, so site 0 is
// the rightmost Kronecker factor.
inline CMat dense_string(const std::string& letters) {
  CMat out = CMat::Identity(1, 1);
  for (char c : letters) out = kron(pauli_2x2(c), out);
  return out;
}

inline CMat site_op(int n, int site, char letter) {
  std::string s(static_cast<std::size_t>(n), 'I');
  s[static_cast<std::size_t>(site)] = letter;
  return dense_string(s);
}

inline CMat dense_ising(int n, double j, double h) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMat out = CMat::Zero(dim, dim);
  if (n == 2) {
    out -= 2.0 * j * site_op(2, 0, 'X') * site_op(2, 1, 'X');
  } else {
    for (int i = 0; i < n; ++i) out -= j * site_op(n, i, 'X') * site_op(n, (i + 1) % n, 'X');
  }
  for (int i = 0; i < n; ++i) out -= h * site_op(n, i, 'Z');
  return out;
}

inline Eigen::VectorXd dense_levels(int n, double j, double h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(dense_ising(n, j, h));
  return es.eigenvalues();
}

inline CVec to_cvec(const StateVector& s) {
  CVec v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t k = 0; k < s.dim(); ++k) v(static_cast<Eigen::Index>(k)) = s[k];
  return v;
}

inline StateVector from_cvec(int n, const CVec& v) {
  return StateVector(n, std::vector<std::complex<double>>(v.data(), v.data() + v.size()));
}

inline CMat dense_expm_i(const CMat& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const std::complex<double> i{0.0, 1.0};
  CVec phases = (-i * t * es.eigenvalues().cast<std::complex<double>>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double residual(const CMat& h, const CVec& v) {
  const std::complex<double> e = v.dot(h * v);
  return (h * v - e * v).norm();
}

}  // namespace isingql::testing
