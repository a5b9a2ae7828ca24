#pragma once

// Dense statevectors over 2^N basis states.
//
// Bit i of a basis index is the occupation of site i, so site 0 is the least
// significant bit. Bitstrings are written with site 0 leftmost: "0101" is
// index 0b1010 = 10 (particles on sites 1 and 3).

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "isingql/pauli.hpp"

namespace isingql {

using cplx = std::complex<double>;

class StateVector {
 public:
  StateVector() = default;
  // Takes ownership of the amplitudes as given; no normalization.
  StateVector(int n, std::vector<cplx> amplitudes);

  int qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amp_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amp_; }
  std::span<cplx> amplitudes() noexcept { return amp_; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  cplx& operator[](std::size_t i) { return amp_[i]; }

  double norm() const;
  // Copy scaled to unit norm; throws on a zero vector.
  StateVector normalized() const;
  // Largest |Im| over all amplitudes.
  double max_imag() const;

 private:
  int n_ = 0;
  std::vector<cplx> amp_;
};

struct SignedBasis {
  int sign = +1;
  std::string bits;
};

std::uint32_t parse_bitstring(std::string_view bits);
std::string format_bitstring(std::uint32_t x, int n);

StateVector from_basis(int n, std::uint32_t x);
// Equal-weight signed superposition normalized by 1/sqrt(count).
StateVector from_superposition(int n, std::span<const SignedBasis> terms);
StateVector from_real(int n, std::span<const double> amplitudes);

StateVector apply(const StateVector& state, const PauliString& p);
// Unnormalized sum_m c_m P_m |state>.
StateVector apply(const StateVector& state, const PauliSum& op);

// <bra| P |ket>
cplx pauli_matrix_element(const StateVector& bra, const PauliString& p, const StateVector& ket);
// <state| P |state>, real for Hermitian P
double pauli_expectation(const StateVector& state, const PauliString& p);

// Re <state|op|state>. Throws when the imaginary part exceeds 1e-10.
double expectation(const StateVector& state, const PauliSum& op);

cplx inner(const StateVector& a, const StateVector& b);

Eigen::MatrixXcd to_dense(const PauliSum& op);

// exp(-i * angle * generator) |state> via dense Hermitian eigendecomposition.
StateVector exp_apply(const StateVector& state, const PauliSum& generator, double angle);

}  // namespace isingql
