#include "isingql/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "isingql/errors.hpp"
#include "isingql/kernels.hpp"

namespace isingql {

namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(ErrorKind::InvalidParameter, "qubit count " + std::to_string(n) + " out of range");
  }
}

void check_match(const StateVector& s, int n) {
  if (s.qubits() != n) {
    throw Error(ErrorKind::DimensionMismatch, "state has " + std::to_string(s.qubits()) +
                                                  " qubits, operator has " + std::to_string(n));
  }
}

}  // namespace

StateVector::StateVector(int n, std::vector<cplx> amplitudes) : n_(n), amp_(std::move(amplitudes)) {
  check_qubits(n);
  if (amp_.size() != (std::size_t{1} << n)) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude count is not 2^" + std::to_string(n));
  }
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().dot(amp_.data(), amp_.data(), amp_.size()).real());
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (!(nrm > 0.0)) throw Error(ErrorKind::InvalidOperand, "cannot normalize a zero vector");
  std::vector<cplx> out(amp_);
  for (auto& a : out) a /= nrm;
  return StateVector(n_, std::move(out));
}

double StateVector::max_imag() const {
  double m = 0.0;
  for (const auto& a : amp_) m = std::max(m, std::abs(a.imag()));
  return m;
}

std::uint32_t parse_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw Error(ErrorKind::Parse, "bitstring length must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::uint32_t x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      x |= 1u << i;
    } else if (bits[i] != '0') {
      throw Error(ErrorKind::Parse, "invalid bit '" + std::string(1, bits[i]) + "' at offset " +
                                        std::to_string(i));
    }
  }
  return x;
}

std::string format_bitstring(std::uint32_t x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1u) s[i] = '1';
  }
  return s;
}

StateVector from_basis(int n, std::uint32_t x) {
  check_qubits(n);
  const std::size_t dim = std::size_t{1} << n;
  if (x >= dim) {
    throw Error(ErrorKind::IndexOutOfRange,
                "basis index " + std::to_string(x) + " >= " + std::to_string(dim));
  }
  std::vector<cplx> amp(dim);
  amp[x] = 1.0;
  return StateVector(n, std::move(amp));
}

StateVector from_superposition(int n, std::span<const SignedBasis> terms) {
  check_qubits(n);
  if (terms.empty()) throw Error(ErrorKind::InvalidOperand, "empty superposition");
  std::vector<cplx> amp(std::size_t{1} << n);
  std::set<std::uint32_t> seen;
  const double w = 1.0 / std::sqrt(static_cast<double>(terms.size()));
  for (const auto& t : terms) {
    if (static_cast<int>(t.bits.size()) != n) {
      throw Error(ErrorKind::InvalidOperand, "bitstring '" + t.bits + "' does not have length " +
                                                 std::to_string(n));
    }
    const std::uint32_t x = parse_bitstring(t.bits);
    if (!seen.insert(x).second) {
      throw Error(ErrorKind::InvalidOperand, "duplicate bitstring '" + t.bits + "'");
    }
    amp[x] = t.sign < 0 ? -w : w;
  }
  return StateVector(n, std::move(amp));
}

StateVector from_real(int n, std::span<const double> amplitudes) {
  std::vector<cplx> amp(amplitudes.begin(), amplitudes.end());
  return StateVector(n, std::move(amp));
}

StateVector apply(const StateVector& state, const PauliString& p) {
  check_match(state, p.size());
  std::vector<cplx> out(state.dim());
  const cplx alpha = to_complex(static_cast<Phase>(p.y_count() & 3));
  kernels::active().pauli_accumulate(alpha, state.amplitudes().data(), p.x_mask(), p.z_mask(),
                                     out.data(), out.size());
  return StateVector(state.qubits(), std::move(out));
}

StateVector apply(const StateVector& state, const PauliSum& op) {
  check_match(state, op.size() == 0 ? state.qubits() : op.size());
  std::vector<cplx> out(state.dim());
  const auto& k = kernels::active();
  for (const auto& t : op.terms()) {
    const cplx alpha = t.coefficient * to_complex(static_cast<Phase>(t.string.y_count() & 3));
    k.pauli_accumulate(alpha, state.amplitudes().data(), t.string.x_mask(), t.string.z_mask(),
                       out.data(), out.size());
  }
  return StateVector(state.qubits(), std::move(out));
}

cplx pauli_matrix_element(const StateVector& bra, const PauliString& p, const StateVector& ket) {
  check_match(bra, p.size());
  check_match(ket, p.size());
  const cplx v = kernels::active().pauli_overlap(bra.amplitudes().data(), ket.amplitudes().data(),
                                                 p.x_mask(), p.z_mask(), ket.dim());
  return to_complex(static_cast<Phase>(p.y_count() & 3)) * v;
}

double pauli_expectation(const StateVector& state, const PauliString& p) {
  return pauli_matrix_element(state, p, state).real();
}

double expectation(const StateVector& state, const PauliSum& op) {
  if (op.empty()) return 0.0;
  cplx acc = 0.0;
  for (const auto& t : op.terms()) acc += t.coefficient * pauli_matrix_element(state, t.string, state);
  if (std::abs(acc.imag()) >= 1e-10) {
    throw Error(ErrorKind::InternalConsistency,
                "expectation has imaginary part " + std::to_string(acc.imag()));
  }
  return acc.real();
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "inner product dimension mismatch");
  return kernels::active().dot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

Eigen::MatrixXcd to_dense(const PauliSum& op) {
  const int n = op.size();
  check_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms()) {
    const cplx alpha = t.coefficient * to_complex(static_cast<Phase>(t.string.y_count() & 3));
    for (Eigen::Index x = 0; x < dim; ++x) {
      const auto ux = static_cast<std::uint32_t>(x);
      const double sign = kernels::sign_parity(ux, t.string.z_mask()) ? -1.0 : 1.0;
      m(ux ^ t.string.x_mask(), x) += sign * alpha;
    }
  }
  return m;
}

StateVector exp_apply(const StateVector& state, const PauliSum& generator, double angle) {
  if (angle == 0.0 || generator.empty()) return state;
  check_match(state, generator.size());
  const Eigen::MatrixXcd g = to_dense(generator);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "generator eigendecomposition did not converge");
  }
  const auto amps = state.amplitudes();
  const Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
  Eigen::VectorXcd coeff = eig.eigenvectors().adjoint() * psi;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) *= std::exp(cplx(0.0, -angle * eig.eigenvalues()(k)));
  }
  const Eigen::VectorXcd out = eig.eigenvectors() * coeff;
  StateVector result(state.qubits(), std::vector<cplx>(out.data(), out.data() + out.size()));
  const double drift = std::abs(result.norm() - state.norm());
  if (drift > 1e-12) {
    const double scale = state.norm() / result.norm();
    for (auto& a : result.amplitudes()) a *= scale;
  }
  return result;
}

}  // namespace isingql
