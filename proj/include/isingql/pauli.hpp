#pragma once

// Pauli strings over N <= 10 qubits and real-weighted sums of them.
//
// A string is stored in symplectic form: bit i of `x` and `z` encode the
// letter on site i (I = 00, X = 10, Y = 11, Z = 01). Text form lists site 0
// first, e.g. "XYZ" has X on site 0.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isingql {

inline constexpr int kMaxQubits = 10;

// i^k for k = 0..3
enum class Phase : std::uint8_t { PlusOne = 0, PlusI = 1, MinusOne = 2, MinusI = 3 };

std::complex<double> to_complex(Phase p);
Phase operator*(Phase a, Phase b);

enum class Letter : std::uint8_t { I, X, Y, Z };

class PauliString {
 public:
  PauliString() = default;
  // Identity on n qubits.
  explicit PauliString(int n);
  PauliString(int n, std::uint32_t x, std::uint32_t z);

  static PauliString parse(std::string_view text);
  static PauliString single(int n, int site, Letter letter);

  int size() const noexcept { return n_; }
  std::uint32_t x_mask() const noexcept { return x_; }
  std::uint32_t z_mask() const noexcept { return z_; }
  // Qubits with a non-identity letter.
  std::uint32_t support() const noexcept { return x_ | z_; }

  Letter letter(int site) const;
  int y_count() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  // True when the number of Y letters is odd.
  bool odd_y() const noexcept { return (y_count() & 1) != 0; }
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint32_t x_ = 0;
  std::uint32_t z_ = 0;
};

enum class YParity { Even, Odd };

YParity y_parity(const PauliString& p);

// a * b = phase * product
std::pair<Phase, PauliString> multiply(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}

  int size() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  // Adds coefficient * p, merging with an existing term of the same string.
  // Terms whose coefficient is or becomes exactly zero are removed.
  void add(double coefficient, const PauliString& p);

  PauliSum scaled(double factor) const;
  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

// Product of two Hermitian sums. Throws when the result is not Hermitian
// (imaginary coefficients above 1e-12 after merging).
PauliSum multiply(const PauliSum& a, const PauliSum& b);

// -J sum_i X_i X_{i+1} - h sum_i Z_i with periodic boundary.
// Bonds come first in ascending site order, then the field terms.
PauliSum build_ising_hamiltonian(int n, double coupling, double field);

// All 3^n strings over {X, Y, Z}, lexicographic with X < Y < Z and site 0 most significant.
std::vector<PauliString> operator_pool(int n);

}  // namespace isingql
