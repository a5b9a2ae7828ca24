#include "isingql/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include "isingql/errors.hpp"

namespace isingql {

std::complex<double> to_complex(Phase p) {
  switch (p) {
    case Phase::PlusOne: return {1.0, 0.0};
    case Phase::PlusI: return {0.0, 1.0};
    case Phase::MinusOne: return {-1.0, 0.0};
    case Phase::MinusI: return {0.0, -1.0};
  }
  return {};
}

Phase operator*(Phase a, Phase b) {
  return static_cast<Phase>((static_cast<int>(a) + static_cast<int>(b)) & 3);
}

namespace {

void check_size(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(ErrorKind::InvalidParameter,
                "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) +
                    "]");
  }
}

Letter letter_of(std::uint32_t xb, std::uint32_t zb) {
  if (xb && zb) return Letter::Y;
  if (xb) return Letter::X;
  if (zb) return Letter::Z;
  return Letter::I;
}

// Power of i picked up by the single-site product a*b.
int site_phase(Letter a, Letter b) {
  if (a == Letter::I || b == Letter::I || a == b) return 0;
  // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i
  const bool cyclic = (a == Letter::X && b == Letter::Y) || (a == Letter::Y && b == Letter::Z) ||
                      (a == Letter::Z && b == Letter::X);
  return cyclic ? 1 : 3;
}

}  // namespace

PauliString::PauliString(int n) : n_(n) { check_size(n); }

PauliString::PauliString(int n, std::uint32_t x, std::uint32_t z) : n_(n), x_(x), z_(z) {
  check_size(n);
  const std::uint32_t mask = (1u << n) - 1u;
  if ((x & ~mask) != 0 || (z & ~mask) != 0) {
    throw Error(ErrorKind::InvalidOperand, "Pauli mask has bits beyond qubit count");
  }
}

PauliString PauliString::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  check_size(n);
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  for (int i = 0; i < n; ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': x |= 1u << i; break;
      case 'Y': x |= 1u << i; z |= 1u << i; break;
      case 'Z': z |= 1u << i; break;
      default:
        throw Error(ErrorKind::Parse, "invalid Pauli letter '" + std::string(1, text[i]) +
                                          "' at offset " + std::to_string(i));
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n, int site, Letter letter) {
  if (site < 0 || site >= n) throw Error(ErrorKind::IndexOutOfRange, "site out of range");
  const std::uint32_t bit = 1u << site;
  const bool xb = letter == Letter::X || letter == Letter::Y;
  const bool zb = letter == Letter::Z || letter == Letter::Y;
  return PauliString(n, xb ? bit : 0u, zb ? bit : 0u);
}

Letter PauliString::letter(int site) const {
  if (site < 0 || site >= n_) throw Error(ErrorKind::IndexOutOfRange, "site out of range");
  return letter_of((x_ >> site) & 1u, (z_ >> site) & 1u);
}

int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliString::to_string() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  for (int i = 0; i < n_; ++i) out[i] = kChars[static_cast<int>(letter(i))];
  return out;
}

YParity y_parity(const PauliString& p) { return p.odd_y() ? YParity::Odd : YParity::Even; }

std::pair<Phase, PauliString> multiply(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidOperand, "Pauli length mismatch: " + std::to_string(a.size()) +
                                               " vs " + std::to_string(b.size()));
  }
  int k = 0;
  const std::uint32_t overlap = a.support() & b.support();
  for (int i = 0; i < a.size(); ++i) {
    if (((overlap >> i) & 1u) == 0) continue;
    k += site_phase(a.letter(i), b.letter(i));
  }
  return {static_cast<Phase>(k & 3),
          PauliString(a.size(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask())};
}

bool commutes(const PauliString& a, const PauliString& b) {
  const int anti = std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask());
  return (anti & 1) == 0;
}

void PauliSum::add(double coefficient, const PauliString& p) {
  if (!std::isfinite(coefficient)) {
    throw Error(ErrorKind::InvalidParameter, "non-finite Pauli coefficient");
  }
  if (n_ == 0) n_ = p.size();
  if (p.size() != n_) throw Error(ErrorKind::InvalidOperand, "Pauli length mismatch in sum");
  if (coefficient == 0.0) return;
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const PauliTerm& t) { return t.string == p; });
  if (it == terms_.end()) {
    terms_.push_back({coefficient, p});
    return;
  }
  it->coefficient += coefficient;
  if (it->coefficient == 0.0) terms_.erase(it);
}

PauliSum PauliSum::scaled(double factor) const {
  PauliSum out(n_);
  for (const auto& t : terms_) out.add(factor * t.coefficient, t.string);
  return out;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << ' ';
    os << (terms_[i].coefficient < 0 ? "" : "+") << terms_[i].coefficient << '*'
       << terms_[i].string.to_string();
  }
  return os.str();
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidOperand, "PauliSum size mismatch");
  std::map<PauliString, std::complex<double>> acc;
  std::vector<PauliString> order;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      auto [phase, s] = multiply(ta.string, tb.string);
      auto [it, inserted] = acc.try_emplace(s, 0.0);
      if (inserted) order.push_back(s);
      it->second += ta.coefficient * tb.coefficient * to_complex(phase);
    }
  }
  PauliSum out(a.size());
  for (const auto& s : order) {
    const auto c = acc[s];
    if (std::abs(c.imag()) > 1e-12) {
      throw Error(ErrorKind::InternalConsistency, "product of sums is not Hermitian");
    }
    out.add(c.real(), s);
  }
  return out;
}

PauliSum build_ising_hamiltonian(int n, double coupling, double field) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "Ising chain needs at least 2 sites");
  check_size(n);
  if (!std::isfinite(coupling) || !std::isfinite(field)) {
    throw Error(ErrorKind::InvalidParameter, "non-finite coupling or field");
  }
  PauliSum h(n);
  for (int i = 0; i < n; ++i) {
    const std::uint32_t bond = (1u << i) | (1u << ((i + 1) % n));
    h.add(-coupling, PauliString(n, bond, 0));
  }
  for (int i = 0; i < n; ++i) h.add(-field, PauliString(n, 0, 1u << i));
  return h;
}

std::vector<PauliString> operator_pool(int n) {
  check_size(n);
  std::vector<PauliString> out;
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  out.reserve(total);
  static constexpr Letter kLetters[] = {Letter::X, Letter::Y, Letter::Z};
  for (std::size_t code = 0; code < total; ++code) {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    std::size_t rem = code;
    // site n-1 is the least significant digit so site 0 varies slowest
    for (int site = n - 1; site >= 0; --site) {
      const Letter l = kLetters[rem % 3];
      rem /= 3;
      if (l != Letter::Z) x |= 1u << site;
      if (l != Letter::X) z |= 1u << site;
    }
    out.emplace_back(n, x, z);
  }
  return out;
}

}  // namespace isingql
