#include "isingql/symmetry.hpp"

#include <bit>
#include <cmath>
#include <deque>

#include "isingql/errors.hpp"
#include "isingql/qlanczos.hpp"

namespace isingql {

std::uint32_t translate_index(std::uint32_t x, int n) {
  const std::uint32_t mask = (1u << n) - 1u;
  return ((x << 1) | (x >> (n - 1))) & mask;
}

std::uint32_t reflect_index(std::uint32_t x, int n) {
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1u) out |= 1u << ((n - i) % n);
  }
  return out;
}

namespace {

template <typename Map>
StateVector permute(const StateVector& state, Map map) {
  std::vector<cplx> out(state.dim());
  for (std::size_t x = 0; x < state.dim(); ++x) {
    out[map(static_cast<std::uint32_t>(x), state.qubits())] = state[x];
  }
  return StateVector(state.qubits(), std::move(out));
}

SymClass sign_class(const StateVector& a, const StateVector& image, double tol) {
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    plus = std::max(plus, std::abs(image[i] - a[i]));
    minus = std::max(minus, std::abs(image[i] + a[i]));
  }
  if (plus < tol) return SymClass::Even;
  if (minus < tol) return SymClass::Odd;
  return SymClass::None;
}

// Orthogonalizes v against `basis` twice; returns the residual norm.
double project_out(std::vector<cplx>& v, const std::vector<StateVector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      cplx c = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) c += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
  }
  double nrm = 0.0;
  for (const auto& a : v) nrm += std::norm(a);
  return std::sqrt(nrm);
}

}  // namespace

StateVector parity_op(const StateVector& state) {
  std::vector<cplx> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t x = 0; x < out.size(); ++x) {
    if (std::popcount(static_cast<std::uint32_t>(x)) & 1) out[x] = -out[x];
  }
  return StateVector(state.qubits(), std::move(out));
}

StateVector translate(const StateVector& state) { return permute(state, translate_index); }
StateVector reflect(const StateVector& state) { return permute(state, reflect_index); }

CommutatorReport commutator_checks(const PauliSum& h) {
  const int n = h.size();
  const Eigen::MatrixXcd m = to_dense(h);
  const std::size_t dim = std::size_t{1} << n;
  CommutatorReport r;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const auto ua = static_cast<std::uint32_t>(a);
      const auto ub = static_cast<std::uint32_t>(b);
      const double pa = (std::popcount(ua) & 1) ? -1.0 : 1.0;
      const double pb = (std::popcount(ub) & 1) ? -1.0 : 1.0;
      r.parity = std::max(r.parity, std::abs(m(a, b) * (pb - pa)));
      // (H U)_{ab} = H_{a, pi(b)} and (U H)_{ab} = H_{pi^-1(a), b}; compare via pi
      const auto ta = translate_index(ua, n);
      const auto tb = translate_index(ub, n);
      r.translation = std::max(r.translation, std::abs(m(ta, tb) - m(a, b)));
      const auto ra = reflect_index(ua, n);
      const auto rb = reflect_index(ub, n);
      r.reflection = std::max(r.reflection, std::abs(m(ra, rb) - m(a, b)));
    }
  }
  return r;
}

SymmetryTags classify(const StateVector& state, double tol) {
  SymmetryTags tags;
  tags.parity = sign_class(state, parity_op(state), tol);
  tags.reflection = sign_class(state, reflect(state), tol);
  tags.translation_invariant = sign_class(state, translate(state), tol) == SymClass::Even;
  return tags;
}

namespace {

struct NamedSpec {
  const char* name;
  std::vector<SignedBasis> terms;
  bool analytic;
};

std::vector<NamedSpec> named_specs(int n) {
  if (n == 3) {
    return {
        {"w3-twoparticle", {{+1, "110"}, {+1, "101"}, {+1, "011"}}, false},
        {"w3-oneparticle", {{+1, "100"}, {+1, "010"}, {+1, "001"}}, false},
        {"pair-1p-a", {{+1, "001"}, {-1, "010"}}, true},
        {"pair-1p-b", {{+1, "100"}, {-1, "001"}}, true},
        {"pair-2p-a", {{+1, "110"}, {-1, "101"}}, true},
        {"pair-2p-b", {{+1, "011"}, {-1, "110"}}, true},
    };
  }
  return {
      {"w4-oneparticle", {{+1, "0001"}, {+1, "0010"}, {+1, "0100"}, {+1, "1000"}}, false},
      {"alt4-oneparticle", {{+1, "0001"}, {-1, "0010"}, {+1, "0100"}, {-1, "1000"}}, false},
      {"even7",
       {{+1, "0000"}, {+1, "1100"}, {+1, "0110"}, {+1, "0101"}, {+1, "1010"}, {+1, "1001"}, {+1, "1111"}},
       false},
      {"pair-1p-a", {{+1, "0001"}, {-1, "0100"}}, true},
      {"pair-1p-b", {{+1, "0010"}, {-1, "1000"}}, true},
      {"quad-2p-a", {{+1, "0101"}, {-1, "1010"}}, true},
      {"quad-2p-b", {{+1, "0011"}, {-1, "0110"}}, true},
      {"quad-2p-c", {{+1, "0110"}, {-1, "1001"}}, true},
      {"quad-2p-d", {{+1, "1001"}, {-1, "1100"}}, true},
      {"pair-3p-a", {{+1, "1110"}, {-1, "1011"}}, true},
      {"pair-3p-b", {{+1, "1101"}, {-1, "0111"}}, true},
  };
}

}  // namespace

std::vector<LibraryEntry> initial_state_library(int n) {
  if (n != 3 && n != 4) {
    throw Error(ErrorKind::InvalidParameter, "state library is defined for N = 3 and N = 4 only");
  }
  std::vector<LibraryEntry> out;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    auto s = from_basis(n, x);
    auto tags = classify(s);
    out.push_back({"basis-" + format_bitstring(x, n), std::move(s), tags, false});
  }
  for (const auto& spec : named_specs(n)) {
    auto s = from_superposition(n, spec.terms);
    auto tags = classify(s);
    out.push_back({spec.name, std::move(s), tags, spec.analytic});
  }
  return out;
}

std::optional<StateVector> library_state(int n, std::string_view name) {
  for (auto& e : initial_state_library(n)) {
    if (e.name == name) return std::move(e.state);
  }
  return std::nullopt;
}

std::vector<StateVector> degenerate_partners(const StateVector& state, const PauliSum& h, double tol,
                                             double min_residual) {
  if (min_residual < 0.0) min_residual = tol;
  const StateVector v0 = state.normalized();
  const double de = uncertainty(v0, h);
  if (!(de < tol)) {
    throw Error(ErrorKind::InvalidOperand,
                "state is not an eigenstate within " + std::to_string(tol) + " (delta_e " + std::to_string(de) + ")");
  }
  const double e0 = expectation(v0, h);
  std::vector<StateVector> basis{v0};
  std::deque<StateVector> pending{v0};
  while (!pending.empty() && basis.size() < v0.dim()) {
    const StateVector cur = std::move(pending.front());
    pending.pop_front();
    for (const auto& image : {translate(cur), reflect(cur)}) {
      std::vector<cplx> w(image.amplitudes().begin(), image.amplitudes().end());
      const double res = project_out(w, basis);
      if (res <= min_residual) continue;
      for (auto& a : w) a /= res;
      StateVector next(v0.qubits(), std::move(w));
      const double e = expectation(next, h);
      if (std::abs(e - e0) > tol) {
        throw Error(ErrorKind::InternalConsistency, "partner energy " + std::to_string(e) +
                                                        " differs from " + std::to_string(e0));
      }
      basis.push_back(next);
      pending.push_back(std::move(next));
    }
  }
  return basis;
}

}  // namespace isingql
