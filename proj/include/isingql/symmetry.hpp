#pragma once

// Site permutations and fermion parity on statevectors, commutator checks,
// the named initial-state library and degenerate-partner expansion.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isingql/pauli.hpp"
#include "isingql/state.hpp"

namespace isingql {

// Occupation on site i moves to site (i + 1) mod N.
std::uint32_t translate_index(std::uint32_t x, int n);
// Occupation on site i moves to site (-i) mod N.
std::uint32_t reflect_index(std::uint32_t x, int n);

// (-1)^F |x> with F the occupation count.
StateVector parity_op(const StateVector& state);
StateVector translate(const StateVector& state);
StateVector reflect(const StateVector& state);

struct CommutatorReport {
  double parity = 0.0;       // max |[H, (-1)^F]_{ab}|
  double translation = 0.0;  // max |[H, P]_{ab}|
  double reflection = 0.0;   // max |[H, R]_{ab}|

  bool all_below(double tol) const { return parity < tol && translation < tol && reflection < tol; }
};

CommutatorReport commutator_checks(const PauliSum& h);

enum class SymClass { Even, Odd, None };

struct SymmetryTags {
  SymClass parity = SymClass::None;
  SymClass reflection = SymClass::None;
  bool translation_invariant = false;
};

// Tags measured by applying the operators to the state.
SymmetryTags classify(const StateVector& state, double tol = 1e-10);

struct LibraryEntry {
  std::string name;
  StateVector state;
  SymmetryTags tags;
  bool analytic = false;  // exact eigenstate at J = 0.6, h = 1
};

// Named states for N = 3 and N = 4: every basis state ("basis-0101"), the
// superpositions used as QITE starting points and the closed-form degenerate
// eigenstates.
std::vector<LibraryEntry> initial_state_library(int n);
std::optional<StateVector> library_state(int n, std::string_view name);

// Orthonormal basis of the orbit of `state` under translation and reflection.
// Images whose residual after projection is <= min_residual (tol when
// negative) are dropped. Throws when the input is not an eigenstate within tol.
std::vector<StateVector> degenerate_partners(const StateVector& state, const PauliSum& h, double tol,
                                             double min_residual = -1.0);

}  // namespace isingql
