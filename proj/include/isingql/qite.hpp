#pragma once

// Quantum imaginary-time evolution. Each step replaces exp(-dtau H) by a
// unitary exp(-i dtau A) with A a real combination of odd-Y Pauli strings
// obtained from the linear system (S + S^T) a = b.

#include <cstdint>
#include <span>
#include <vector>

#include "isingql/linalg.hpp"
#include "isingql/noise.hpp"
#include "isingql/pauli.hpp"
#include "isingql/state.hpp"

namespace isingql {

struct QiteConfig {
  double dtau = 0.1;
  int steps = 30;
  double svd_cutoff = 1e-8;
  int c_expansion_order = 1;  // 1 or 2
  MeasureMode mode = MeasureMode::Exact;
  NoiseConfig noise;
  // Stream coordinates used for every measurement of the run.
  std::uint64_t run = 0;
  std::uint64_t entry = 0;

  void validate(int n) const;
};

struct QiteTrace {
  std::vector<StateVector> states;       // |Psi_0> .. |Psi_n>
  std::vector<double> energies;          // measured <H> per state
  std::vector<double> energy_variances;  // estimator variance, 0 in exact mode
  std::vector<double> c_sq_inv;          // 1/c_s^2 with c_0 = 1
  std::vector<std::vector<double>> a_coeffs;  // one vector per step over the reduced pool

  std::size_t length() const noexcept { return states.size(); }
};

// Strings of operator_pool(n) with an odd number of Y letters, order kept.
std::vector<PauliString> reduced_pool(int n);

struct LinearSystem {
  linalg::Matrix m;
  std::vector<double> b;
};

// M_{IJ} = 2 Re<s_I s_J>, b_I = Re[-i sqrt(c_ratio) <s_I H>] with c_ratio = c_{s-1}/c_s.
LinearSystem build_linear_system(const StateVector& state, const PauliSum& h,
                                 std::span<const PauliString> pool, double c_ratio,
                                 const QiteConfig& cfg, std::uint64_t step = 0);

// Minimum-norm least-squares solution keeping eigenvalues >= cutoff * lambda_max.
std::vector<double> solve_update(const linalg::Matrix& m, std::span<const double> b, double cutoff);

struct QiteStep {
  StateVector state;
  double energy = 0.0;
  double energy_variance = 0.0;
  double c_sq_inv = 1.0;
  std::vector<double> a;
};

QiteStep qite_step(const StateVector& state, const PauliSum& h, double c_sq_inv_prev,
                   const QiteConfig& cfg, std::span<const PauliString> pool, std::uint64_t step = 0);

QiteTrace run_qite(const StateVector& initial, const PauliSum& h, const QiteConfig& cfg);

}  // namespace isingql
