#pragma once

// Shot-sampled Pauli measurements with a per-qubit readout flip channel, a
// global depolarizing attenuation, readout-error mitigation (ROEM) and
// Richardson extrapolation over integer noise scales.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isingql/pauli.hpp"
#include "isingql/state.hpp"

namespace isingql {

enum class MeasureMode { Exact, Shots, ShotsRoem, ShotsRoemRichardson };

std::string to_string(MeasureMode mode);
MeasureMode parse_measure_mode(std::string_view text);

struct NoiseConfig {
  long long shots = 8192;
  // Per-qubit p(0|1) and p(1|0). A single entry applies to every qubit; an
  // empty vector means no readout error.
  std::vector<double> p01;
  std::vector<double> p10;
  double depol = 0.0;  // per-layer depolarizing strength
  int layers = 0;      // layer count d
  std::vector<int> scales{1, 2};
  std::uint64_t seed = 0;

  double p01_at(int qubit) const;
  double p10_at(int qubit) const;
  void validate(int n) const;

  static NoiseConfig readout(double p);
};

// Identifies an independent random stream. Every field is mixed into the
// seed, so streams do not depend on evaluation order or thread count.
struct StreamKey {
  std::uint64_t run = 0;
  std::uint64_t entry = 0;
  std::uint64_t step = 0;
  std::uint64_t purpose = 0;
  std::uint64_t term = 0;
};

namespace purpose {
inline constexpr std::uint64_t kEnergy = 1;
inline constexpr std::uint64_t kOverlap = 2;
inline constexpr std::uint64_t kDrive = 3;
inline constexpr std::uint64_t kEnergySquared = 4;
inline constexpr std::uint64_t kCandidate = 5;
inline constexpr std::uint64_t kLevel = 6;
inline constexpr std::uint64_t kComplement = 7;
}  // namespace purpose

std::uint64_t stream_seed(std::uint64_t seed, const StreamKey& key, int scale);

struct CountsTable {
  int qubits = 0;
  std::vector<std::uint64_t> counts;  // indexed by outcome
  std::uint64_t total = 0;
};

struct Estimate {
  double value = 0.0;
  double variance = 0.0;  // of the estimator, i.e. already divided by shots
};

// Outcome distribution after basis rotation, depolarizing mixture and the
// readout channel on the measured qubits. No sampling.
std::vector<double> outcome_distribution(const StateVector& state, const PauliString& p,
                                         const NoiseConfig& cfg, int scale);

CountsTable sample_pauli(const StateVector& state, const PauliString& p, const NoiseConfig& cfg,
                         int scale, const StreamKey& key);

Estimate raw_expectation(const CountsTable& counts, std::uint32_t support);

// Sum_x q(x) prod_{i in support} ((-1)^{x_i} - p_i^-) / (1 - p_i^+) for a
// distribution q; variance is reported for `shots` samples.
Estimate mitigate_distribution(std::span<const double> q, std::uint32_t support,
                               const NoiseConfig& cfg, double shots);
Estimate mitigated_expectation(const CountsTable& counts, std::uint32_t support,
                               const NoiseConfig& cfg);

struct ScaledValue {
  int scale = 1;
  double value = 0.0;
  double variance = 0.0;
};

// Linear fit evaluated at scale 0. Two points {1, 2} give 2*v1 - v2.
double richardson_extrapolate(std::span<const ScaledValue> values);
Estimate richardson_estimate(std::span<const ScaledValue> values);

// <p> for a Hermitian Pauli string, measured per mode.
Estimate measure_pauli(const StateVector& state, const PauliString& p, const NoiseConfig& cfg,
                       MeasureMode mode, const StreamKey& key);

// Term-by-term measurement of <op>; key.term is overwritten with the term index.
Estimate measured_expectation(const StateVector& state, const PauliSum& op, const NoiseConfig& cfg,
                              MeasureMode mode, StreamKey key);

}  // namespace isingql
