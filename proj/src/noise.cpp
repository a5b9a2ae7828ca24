#include "isingql/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "isingql/errors.hpp"

namespace isingql {

std::string to_string(MeasureMode mode) {
  switch (mode) {
    case MeasureMode::Exact: return "exact";
    case MeasureMode::Shots: return "shots";
    case MeasureMode::ShotsRoem: return "shots+roem";
    case MeasureMode::ShotsRoemRichardson: return "shots+roem+richardson";
  }
  return "exact";
}

MeasureMode parse_measure_mode(std::string_view text) {
  if (text == "exact") return MeasureMode::Exact;
  if (text == "shots") return MeasureMode::Shots;
  if (text == "shots+roem") return MeasureMode::ShotsRoem;
  if (text == "shots+roem+richardson") return MeasureMode::ShotsRoemRichardson;
  throw Error(ErrorKind::Parse, "unknown measurement mode '" + std::string(text) +
                                    "' (expected exact, shots, shots+roem, shots+roem+richardson)");
}

namespace {

double pick(const std::vector<double>& v, int qubit) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  return v.at(static_cast<std::size_t>(qubit));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Rotates the measured qubits of p into the Z basis: H for X, H S^dagger for Y.
void rotate_to_z(std::vector<cplx>& amp, const PauliString& p) {
  const std::size_t dim = amp.size();
  for (int q = 0; q < p.size(); ++q) {
    const Letter l = p.letter(q);
    if (l == Letter::I || l == Letter::Z) continue;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t x = 0; x < dim; ++x) {
      if (x & bit) continue;
      cplx a0 = amp[x];
      cplx a1 = amp[x | bit];
      if (l == Letter::Y) a1 *= cplx(0.0, -1.0);
      amp[x] = (a0 + a1) * kInvSqrt2;
      amp[x | bit] = (a0 - a1) * kInvSqrt2;
    }
  }
}

double parity_sign(std::uint32_t x, std::uint32_t support) {
  return (std::popcount(x & support) & 1) ? -1.0 : 1.0;
}

}  // namespace

double NoiseConfig::p01_at(int qubit) const { return pick(p01, qubit); }
double NoiseConfig::p10_at(int qubit) const { return pick(p10, qubit); }

void NoiseConfig::validate(int n) const {
  if (shots < 1) throw Error(ErrorKind::InvalidParameter, "shots must be >= 1");
  for (const auto* v : {&p01, &p10}) {
    if (v->size() > 1 && static_cast<int>(v->size()) != n) {
      throw Error(ErrorKind::InvalidParameter, "readout probability list needs 1 or " +
                                                   std::to_string(n) + " entries");
    }
    for (double p : *v) {
      if (!(p >= 0.0 && p < 0.5)) {
        throw Error(ErrorKind::InvalidParameter, "readout probability must lie in [0, 0.5)");
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    if (p01_at(q) + p10_at(q) >= 1.0) {
      throw Error(ErrorKind::SingularMitigation, "p01 + p10 >= 1 on qubit " + std::to_string(q));
    }
  }
  if (!(depol >= 0.0 && depol <= 0.1)) {
    throw Error(ErrorKind::InvalidParameter, "depolarizing strength must lie in [0, 0.1]");
  }
  if (layers < 0) throw Error(ErrorKind::InvalidParameter, "layer count must be >= 0");
  std::set<int> seen;
  for (int s : scales) {
    if (s < 1 || s > 3) throw Error(ErrorKind::InvalidParameter, "noise scales must lie in [1, 3]");
    if (!seen.insert(s).second) throw Error(ErrorKind::InvalidParameter, "duplicate noise scale");
  }
}

NoiseConfig NoiseConfig::readout(double p) {
  NoiseConfig cfg;
  cfg.p01 = {p};
  cfg.p10 = {p};
  return cfg;
}

std::uint64_t stream_seed(std::uint64_t seed, const StreamKey& key, int scale) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t v : {key.run, key.entry, key.step, key.purpose, key.term,
                          static_cast<std::uint64_t>(scale)}) {
    h = splitmix64(h ^ v);
  }
  return h;
}

std::vector<double> outcome_distribution(const StateVector& state, const PauliString& p,
                                         const NoiseConfig& cfg, int scale) {
  if (scale < 1 || scale > 3) throw Error(ErrorKind::InvalidParameter, "noise scale must lie in [1, 3]");
  if (state.qubits() != p.size()) throw Error(ErrorKind::DimensionMismatch, "state/Pauli size mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidOperand, "sampling requires a normalized state");
  }
  std::vector<cplx> amp(state.amplitudes().begin(), state.amplitudes().end());
  rotate_to_z(amp, p);
  const std::size_t dim = amp.size();
  std::vector<double> q(dim);
  for (std::size_t x = 0; x < dim; ++x) q[x] = std::norm(amp[x]);

  const double lambda = std::pow(1.0 - cfg.depol, static_cast<double>(scale) * cfg.layers);
  if (lambda < 1.0) {
    const double floor = (1.0 - lambda) / static_cast<double>(dim);
    for (auto& v : q) v = lambda * v + floor;
  }

  for (int qb = 0; qb < p.size(); ++qb) {
    if (((p.support() >> qb) & 1u) == 0) continue;
    const double p01 = cfg.p01_at(qb);
    const double p10 = cfg.p10_at(qb);
    if (p01 == 0.0 && p10 == 0.0) continue;
    const std::size_t bit = std::size_t{1} << qb;
    for (std::size_t x = 0; x < dim; ++x) {
      if (x & bit) continue;
      const double q0 = q[x];
      const double q1 = q[x | bit];
      q[x] = (1.0 - p10) * q0 + p01 * q1;
      q[x | bit] = p10 * q0 + (1.0 - p01) * q1;
    }
  }
  return q;
}

CountsTable sample_pauli(const StateVector& state, const PauliString& p, const NoiseConfig& cfg,
                         int scale, const StreamKey& key) {
  const auto q = outcome_distribution(state, p, cfg, scale);
  std::mt19937_64 rng(stream_seed(cfg.seed, key, scale));
  CountsTable table;
  table.qubits = state.qubits();
  table.counts.assign(q.size(), 0);
  table.total = static_cast<std::uint64_t>(cfg.shots);
  // multinomial draw as a chain of conditional binomials
  std::uint64_t remaining = table.total;
  double mass = 1.0;
  for (std::size_t x = 0; x < q.size() && remaining > 0; ++x) {
    if (x + 1 == q.size()) {
      table.counts[x] = remaining;
      break;
    }
    const double prob = mass > 0.0 ? std::clamp(q[x] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, prob);
    const std::uint64_t k = draw(rng);
    table.counts[x] = k;
    remaining -= k;
    mass -= q[x];
  }
  return table;
}

Estimate raw_expectation(const CountsTable& counts, std::uint32_t support) {
  if (counts.total == 0) throw Error(ErrorKind::InvalidOperand, "empty counts table");
  double m = 0.0;
  for (std::size_t x = 0; x < counts.counts.size(); ++x) {
    m += parity_sign(static_cast<std::uint32_t>(x), support) * static_cast<double>(counts.counts[x]);
  }
  m /= static_cast<double>(counts.total);
  return {m, std::max(0.0, 1.0 - m * m) / static_cast<double>(counts.total)};
}

Estimate mitigate_distribution(std::span<const double> q, std::uint32_t support,
                               const NoiseConfig& cfg, double shots) {
  const int n = std::bit_width(q.size()) - 1;
  std::vector<double> pm(static_cast<std::size_t>(n));
  std::vector<double> denom(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pm[i] = cfg.p01_at(i) - cfg.p10_at(i);
    denom[i] = 1.0 - (cfg.p01_at(i) + cfg.p10_at(i));
    if (((support >> i) & 1u) && denom[i] <= 0.0) {
      throw Error(ErrorKind::SingularMitigation, "1 - p+ = 0 on qubit " + std::to_string(i));
    }
  }
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (q[x] == 0.0) continue;
    double g = 1.0;
    for (int i = 0; i < n; ++i) {
      if (((support >> i) & 1u) == 0) continue;
      const double s = ((x >> i) & 1u) ? -1.0 : 1.0;
      g *= (s - pm[i]) / denom[i];
    }
    mean += q[x] * g;
    second += q[x] * g * g;
  }
  return {mean, std::max(0.0, second - mean * mean) / shots};
}

Estimate mitigated_expectation(const CountsTable& counts, std::uint32_t support,
                               const NoiseConfig& cfg) {
  if (counts.total == 0) throw Error(ErrorKind::InvalidOperand, "empty counts table");
  std::vector<double> q(counts.counts.size());
  const double total = static_cast<double>(counts.total);
  for (std::size_t x = 0; x < q.size(); ++x) q[x] = static_cast<double>(counts.counts[x]) / total;
  return mitigate_distribution(q, support, cfg, total);
}

namespace {

// Weights w_k with sum_k w_k v_k equal to the least-squares intercept.
std::vector<double> intercept_weights(std::span<const ScaledValue> values) {
  if (values.size() < 2) throw Error(ErrorKind::InvalidParameter, "extrapolation needs >= 2 points");
  std::set<int> seen;
  double s1 = 0.0;
  double s2 = 0.0;
  for (const auto& v : values) {
    if (!seen.insert(v.scale).second) throw Error(ErrorKind::InvalidParameter, "duplicate noise scale");
    s1 += v.scale;
    s2 += static_cast<double>(v.scale) * v.scale;
  }
  const double n = static_cast<double>(values.size());
  const double det = n * s2 - s1 * s1;
  std::vector<double> w;
  w.reserve(values.size());
  for (const auto& v : values) w.push_back((s2 - v.scale * s1) / det);
  return w;
}

}  // namespace

double richardson_extrapolate(std::span<const ScaledValue> values) {
  return richardson_estimate(values).value;
}

Estimate richardson_estimate(std::span<const ScaledValue> values) {
  const auto w = intercept_weights(values);
  Estimate e;
  for (std::size_t k = 0; k < values.size(); ++k) {
    e.value += w[k] * values[k].value;
    e.variance += w[k] * w[k] * values[k].variance;
  }
  return e;
}

Estimate measure_pauli(const StateVector& state, const PauliString& p, const NoiseConfig& cfg,
                       MeasureMode mode, const StreamKey& key) {
  if (p.is_identity()) return {1.0, 0.0};
  switch (mode) {
    case MeasureMode::Exact:
      return {pauli_expectation(state, p), 0.0};
    case MeasureMode::Shots:
      return raw_expectation(sample_pauli(state, p, cfg, 1, key), p.support());
    case MeasureMode::ShotsRoem:
      return mitigated_expectation(sample_pauli(state, p, cfg, 1, key), p.support(), cfg);
    case MeasureMode::ShotsRoemRichardson: {
      std::vector<ScaledValue> points;
      for (int s : cfg.scales) {
        const auto e = mitigated_expectation(sample_pauli(state, p, cfg, s, key), p.support(), cfg);
        points.push_back({s, e.value, e.variance});
      }
      return richardson_estimate(points);
    }
  }
  return {};
}

Estimate measured_expectation(const StateVector& state, const PauliSum& op, const NoiseConfig& cfg,
                              MeasureMode mode, StreamKey key) {
  if (mode == MeasureMode::Exact) return {expectation(state, op), 0.0};
  Estimate total;
  for (std::size_t i = 0; i < op.terms().size(); ++i) {
    const auto& t = op.terms()[i];
    key.term = i;
    const auto e = measure_pauli(state, t.string, cfg, mode, key);
    total.value += t.coefficient * e.value;
    total.variance += t.coefficient * t.coefficient * e.variance;
  }
  return total;
}

}  // namespace isingql
