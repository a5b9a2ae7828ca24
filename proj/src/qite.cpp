#include "isingql/qite.hpp"

#include <cmath>

#include "isingql/errors.hpp"

namespace isingql {

void QiteConfig::validate(int n) const {
  if (!(dtau > 0.0) || !std::isfinite(dtau)) throw Error(ErrorKind::InvalidParameter, "dtau must be > 0");
  if (steps < 1) throw Error(ErrorKind::InvalidParameter, "steps must be >= 1");
  if (!(svd_cutoff >= 0.0 && svd_cutoff < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "svd cutoff must lie in [0, 1)");
  }
  if (c_expansion_order != 1 && c_expansion_order != 2) {
    throw Error(ErrorKind::InvalidParameter, "c expansion order must be 1 or 2");
  }
  if (mode != MeasureMode::Exact) noise.validate(n);
}

std::vector<PauliString> reduced_pool(int n) {
  std::vector<PauliString> out;
  for (auto& p : operator_pool(n)) {
    if (p.odd_y()) out.push_back(p);
  }
  return out;
}

LinearSystem build_linear_system(const StateVector& state, const PauliSum& h,
                                 std::span<const PauliString> pool, double c_ratio,
                                 const QiteConfig& cfg, std::uint64_t step) {
  const std::size_t k = pool.size();
  LinearSystem sys{linalg::Matrix(k, k), std::vector<double>(k, 0.0)};
  StreamKey key{cfg.run, cfg.entry, step, purpose::kOverlap, 0};
  auto measure = [&](const PauliString& p, std::uint64_t term) {
    key.term = term;
    return measure_pauli(state, p, cfg.noise, cfg.mode, key).value;
  };

  // Re<s_I s_J> vanishes unless the strings commute, in which case the phase is +-1.
  for (std::size_t i = 0; i < k; ++i) {
    sys.m(i, i) = 2.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!commutes(pool[i], pool[j])) continue;
      const auto [phase, prod] = multiply(pool[i], pool[j]);
      const double v = 2.0 * to_complex(phase).real() * measure(prod, i * k + j);
      sys.m(i, j) = v;
      sys.m(j, i) = v;
    }
  }

  // Re[-i <s_I h_m P_m>] is nonzero only for anticommuting pairs, phase +-i.
  key.purpose = purpose::kDrive;
  const double factor = std::sqrt(c_ratio);
  const auto& terms = h.terms();
  for (std::size_t i = 0; i < k; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (commutes(pool[i], terms[t].string)) continue;
      const auto [phase, prod] = multiply(pool[i], terms[t].string);
      const double re = (cplx(0.0, -1.0) * to_complex(phase)).real();
      acc += terms[t].coefficient * re * measure(prod, i * terms.size() + t);
    }
    sys.b[i] = factor * acc;
  }
  return sys;
}

std::vector<double> solve_update(const linalg::Matrix& m, std::span<const double> b, double cutoff) {
  const std::size_t k = m.rows();
  if (m.cols() != k || b.size() != k) throw Error(ErrorKind::DimensionMismatch, "linear system shape mismatch");
  std::vector<double> a(k, 0.0);
  double bmax = 0.0;
  for (double v : b) bmax = std::max(bmax, std::abs(v));
  if (m.max_abs() == 0.0) {
    if (bmax != 0.0) throw Error(ErrorKind::InconsistentSystem, "zero matrix with nonzero right-hand side");
    return a;
  }
  if (bmax == 0.0) return a;
  const auto eig = linalg::jacobi_eigen(m);
  const double lmax = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  for (std::size_t e = 0; e < k; ++e) {
    const double lambda = eig.values[e];
    if (lambda < cutoff * lmax || lambda <= 0.0) continue;
    const auto v = eig.vectors.row(e);
    double proj = 0.0;
    for (std::size_t i = 0; i < k; ++i) proj += v[i] * b[i];
    proj /= lambda;
    for (std::size_t i = 0; i < k; ++i) a[i] += proj * v[i];
  }
  return a;
}

namespace {

Estimate measure_energy(const StateVector& state, const PauliSum& h, const QiteConfig& cfg,
                        std::uint64_t step, std::uint64_t what) {
  return measured_expectation(state, h, cfg.noise, cfg.mode, {cfg.run, cfg.entry, step, what, 0});
}

}  // namespace

QiteStep qite_step(const StateVector& state, const PauliSum& h, double c_sq_inv_prev,
                   const QiteConfig& cfg, std::span<const PauliString> pool, std::uint64_t step) {
  QiteStep out;
  const auto energy = measure_energy(state, h, cfg, step, purpose::kEnergy);
  out.energy = energy.value;
  out.energy_variance = energy.variance;
  double f = 1.0 - 2.0 * cfg.dtau * out.energy;
  if (cfg.c_expansion_order == 2) {
    const double h2 = measure_energy(state, multiply(h, h), cfg, step, purpose::kEnergySquared).value;
    f += 2.0 * cfg.dtau * cfg.dtau * h2;
  }
  if (!(f > 0.0)) {
    throw Error(ErrorKind::StepTooLarge, "normalization factor " + std::to_string(f) +
                                             " <= 0 at step " + std::to_string(step) +
                                             "; use a smaller dtau");
  }
  out.c_sq_inv = c_sq_inv_prev * f;
  // c_{s-1} / c_s = sqrt(f)
  const auto sys = build_linear_system(state, h, pool, std::sqrt(f), cfg, step);
  out.a = solve_update(sys.m, sys.b, cfg.svd_cutoff);
  PauliSum generator(state.qubits());
  for (std::size_t i = 0; i < pool.size(); ++i) generator.add(out.a[i], pool[i]);
  out.state = exp_apply(state, generator, cfg.dtau);
  return out;
}

QiteTrace run_qite(const StateVector& initial, const PauliSum& h, const QiteConfig& cfg) {
  if (initial.qubits() != h.size()) throw Error(ErrorKind::DimensionMismatch, "state/Hamiltonian size mismatch");
  cfg.validate(h.size());
  const auto pool = reduced_pool(h.size());
  QiteTrace trace;
  trace.states.push_back(initial);
  trace.c_sq_inv.push_back(1.0);
  for (int s = 0; s < cfg.steps; ++s) {
    auto st = qite_step(trace.states.back(), h, trace.c_sq_inv.back(), cfg, pool,
                        static_cast<std::uint64_t>(s));
    trace.energies.push_back(st.energy);
    trace.energy_variances.push_back(st.energy_variance);
    trace.c_sq_inv.push_back(st.c_sq_inv);
    trace.a_coeffs.push_back(std::move(st.a));
    trace.states.push_back(std::move(st.state));
  }
  const auto last = measure_energy(trace.states.back(), h, cfg, static_cast<std::uint64_t>(cfg.steps),
                                   purpose::kEnergy);
  trace.energies.push_back(last.value);
  trace.energy_variances.push_back(last.variance);
  return trace;
}

}  // namespace isingql
