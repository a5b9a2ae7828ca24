#include "isingql/qlanczos.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "isingql/errors.hpp"

namespace isingql {

KrylovMatrices krylov_matrices(const QiteTrace& trace, std::span<const int> selection) {
  const std::size_t k = selection.size();
  KrylovMatrices out{linalg::Matrix(k, k), linalg::Matrix(k, k)};
  const auto len = static_cast<int>(trace.c_sq_inv.size());
  for (int l : selection) {
    if (l < 0 || l >= len || l % 2 != 0) {
      throw Error(ErrorKind::IndexOutOfRange, "Krylov index " + std::to_string(l) +
                                                  " is odd or outside the trace");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const int l = selection[i];
      const int m = selection[j];
      const int r = (l + m) / 2;
      if (r >= static_cast<int>(trace.energies.size())) {
        throw Error(ErrorKind::IndexOutOfRange, "midpoint step " + std::to_string(r) + " outside trace");
      }
      // c_l c_m / c_r^2 with c = (1/c^2)^{-1/2}
      const double t = (i == j) ? 1.0
                                : trace.c_sq_inv[r] / std::sqrt(trace.c_sq_inv[l] * trace.c_sq_inv[m]);
      out.t(i, j) = t;
      out.h(i, j) = t * trace.energies[r];
    }
  }
  return out;
}

std::vector<PencilRoot> solve_gen_eig(const linalg::Matrix& t, const linalg::Matrix& h, double floor) {
  const std::size_t k = t.rows();
  if (k < 1 || t.cols() != k || h.rows() != k || h.cols() != k) {
    throw Error(ErrorKind::DimensionMismatch, "pencil matrices must be square and equal in size");
  }
  const auto te = linalg::jacobi_eigen(t);
  std::vector<std::size_t> kept;
  for (std::size_t e = 0; e < k; ++e) {
    if (te.values[e] >= floor) kept.push_back(e);
  }
  if (kept.empty()) throw Error(ErrorKind::DegenerateKrylov, "overlap matrix has no direction above the floor");

  // W has columns v_e / sqrt(lambda_e); reduced problem W^T H W y = E y, x = W y
  const std::size_t r = kept.size();
  linalg::Matrix w(k, r);
  for (std::size_t c = 0; c < r; ++c) {
    const double s = 1.0 / std::sqrt(te.values[kept[c]]);
    for (std::size_t i = 0; i < k; ++i) w(i, c) = te.vectors(kept[c], i) * s;
  }
  const linalg::Matrix wt = w.transposed();
  linalg::Matrix reduced = wt * h * w;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const double avg = 0.5 * (reduced(i, j) + reduced(j, i));
      reduced(i, j) = avg;
      reduced(j, i) = avg;
    }
  }
  const auto re = linalg::jacobi_eigen(reduced);
  std::vector<PencilRoot> roots;
  for (std::size_t e = 0; e < r; ++e) {
    PencilRoot root;
    root.energy = re.values[e];
    root.x = w * re.vectors.row(e);
    roots.push_back(std::move(root));
  }
  return roots;
}

std::vector<double> pencil_roots_2x2(const linalg::Matrix& t, const linalg::Matrix& h) {
  if (t.rows() != 2 || t.cols() != 2 || h.rows() != 2 || h.cols() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "quadratic pencil path needs 2x2 matrices");
  }
  const double a = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
  const double b = -(h(0, 0) * t(1, 1) + h(1, 1) * t(0, 0) - h(0, 1) * t(1, 0) - h(1, 0) * t(0, 1));
  const double c = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  if (a == 0.0) throw Error(ErrorKind::DegenerateKrylov, "singular 2x2 overlap matrix");
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  // stable form avoiding cancellation
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : -b / a - r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

StateVector reconstruct(const QiteTrace& trace, std::span<const int> selection, std::span<const double> x) {
  if (selection.size() != x.size() || selection.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "selection and coefficient sizes differ");
  }
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorKind::InvalidOperand, "zero coefficient vector");
  }
  const auto& first = trace.states.at(static_cast<std::size_t>(selection[0]));
  std::vector<cplx> amp(first.dim());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto& s = trace.states.at(static_cast<std::size_t>(selection[k]));
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] += x[k] * s[i];
  }
  StateVector v(first.qubits(), std::move(amp));
  if (!(v.norm() > 1e-300)) throw Error(ErrorKind::InvalidOperand, "reconstructed vector vanishes");
  return v.normalized();
}

double uncertainty(const StateVector& state, const PauliSum& h) {
  const StateVector hpsi = apply(state, h);
  const double e = inner(state, hpsi).real();
  double acc = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) acc += std::norm(hpsi[i] - e * state[i]);
  return std::sqrt(acc);
}

namespace {

// All strictly increasing k-tuples of even indices <= last_max, ordered by
// their last element, then lexicographically.
std::vector<std::vector<int>> enumerate_selections(int last_max, int dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> fill = [&](int start, int limit) {
    if (static_cast<int>(cur.size()) == dim - 1) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < limit; v += 2) {
      cur.push_back(v);
      fill(v + 2, limit);
      cur.pop_back();
    }
  };
  for (int m = 2 * (dim - 1); m <= last_max; m += 2) {
    const std::size_t before = out.size();
    fill(0, m);
    for (std::size_t i = before; i < out.size(); ++i) out[i].push_back(m);
  }
  return out;
}

}  // namespace

ScanResult scan(const QiteTrace& trace, const PauliSum& h, const ScanConfig& cfg, MeasureMode mode,
                const NoiseConfig& noise, StreamKey key) {
  if (cfg.dim < 1) throw Error(ErrorKind::InvalidParameter, "Krylov dimension must be >= 1");
  if (cfg.root < 0 || cfg.root >= cfg.dim) throw Error(ErrorKind::InvalidParameter, "pencil root index out of range");
  const int len = static_cast<int>(trace.length());
  if (len < 2 * cfg.dim - 1) {
    throw Error(ErrorKind::InvalidParameter, "trace too short for Krylov dimension " + std::to_string(cfg.dim));
  }
  const int last_even = (len - 1) / 2 * 2;
  ScanResult result;
  double best_seen = std::numeric_limits<double>::infinity();
  bool have = false;
  for (const auto& sel : enumerate_selections(last_even, cfg.dim)) {
    const auto km = krylov_matrices(trace, sel);
    std::vector<PencilRoot> roots;
    try {
      roots = solve_gen_eig(km.t, km.h, cfg.floor);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateKrylov) throw;
    }
    ScanRecord rec{sel, std::nan(""), std::numeric_limits<double>::infinity(), false};
    if (static_cast<int>(roots.size()) > cfg.root) {
      const auto& root = roots[static_cast<std::size_t>(cfg.root)];
      StateVector state = reconstruct(trace, sel, root.x);
      rec.energy = root.energy;
      rec.delta_e = uncertainty(state, h);
      rec.accepted = rec.delta_e <= cfg.accept_delta;
      best_seen = std::min(best_seen, rec.delta_e);
      if (rec.accepted && (!have || rec.delta_e < result.best.delta_e - 1e-12)) {
        have = true;
        result.best.energy = root.energy;
        result.best.pencil_energy = root.energy;
        result.best.x = root.x;
        result.best.state = std::move(state);
        result.best.delta_e = rec.delta_e;
        result.best.selection = sel;
        result.best.root = cfg.root;
      }
    }
    result.records.push_back(rec);
    if (cfg.early_stop && have && rec.delta_e < cfg.scan_stop) break;
  }
  if (!have) {
    throw NoConvergenceError("no Krylov selection passed delta_e <= " + std::to_string(cfg.accept_delta) +
                                 " (best " + std::to_string(best_seen) + ")",
                             best_seen);
  }
  if (mode != MeasureMode::Exact) {
    key.purpose = purpose::kCandidate;
    const auto e = measured_expectation(result.best.state, h, noise, mode, key);
    result.best.energy = e.value;
    result.best.energy_variance = e.variance;
  }
  return result;
}

}  // namespace isingql
