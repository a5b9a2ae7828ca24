#include "isingql/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "isingql/errors.hpp"
#include "isingql/state.hpp"

namespace isingql {

namespace {

void check_index(const Spectrum& s, std::uint32_t x) {
  if (x >= s.dim()) {
    throw Error(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(x) + " outside spectrum");
  }
}

// w_I = t_{Ix} exp(-i E_I t)
std::vector<cplx> phased_column(const Spectrum& s, std::uint32_t x, double t) {
  std::vector<cplx> w(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) w[i] = s.t(i, x) * std::exp(cplx(0.0, -s.energies[i] * t));
  return w;
}

// G_IJ = sum_y f(y) t_Iy t_Jy
template <typename Weight>
linalg::Matrix weighted_gram(const Spectrum& s, Weight f) {
  const std::size_t dim = s.dim();
  linalg::Matrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      double acc = 0.0;
      for (std::size_t y = 0; y < dim; ++y) acc += f(static_cast<std::uint32_t>(y)) * s.t(i, y) * s.t(j, y);
      g(i, j) = acc;
      g(j, i) = acc;
    }
  }
  return g;
}

// sum_IJ w_I G_IJ conj(w_J); the imaginary residue must vanish
double sandwich(const Spectrum& s, std::uint32_t x, double t, const linalg::Matrix& g) {
  const std::size_t dim = s.dim();
  const auto w = phased_column(s, x, t);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < dim; ++j) row += g(i, j) * std::conj(w[j]);
    acc += w[i] * row;
  }
  if (std::abs(acc.imag()) > 1e-9) {
    throw Error(ErrorKind::InternalConsistency, "spectral sum has imaginary residue " + std::to_string(acc.imag()));
  }
  return acc.real();
}

auto site_weight(int site) {
  return [site](std::uint32_t y) { return static_cast<double>((y >> site) & 1u); };
}

}  // namespace

void TimeGrid::validate() const {
  if (samples < 1) throw Error(ErrorKind::InvalidParameter, "time grid needs >= 1 sample");
  if (!(t_end >= t_start)) throw Error(ErrorKind::InvalidParameter, "time grid end precedes start");
}

double TimeGrid::at(int k) const {
  if (samples == 1) return t_start;
  return t_start + (t_end - t_start) * static_cast<double>(k) / static_cast<double>(samples - 1);
}

std::complex<double> transition_amplitude(const Spectrum& s, std::uint32_t x_in, std::uint32_t x_fin, double t) {
  check_index(s, x_in);
  check_index(s, x_fin);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    acc += s.t(i, x_in) * s.t(i, x_fin) * std::exp(cplx(0.0, -s.energies[i] * t));
  }
  return acc;
}

std::vector<double> transition_probability_series(const Spectrum& s, std::uint32_t x_in,
                                                  std::uint32_t x_fin, const TimeGrid& grid) {
  grid.validate();
  std::vector<double> out(static_cast<std::size_t>(grid.samples));
  for (int k = 0; k < grid.samples; ++k) out[k] = std::norm(transition_amplitude(s, x_in, x_fin, grid.at(k)));
  return out;
}

double occupation(const Spectrum& s, std::uint32_t x, int site, double t) {
  check_index(s, x);
  if (site < 0 || site >= s.qubits) throw Error(ErrorKind::IndexOutOfRange, "site out of range");
  return sandwich(s, x, t, weighted_gram(s, site_weight(site)));
}

std::vector<double> occupation_series(const Spectrum& s, std::uint32_t x, int site, const TimeGrid& grid) {
  grid.validate();
  check_index(s, x);
  if (site < 0 || site >= s.qubits) throw Error(ErrorKind::IndexOutOfRange, "site out of range");
  const auto g = weighted_gram(s, site_weight(site));
  std::vector<double> out(static_cast<std::size_t>(grid.samples));
  for (int k = 0; k < grid.samples; ++k) out[k] = sandwich(s, x, grid.at(k), g);
  return out;
}

std::vector<double> magnetization_series(const Spectrum& s, std::uint32_t x, const TimeGrid& grid) {
  grid.validate();
  check_index(s, x);
  const int n = s.qubits;
  const auto g = weighted_gram(s, [](std::uint32_t y) { return static_cast<double>(std::popcount(y)); });
  std::vector<double> out(static_cast<std::size_t>(grid.samples));
  for (int k = 0; k < grid.samples; ++k) out[k] = 1.0 - 2.0 * sandwich(s, x, grid.at(k), g) / n;
  return out;
}

double parity_expectation(const Spectrum& s, std::uint32_t x, double t) {
  check_index(s, x);
  return sandwich(s, x, t, weighted_gram(s, [](std::uint32_t y) { return (std::popcount(y) & 1) ? -1.0 : 1.0; }));
}

double thermal_average(const Spectrum& s, const PauliSum& op, double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorKind::InvalidParameter, "beta must be >= 0");
  if (op.size() != s.qubits) throw Error(ErrorKind::DimensionMismatch, "operator/spectrum size mismatch");
  const double emin = *std::min_element(s.energies.begin(), s.energies.end());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double w = std::exp(-beta * (s.energies[i] - emin));
    if (w == 0.0) continue;
    const auto row = s.t.row(i);
    const StateVector psi = from_real(s.qubits, row);
    num += w * expectation(psi, op);
    den += w;
  }
  return num / den;
}

}  // namespace isingql
