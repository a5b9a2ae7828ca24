#pragma once

// Real-time and thermal observables evaluated from a spectrum (energies plus
// real eigenvector components t_{Ix}).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "isingql/oracle.hpp"
#include "isingql/pauli.hpp"

namespace isingql {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 10.0;
  int samples = 400;

  void validate() const;
  double at(int k) const;  // uniform, both ends included
};

struct ObservableSeries {
  TimeGrid grid;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // one vector per label
};

// sum_I t_{I x_in} t_{I x_fin} exp(-i E_I t)
std::complex<double> transition_amplitude(const Spectrum& s, std::uint32_t x_in, std::uint32_t x_fin, double t);

std::vector<double> transition_probability_series(const Spectrum& s, std::uint32_t x_in,
                                                  std::uint32_t x_fin, const TimeGrid& grid);

// <x| n_site(t) |x> via the double spectral sum.
double occupation(const Spectrum& s, std::uint32_t x, int site, double t);
std::vector<double> occupation_series(const Spectrum& s, std::uint32_t x, int site, const TimeGrid& grid);

// 1 - (2/N) sum_i <n_i(t)>
std::vector<double> magnetization_series(const Spectrum& s, std::uint32_t x, const TimeGrid& grid);

// <(-1)^F(t)> for the initial basis state x.
double parity_expectation(const Spectrum& s, std::uint32_t x, double t);

// Gibbs average sum_I w_I <psi_I|O|psi_I> / sum_I w_I with w_I = exp(-beta (E_I - E_min)).
double thermal_average(const Spectrum& s, const PauliSum& op, double beta);

}  // namespace isingql
