#pragma once

// Exact diagonalization of real Pauli-sum Hamiltonians.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "isingql/linalg.hpp"
#include "isingql/pauli.hpp"

namespace isingql {

// Energies ascending; row I of t holds the components t_{Ix} = <psi_I|x>.
struct Spectrum {
  int qubits = 0;
  std::vector<double> energies;
  linalg::Matrix t;

  std::size_t dim() const noexcept { return energies.size(); }
};

// Throws when a term with an odd number of Y letters is present.
linalg::Matrix to_dense_real(const PauliSum& h);

// Flips the sign of v so that its largest-magnitude entry is positive; among
// entries tied in magnitude (within 1e-12) the lowest index decides.
void sign_normalize(std::span<double> v);

Spectrum jacobi_eig(const linalg::Matrix& m);

Spectrum oracle_spectrum(int n, double coupling, double field);

// Columns: index, energy, t_0 .. t_{2^N-1}.
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s,
                        const std::vector<std::string>& comments);
Spectrum read_spectrum_csv(const std::filesystem::path& path);

}  // namespace isingql
