#pragma once

// Krylov spaces spanned by states of a QITE trace: overlap and Hamiltonian
// matrices from recorded energies and normalizations, the generalized
// eigenproblem, and the (l, m) scan filtered by the energy uncertainty.

#include <limits>
#include <span>
#include <vector>

#include "isingql/linalg.hpp"
#include "isingql/noise.hpp"
#include "isingql/pauli.hpp"
#include "isingql/qite.hpp"
#include "isingql/state.hpp"

namespace isingql {

struct KrylovMatrices {
  linalg::Matrix t;
  linalg::Matrix h;
};

// T_{ll'} = c_l c_l' / c_r^2 and H_{ll'} = T_{ll'} E_r with r = (l + l') / 2.
KrylovMatrices krylov_matrices(const QiteTrace& trace, std::span<const int> selection);

struct PencilRoot {
  double energy = 0.0;
  std::vector<double> x;
};

// Roots of H x = E T x, ascending. Eigendirections of T below `floor` are
// discarded before whitening.
std::vector<PencilRoot> solve_gen_eig(const linalg::Matrix& t, const linalg::Matrix& h,
                                      double floor = 1e-6);

// Both roots of det(H - E T) = 0 for 2x2 matrices, ascending.
std::vector<double> pencil_roots_2x2(const linalg::Matrix& t, const linalg::Matrix& h);

// Normalized sum_k x_k |Phi_{sel_k}>.
StateVector reconstruct(const QiteTrace& trace, std::span<const int> selection, std::span<const double> x);

// || (H - <H>) |psi> ||, equal to sqrt(<H^2> - <H>^2).
double uncertainty(const StateVector& state, const PauliSum& h);

struct Candidate {
  double energy = 0.0;         // pencil value in exact mode, re-measured otherwise
  double pencil_energy = 0.0;
  double energy_variance = 0.0;
  std::vector<double> x;
  StateVector state;
  double delta_e = std::numeric_limits<double>::infinity();
  std::vector<int> selection;
  int root = 0;
};

struct ScanRecord {
  std::vector<int> selection;
  double energy = 0.0;
  double delta_e = 0.0;
  bool accepted = false;
};

struct ScanConfig {
  double accept_delta = 0.8;
  double scan_stop = 1.0;
  bool early_stop = false;  // stop at the first selection whose delta_e < scan_stop
  int dim = 2;
  int root = 0;             // which pencil root (ascending) to follow
  double floor = 1e-6;
};

struct ScanResult {
  Candidate best;
  std::vector<ScanRecord> records;
};

// Enumerates even selections in increasing last index, then lexicographically,
// and returns the accepted candidate with the smallest uncertainty (ties keep
// the earlier selection). `noise`/`mode` govern the reported energy.
ScanResult scan(const QiteTrace& trace, const PauliSum& h, const ScanConfig& cfg,
                MeasureMode mode = MeasureMode::Exact, const NoiseConfig& noise = {},
                StreamKey key = {});

}  // namespace isingql
