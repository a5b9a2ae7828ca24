#include "isingql/oracle.hpp"

#include <bit>
#include <cmath>

#include "isingql/csv.hpp"
#include "isingql/errors.hpp"
#include "isingql/kernels.hpp"

namespace isingql {

linalg::Matrix to_dense_real(const PauliSum& h) {
  const int n = h.size();
  if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::InvalidParameter, "qubit count out of range");
  const std::size_t dim = std::size_t{1} << n;
  linalg::Matrix m(dim, dim);
  for (const auto& t : h.terms()) {
    if (t.string.odd_y()) {
      throw Error(ErrorKind::NotRealRepresentable,
                  "term " + t.string.to_string() + " has an odd number of Y letters");
    }
    // i^{ny} is +-1 for even ny
    const double phase = (t.string.y_count() & 2) ? -1.0 : 1.0;
    for (std::size_t x = 0; x < dim; ++x) {
      const auto ux = static_cast<std::uint32_t>(x);
      const double sign = kernels::sign_parity(ux, t.string.z_mask()) ? -1.0 : 1.0;
      m(ux ^ t.string.x_mask(), x) += t.coefficient * phase * sign;
    }
  }
  return m;
}

void sign_normalize(std::span<double> v) {
  double best = -1.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best + 1e-12) {
      best = std::abs(v[i]);
      at = i;
    }
  }
  if (!v.empty() && v[at] < 0) {
    for (auto& x : v) x = -x;
  }
}

Spectrum jacobi_eig(const linalg::Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  if (m.asymmetry() > 1e-12) throw Error(ErrorKind::InvalidOperand, "matrix is not symmetric");
  const std::size_t dim = m.rows();
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw Error(ErrorKind::DimensionMismatch, "dimension is not a power of two");
  }
  auto eig = linalg::jacobi_eigen(m, 1e-12, 100);
  Spectrum s;
  s.qubits = std::countr_zero(dim);
  s.energies = std::move(eig.values);
  s.t = std::move(eig.vectors);
  for (std::size_t i = 0; i < dim; ++i) sign_normalize(s.t.row(i));
  return s;
}

Spectrum oracle_spectrum(int n, double coupling, double field) {
  return jacobi_eig(to_dense_real(build_ising_hamiltonian(n, coupling, field)));
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s,
                        const std::vector<std::string>& comments) {
  csv::Table table;
  table.comments = comments;
  table.header = {"index", "energy"};
  for (std::size_t x = 0; x < s.dim(); ++x) table.header.push_back("t" + std::to_string(x));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::vector<std::string> row{csv::num(static_cast<long long>(i)), csv::num(s.energies[i])};
    for (std::size_t x = 0; x < s.dim(); ++x) row.push_back(csv::num(s.t(i, x)));
    table.add_row(std::move(row));
  }
  csv::write_table(path, table);
}

Spectrum read_spectrum_csv(const std::filesystem::path& path) {
  const auto table = csv::read_table(path);
  const std::size_t dim = table.rows.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw Error(ErrorKind::Parse, "'" + path.string() + "': row count " + std::to_string(dim) +
                                      " is not a power of two >= 2");
  }
  if (table.header.size() != dim + 2 || table.header[0] != "index" || table.header[1] != "energy") {
    throw Error(ErrorKind::Parse, "'" + path.string() + "': expected header index,energy,t0..t" +
                                      std::to_string(dim - 1));
  }
  Spectrum s;
  s.qubits = std::countr_zero(dim);
  s.energies.resize(dim);
  s.t = linalg::Matrix(dim, dim);
  const std::size_t first_line = table.comments.size() + 2;
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& row = table.rows[i];
    if (row.size() != dim + 2) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(first_line + i) + ": expected " +
                                        std::to_string(dim + 2) + " columns");
    }
    s.energies[i] = csv::parse_double(row[1], first_line + i, 2);
    for (std::size_t x = 0; x < dim; ++x) s.t(i, x) = csv::parse_double(row[x + 2], first_line + i, x + 3);
  }
  return s;
}

}  // namespace isingql
