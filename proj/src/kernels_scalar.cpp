#include "isingql/kernels.hpp"

namespace isingql::kernels {
namespace {

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_real_scalar(cplx alpha, const double* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cplx pauli_overlap_scalar(const cplx* bra, const cplx* ket, std::uint32_t flip,
                          std::uint32_t zmask, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const cplx a = bra[x ^ flip];
    const cplx b = sign_parity(static_cast<std::uint32_t>(x), zmask) ? -ket[x] : ket[x];
    re += a.real() * b.real() + a.imag() * b.imag();
    im += a.real() * b.imag() - a.imag() * b.real();
  }
  return {re, im};
}

void pauli_accumulate_scalar(cplx alpha, const cplx* in, std::uint32_t flip, std::uint32_t zmask,
                             cplx* out, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x) {
    const cplx v = alpha * in[x];
    out[x ^ flip] += sign_parity(static_cast<std::uint32_t>(x), zmask) ? -v : v;
  }
}

void rotate_scalar(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar",
                                 dot_scalar,
                                 axpy_scalar,
                                 axpy_real_scalar,
                                 pauli_overlap_scalar,
                                 pauli_accumulate_scalar,
                                 rotate_scalar};
  return table;
}

}  // namespace isingql::kernels
