#pragma once

// Inner-loop kernels over dense amplitude and coefficient arrays.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2/FMA
// variant is compiled into a separate translation unit and chosen at runtime
// when the CPU reports support. Both tables are exposed so the variants can be
// checked against each other. Setting ISINGQL_KERNELS=scalar in the
// environment pins the scalar table.
//
// Pauli kernels use the bit form of a Pauli string acting on basis index x:
//   P|x> = i^{ny} * (-1)^{popcount(x & zmask)} |x ^ flip>
// The i^{ny} factor is applied by the caller.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace isingql::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  // sum_i conj(a[i]) * b[i]
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

  // y[i] += alpha * x[i] with real x
  void (*axpy_real)(cplx alpha, const double* x, cplx* y, std::size_t n);

  // sum_x conj(bra[x ^ flip]) * (-1)^{popcount(x & zmask)} * ket[x]; n is a power of two >= 2
  cplx (*pauli_overlap)(const cplx* bra, const cplx* ket, std::uint32_t flip, std::uint32_t zmask,
                        std::size_t n);

  // out[x ^ flip] += alpha * (-1)^{popcount(x & zmask)} * in[x]; n is a power of two >= 2
  void (*pauli_accumulate)(cplx alpha, const cplx* in, std::uint32_t flip, std::uint32_t zmask,
                           cplx* out, std::size_t n);

  // (x[i], y[i]) <- (c*x[i] - s*y[i], s*x[i] + c*y[i])
  void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// The table used by the library, resolved once on first use.
const KernelTable& active();

inline int sign_parity(std::uint32_t x, std::uint32_t zmask) {
  return __builtin_popcount(x & zmask) & 1;
}

}  // namespace isingql::kernels
