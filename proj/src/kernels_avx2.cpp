// AVX2/FMA variants of the kernels in kernels_scalar.cpp. This file is built
// with -mavx2 -mfma and only entered after a runtime CPU check.

#include <immintrin.h>

#include "isingql/kernels.hpp"

namespace isingql::kernels {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline __m256d swap_halves(__m256d v) { return _mm256_permute2f128_pd(v, v, 1); }

inline __m256d pair_signs(int s0, int s1) {
  const double m0 = s0 ? -1.0 : 1.0;
  const double m1 = s1 ? -1.0 : 1.0;
  return _mm256_set_pd(m1, m1, m0, m0);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (l0 - l1) + (l2 - l3)
inline double halt(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d cmul(__m256d alpha_re, __m256d alpha_im, __m256d v) {
  return _mm256_addsub_pd(_mm256_mul_pd(alpha_re, v), _mm256_mul_pd(alpha_im, swap_re_im(v)));
}

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, swap_re_im(vb), acc_im);
  }
  double re = hsum(acc_re);
  double im = halt(acc_im);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul(ar, ai, vx)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_real_avx2(cplx alpha, const double* x, cplx* y, std::size_t n) {
  double* py = reinterpret_cast<double*>(y);
  const __m256d va = _mm256_set_pd(alpha.imag(), alpha.real(), alpha.imag(), alpha.real());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d xv = _mm_loadu_pd(x + i);
    const __m256d xx = _mm256_set_m128d(_mm_unpackhi_pd(xv, xv), _mm_unpacklo_pd(xv, xv));
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_fmadd_pd(va, xx, vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cplx pauli_overlap_avx2(const cplx* bra, const cplx* ket, std::uint32_t flip, std::uint32_t zmask,
                        std::size_t n) {
  const double* pb = reinterpret_cast<const double*>(bra);
  const double* pk = reinterpret_cast<const double*>(ket);
  const bool swap = (flip & 1u) != 0;
  const int low_bit = static_cast<int>(zmask & 1u);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  for (std::uint32_t x = 0; x < n; x += 2) {
    const std::uint32_t base = (x ^ flip) & ~1u;
    __m256d va = _mm256_loadu_pd(pb + 2 * base);
    if (swap) va = swap_halves(va);
    const int s0 = sign_parity(x, zmask);
    const __m256d vk = _mm256_mul_pd(_mm256_loadu_pd(pk + 2 * x), pair_signs(s0, s0 ^ low_bit));
    acc_re = _mm256_fmadd_pd(va, vk, acc_re);
    acc_im = _mm256_fmadd_pd(va, swap_re_im(vk), acc_im);
  }
  return {hsum(acc_re), halt(acc_im)};
}

void pauli_accumulate_avx2(cplx alpha, const cplx* in, std::uint32_t flip, std::uint32_t zmask,
                           cplx* out, std::size_t n) {
  const double* pi = reinterpret_cast<const double*>(in);
  double* po = reinterpret_cast<double*>(out);
  const bool swap = (flip & 1u) != 0;
  const int low_bit = static_cast<int>(zmask & 1u);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  for (std::uint32_t y = 0; y < n; y += 2) {
    // out[y] <- in[y ^ flip], out[y + 1] <- in[(y + 1) ^ flip]
    const std::uint32_t src = y ^ flip;
    const std::uint32_t base = src & ~1u;
    __m256d v = _mm256_loadu_pd(pi + 2 * base);
    if (swap) v = swap_halves(v);
    const int s0 = sign_parity(src, zmask);
    v = _mm256_mul_pd(v, pair_signs(s0, s0 ^ low_bit));
    const __m256d vo = _mm256_loadu_pd(po + 2 * y);
    _mm256_storeu_pd(po + 2 * y, _mm256_add_pd(vo, cmul(ar, ai, v)));
  }
}

void rotate_avx2(double* x, double* y, double c, double s, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, vx, _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, vx, _mm256_mul_pd(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{"avx2",
                                 dot_avx2,
                                 axpy_avx2,
                                 axpy_real_avx2,
                                 pauli_overlap_avx2,
                                 pauli_accumulate_avx2,
                                 rotate_avx2};
  return table;
}

}  // namespace isingql::kernels
