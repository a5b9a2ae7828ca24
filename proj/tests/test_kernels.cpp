#include <gtest/gtest.h>

#include <complex>
#include <random>
#include <vector>

#include "isingql/kernels.hpp"

namespace {

using isingql::kernels::cplx;
using isingql::kernels::KernelTable;

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& a : v) a = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = isingql::kernels::avx2_table();
    if (simd_ == nullptr) GTEST_SKIP() << "AVX2 variant unavailable on this build or CPU";
  }
  const KernelTable& ref_ = isingql::kernels::scalar_table();
  const KernelTable* simd_ = nullptr;
  std::mt19937_64 rng_{7};
};

TEST_F(KernelEquivalence, DotMatchesScalarForOddAndEvenLengths) {
  for (std::size_t n : {1u, 2u, 3u, 8u, 17u, 1024u}) {
    const auto a = random_vector(n, rng_);
    const auto b = random_vector(n, rng_);
    EXPECT_LT(std::abs(ref_.dot(a.data(), b.data(), n) - simd_->dot(a.data(), b.data(), n)), 1e-12 * n);
  }
}

TEST_F(KernelEquivalence, AxpyMatchesScalar) {
  for (std::size_t n : {1u, 5u, 64u}) {
    const auto x = random_vector(n, rng_);
    auto y1 = random_vector(n, rng_);
    auto y2 = y1;
    ref_.axpy({0.3, -1.7}, x.data(), y1.data(), n);
    simd_->axpy({0.3, -1.7}, x.data(), y2.data(), n);
    EXPECT_LT(max_diff(y1, y2), 1e-13);
  }
}

TEST_F(KernelEquivalence, AxpyRealMatchesScalar) {
  std::normal_distribution<double> g;
  for (std::size_t n : {1u, 6u, 33u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng_);
    auto y1 = random_vector(n, rng_);
    auto y2 = y1;
    ref_.axpy_real({-0.4, 2.1}, x.data(), y1.data(), n);
    simd_->axpy_real({-0.4, 2.1}, x.data(), y2.data(), n);
    EXPECT_LT(max_diff(y1, y2), 1e-13);
  }
}

TEST_F(KernelEquivalence, PauliKernelsMatchScalarForEveryMask) {
  for (int q = 1; q <= 5; ++q) {
    const std::size_t n = std::size_t{1} << q;
    const auto bra = random_vector(n, rng_);
    const auto ket = random_vector(n, rng_);
    for (std::uint32_t flip = 0; flip < n; ++flip) {
      for (std::uint32_t z = 0; z < n; ++z) {
        EXPECT_LT(std::abs(ref_.pauli_overlap(bra.data(), ket.data(), flip, z, n) -
                           simd_->pauli_overlap(bra.data(), ket.data(), flip, z, n)),
                  1e-12)
            << "flip " << flip << " z " << z;
        std::vector<cplx> o1(n), o2(n);
        ref_.pauli_accumulate({0.7, 0.2}, ket.data(), flip, z, o1.data(), n);
        simd_->pauli_accumulate({0.7, 0.2}, ket.data(), flip, z, o2.data(), n);
        EXPECT_LT(max_diff(o1, o2), 1e-13) << "flip " << flip << " z " << z;
      }
    }
  }
}

TEST_F(KernelEquivalence, RotateMatchesScalar) {
  std::normal_distribution<double> g;
  for (std::size_t n : {1u, 4u, 7u, 16u}) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng_);
      y[i] = g(rng_);
    }
    auto x2 = x;
    auto y2 = y;
    ref_.rotate(x.data(), y.data(), 0.6, 0.8, n);
    simd_->rotate(x2.data(), y2.data(), 0.6, 0.8, n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(x[i], x2[i], 1e-14);
      EXPECT_NEAR(y[i], y2[i], 1e-14);
    }
  }
}

TEST(KernelReference, PauliOverlapAgainstDirectSum) {
  // <bra| P |ket> for P = X on qubit 0 and Z on qubit 1, without the i^ny factor
  const std::vector<cplx> bra{{1, 0}, {0, 1}, {2, 0}, {0, -1}};
  const std::vector<cplx> ket{{0.5, 0}, {1, 1}, {0, 2}, {3, 0}};
  cplx expect = 0.0;
  for (std::uint32_t x = 0; x < 4; ++x) {
    const double sign = (x & 2u) ? -1.0 : 1.0;
    expect += std::conj(bra[x ^ 1u]) * sign * ket[x];
  }
  const auto got = isingql::kernels::scalar_table().pauli_overlap(bra.data(), ket.data(), 1u, 2u, 4);
  EXPECT_LT(std::abs(got - expect), 1e-15);
}

TEST(KernelDispatch, ActiveTableIsOneOfTheVariants) {
  const auto& active = isingql::kernels::active();
  const auto* simd = isingql::kernels::avx2_table();
  EXPECT_TRUE(&active == &isingql::kernels::scalar_table() || (simd != nullptr && &active == simd));
}

}  // namespace
