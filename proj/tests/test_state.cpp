#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingql/errors.hpp"
#include "isingql/state.hpp"
#include "support.hpp"

namespace {

using namespace isingql;
namespace t = isingql::testing;
const cplx kI{0.0, 1.0};

TEST(Basis, BitstringConvention) {
  EXPECT_EQ(parse_bitstring("100"), 1u);
  EXPECT_EQ(parse_bitstring("0101"), 10u);
  EXPECT_EQ(format_bitstring(10u, 4), "0101");
  const auto s = from_basis(4, parse_bitstring("0101"));
  EXPECT_DOUBLE_EQ(std::abs(s[10]), 1.0);
  EXPECT_THROW(from_basis(3, 8), Error);
  EXPECT_THROW(parse_bitstring("01a"), Error);
}

TEST(Basis, SignedSuperposition) {
  const std::vector<SignedBasis> terms{{+1, "0001"}, {-1, "0100"}};
  const auto s = from_superposition(4, terms);
  EXPECT_NEAR(s[parse_bitstring("0001")].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[parse_bitstring("0100")].real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  const std::vector<SignedBasis> dup{{+1, "01"}, {-1, "01"}};
  EXPECT_THROW(from_superposition(2, dup), Error);
  const std::vector<SignedBasis> mixed{{+1, "10"}, {-1, "100"}};
  EXPECT_THROW(from_superposition(3, mixed), Error);
}

TEST(Apply, SingleQubitActions) {
  const auto one = apply(from_basis(1, 0), PauliString::parse("X"));
  EXPECT_NEAR(std::abs(one[1] - cplx{1.0}), 0.0, 1e-15);
  const auto minus = apply(from_basis(1, 1), PauliString::parse("Z"));
  EXPECT_NEAR(std::abs(minus[1] + cplx{1.0}), 0.0, 1e-15);
  const auto y = apply(from_basis(1, 0), PauliString::parse("Y"));
  EXPECT_NEAR(std::abs(y[1] - kI), 0.0, 1e-15);
}

TEST(Apply, HamiltonianOnVacuum) {
  const auto out = apply(from_basis(3, 0), build_ising_hamiltonian(3, 0.6, 1.0));
  EXPECT_NEAR(out[0].real(), -3.0, 1e-14);
  for (const char* b : {"110", "011", "101"}) EXPECT_NEAR(out[parse_bitstring(b)].real(), -0.6, 1e-14);
  double rest = 0.0;
  for (const char* b : {"100", "010", "001", "111"}) rest += std::abs(out[parse_bitstring(b)]);
  EXPECT_EQ(rest, 0.0);
}

TEST(Apply, RandomStatesAgainstDense) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n : {1, 3, 5}) {
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto& v : a) v = {g(rng), g(rng)};
    const StateVector s(n, a);
    for (const auto& p : operator_pool(n)) {
      const t::CVec want = t::dense_string(p.to_string()) * t::to_cvec(s);
      EXPECT_LT((t::to_cvec(apply(s, p)) - want).norm(), 1e-12) << p.to_string();
    }
  }
}

TEST(Expectation, DiagonalValues) {
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  EXPECT_NEAR(expectation(from_basis(3, parse_bitstring("000")), h), -3.0, 1e-14);
  EXPECT_NEAR(expectation(from_basis(3, parse_bitstring("100")), h), -1.0, 1e-14);
}

TEST(Expectation, YOnComplexState) {
  PauliSum y(1);
  y.add(1.0, PauliString::parse("Y"));
  const StateVector s(1, {cplx{1.0 / std::sqrt(2.0)}, kI / std::sqrt(2.0)});
  EXPECT_NEAR(expectation(s, y), 1.0, 1e-14);
}

TEST(Inner, BasisOrthonormality) {
  EXPECT_NEAR(std::abs(inner(from_basis(3, 2), from_basis(3, 2)) - cplx{1.0}), 0.0, 1e-15);
  EXPECT_EQ(std::abs(inner(from_basis(3, 2), from_basis(3, 4))), 0.0);
}

TEST(ExpApply, ZeroAngleIsIdentity) {
  const auto s = from_superposition(2, std::vector<SignedBasis>{{+1, "01"}, {-1, "10"}});
  PauliSum g(2);
  g.add(0.7, PauliString::parse("XY"));
  const auto out = exp_apply(s, g, 0.0);
  EXPECT_LT((t::to_cvec(out) - t::to_cvec(s)).norm(), 1e-14);
}

TEST(ExpApply, PauliRotation) {
  PauliSum g(1);
  g.add(1.0, PauliString::parse("X"));
  const auto out = exp_apply(from_basis(1, 0), g, std::numbers::pi / 2.0);
  EXPECT_LT(std::abs(out[0]), 1e-14);
  EXPECT_LT(std::abs(out[1] + kI), 1e-14);
}

TEST(ExpApply, MatchesDenseExponential) {
  PauliSum g(3);
  g.add(0.3, PauliString::parse("XYZ"));
  g.add(-0.8, PauliString::parse("YII"));
  g.add(0.2, PauliString::parse("ZXY"));
  const auto s = from_basis(3, 5);
  const t::CVec want = t::dense_expm_i(to_dense(g), 0.37) * t::to_cvec(s);
  EXPECT_LT((t::to_cvec(exp_apply(s, g, 0.37)) - want).norm(), 1e-12);
}

TEST(ExpApply, NormStableOverManyApplications) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto pool = operator_pool(3);
  StateVector s = from_basis(3, 0);
  for (int k = 0; k < 30; ++k) {
    PauliSum g(3);
    for (int m = 0; m < 4; ++m) g.add(u(rng), pool[static_cast<std::size_t>(rng() % pool.size())]);
    if (g.empty()) continue;
    s = exp_apply(s, g, u(rng));
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-9);
}

}  // namespace
