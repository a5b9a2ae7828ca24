#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "isingql/errors.hpp"
#include "isingql/pauli.hpp"
#include "support.hpp"

namespace {

using namespace isingql;
namespace t = isingql::testing;

TEST(PauliString, ParseAndRenderRoundTrip) {
  const auto p = PauliString::parse("XYZI");
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p.letter(0), Letter::X);
  EXPECT_EQ(p.letter(1), Letter::Y);
  EXPECT_EQ(p.letter(2), Letter::Z);
  EXPECT_EQ(p.letter(3), Letter::I);
  EXPECT_EQ(p.to_string(), "XYZI");
  EXPECT_EQ(p.y_count(), 1);
  EXPECT_EQ(p.support(), 0b0111u);
}

TEST(PauliString, RejectsBadInput) {
  EXPECT_THROW(PauliString::parse("XQ"), Error);
  EXPECT_THROW(PauliString::parse(""), Error);
  EXPECT_THROW(PauliString::parse("XXXXXXXXXXX"), Error);
  EXPECT_THROW(PauliString(3, 0b1000u, 0u), Error);
}

TEST(PauliString, SingleQubitProducts) {
  const auto [ph, prod] = multiply(PauliString::parse("X"), PauliString::parse("Y"));
  EXPECT_EQ(ph, Phase::PlusI);
  EXPECT_EQ(prod.to_string(), "Z");
  const auto [ph2, prod2] = multiply(PauliString::parse("Y"), PauliString::parse("Y"));
  EXPECT_EQ(ph2, Phase::PlusOne);
  EXPECT_TRUE(prod2.is_identity());
  const auto [ph3, prod3] = multiply(PauliString::parse("Y"), PauliString::parse("X"));
  EXPECT_EQ(ph3, Phase::MinusI);
  EXPECT_EQ(prod3.to_string(), "Z");
}

TEST(PauliString, MultiSitePhaseComposition) {
  const auto [ph, prod] = multiply(PauliString::parse("XYZ"), PauliString::parse("ZYX"));
  EXPECT_EQ(ph, Phase::PlusOne);
  EXPECT_EQ(prod.to_string(), "YIY");
}

TEST(PauliString, ProductMatchesDenseMatrices) {
  const auto pool = operator_pool(2);
  std::vector<PauliString> all{PauliString(2)};
  all.insert(all.end(), pool.begin(), pool.end());
  for (const auto& a : all) {
    for (const auto& b : all) {
      const auto [ph, prod] = multiply(a, b);
      const t::CMat lhs = t::dense_string(a.to_string()) * t::dense_string(b.to_string());
      const t::CMat rhs = to_complex(ph) * t::dense_string(prod.to_string());
      EXPECT_LT((lhs - rhs).norm(), 1e-14) << a.to_string() << " * " << b.to_string();
      const t::CMat comm = lhs - t::dense_string(b.to_string()) * t::dense_string(a.to_string());
      EXPECT_EQ(commutes(a, b), comm.norm() < 1e-12);
    }
  }
}

TEST(PauliString, YParity) {
  EXPECT_EQ(y_parity(PauliString::parse("XXI")), YParity::Even);
  EXPECT_EQ(y_parity(PauliString::parse("YII")), YParity::Odd);
  EXPECT_EQ(y_parity(PauliString::parse("YYY")), YParity::Odd);
}

TEST(PauliSum, MergesAndDropsZeroTerms) {
  PauliSum s(2);
  s.add(1.5, PauliString::parse("XZ"));
  s.add(0.0, PauliString::parse("ZZ"));
  s.add(-1.5, PauliString::parse("XZ"));
  EXPECT_TRUE(s.empty());
  s.add(2.0, PauliString::parse("YY"));
  s.add(1.0, PauliString::parse("YY"));
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_DOUBLE_EQ(s.terms()[0].coefficient, 3.0);
}

TEST(PauliSum, ProductOfHermitianSums) {
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  const auto h2 = multiply(h, h);
  const t::CMat d = t::dense_ising(3, 0.6, 1.0);
  EXPECT_LT((to_dense(h2) - d * d).norm(), 1e-12);
}

TEST(Hamiltonian, ThreeSiteTermsInOrder) {
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  ASSERT_EQ(h.terms().size(), 6u);
  const std::vector<std::string> names{"XXI", "IXX", "XIX", "ZII", "IZI", "IIZ"};
  const std::vector<double> coeffs{-0.6, -0.6, -0.6, -1.0, -1.0, -1.0};
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(h.terms()[k].string.to_string(), names[k]);
    EXPECT_DOUBLE_EQ(h.terms()[k].coefficient, coeffs[k]);
  }
}

TEST(Hamiltonian, DecoupledLimitKeepsOnlyField) {
  const auto h = build_ising_hamiltonian(3, 0.0, 1.0);
  ASSERT_EQ(h.terms().size(), 3u);
  for (const auto& term : h.terms()) EXPECT_EQ(term.string.x_mask(), 0u);
}

TEST(Hamiltonian, FourSitesHasEightTerms) { EXPECT_EQ(build_ising_hamiltonian(4, 0.6, 1.0).terms().size(), 8u); }

TEST(Hamiltonian, MatchesKroneckerConstruction) {
  for (int n : {2, 3, 4, 5}) {
    EXPECT_LT((to_dense(build_ising_hamiltonian(n, 0.6, 1.0)) - t::dense_ising(n, 0.6, 1.0)).norm(), 1e-12) << n;
  }
}

TEST(OperatorPool, SizesAndOrder) {
  const auto p1 = operator_pool(1);
  ASSERT_EQ(p1.size(), 3u);
  EXPECT_EQ(p1[0].to_string(), "X");
  EXPECT_EQ(p1[1].to_string(), "Y");
  EXPECT_EQ(p1[2].to_string(), "Z");
  const auto p3 = operator_pool(3);
  EXPECT_EQ(p3.size(), 27u);
  EXPECT_EQ(p3.front().to_string(), "XXX");
  EXPECT_EQ(p3[1].to_string(), "XXY");
  EXPECT_EQ(p3.back().to_string(), "ZZZ");
  EXPECT_EQ(std::count_if(p3.begin(), p3.end(), [](const PauliString& p) { return p.odd_y(); }), 13);
  EXPECT_EQ(std::set<PauliString>(p3.begin(), p3.end()).size(), 27u);
}

}  // namespace
