#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "isingql/errors.hpp"
#include "isingql/oracle.hpp"
#include "isingql/pipeline.hpp"
#include "isingql/qite.hpp"
#include "isingql/symmetry.hpp"
#include "support.hpp"

namespace {

using namespace isingql;
namespace t = isingql::testing;

const PauliSum& h3() {
  static const PauliSum h = build_ising_hamiltonian(3, 0.6, 1.0);
  return h;
}

const PauliSum& h4() {
  static const PauliSum h = build_ising_hamiltonian(4, 0.6, 1.0);
  return h;
}

TEST(ReducedPool, OddYStringsOnly) {
  EXPECT_EQ(reduced_pool(1).size(), 1u);
  EXPECT_EQ(reduced_pool(1)[0].to_string(), "Y");
  EXPECT_EQ(reduced_pool(3).size(), 13u);
  EXPECT_EQ(reduced_pool(4).size(), 40u);
  for (const auto& p : reduced_pool(4)) EXPECT_TRUE(p.odd_y());
}

TEST(LinearSystem, DiagonalIsTwo) {
  const auto pool = reduced_pool(3);
  const auto sys = build_linear_system(from_basis(3, 1), h3(), pool, 1.0, QiteConfig{});
  for (std::size_t i = 0; i < pool.size(); ++i) EXPECT_EQ(sys.m(i, i), 2.0);
  EXPECT_LT(sys.m.asymmetry(), 1e-15);
}

TEST(LinearSystem, MatchesDenseDefinition) {
  const auto pool = reduced_pool(3);
  const auto s = from_superposition(3, std::vector<SignedBasis>{{+1, "110"}, {-1, "001"}, {+1, "100"}});
  const double c_ratio = 1.3;
  const auto sys = build_linear_system(s, h3(), pool, c_ratio, QiteConfig{});
  const t::CVec v = t::to_cvec(s);
  const t::CMat hd = t::dense_ising(3, 0.6, 1.0);
  const cplx i{0.0, 1.0};
  for (std::size_t a = 0; a < pool.size(); ++a) {
    const t::CMat sa = t::dense_string(pool[a].to_string());
    for (std::size_t b = 0; b < pool.size(); ++b) {
      const t::CMat sb = t::dense_string(pool[b].to_string());
      EXPECT_NEAR(sys.m(a, b), 2.0 * v.dot(sa * sb * v).real(), 1e-12);
    }
    EXPECT_NEAR(sys.b[a], (-i * std::sqrt(c_ratio) * v.dot(sa * hd * v)).real(), 1e-12);
  }
}

TEST(LinearSystem, DriveOnlyAlongHamiltonianTerms) {
  const auto pool = reduced_pool(3);
  const auto sys = build_linear_system(from_basis(3, 1), h3(), pool, 1.0, QiteConfig{});
  bool any = false;
  for (std::size_t a = 0; a < pool.size(); ++a) {
    if (sys.b[a] == 0.0) continue;
    any = true;
    bool anticommutes_with_term = false;
    for (const auto& term : h3().terms()) anticommutes_with_term |= !commutes(pool[a], term.string);
    EXPECT_TRUE(anticommutes_with_term) << pool[a].to_string();
  }
  EXPECT_TRUE(any);
}

TEST(LinearSystem, EigenstateHasZeroDrive) {
  const auto h = build_ising_hamiltonian(3, 0.0, 1.0);
  const auto sys = build_linear_system(from_basis(3, 0), h, reduced_pool(3), 1.0, QiteConfig{});
  for (double b : sys.b) EXPECT_EQ(b, 0.0);
}

TEST(SolveUpdate, DiagonalAndZeroCases) {
  const auto m = linalg::Matrix::identity(3);
  linalg::Matrix two(3, 3);
  for (std::size_t i = 0; i < 3; ++i) two(i, i) = 2.0;
  const std::vector<double> b{1.0, -2.0, 0.5};
  const auto a = solve_update(two, b, 1e-8);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i] / 2.0, 1e-15);
  const auto z = solve_update(m, std::vector<double>(3, 0.0), 1e-8);
  for (double v : z) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(solve_update(linalg::Matrix(2, 2), std::vector<double>{1.0, 0.0}, 1e-8), Error);
}

TEST(SolveUpdate, RankDeficientConsistentSystem) {
  // M = v v^T + w w^T in 4 dimensions, b in range(M)
  linalg::Matrix m(4, 4);
  const double v[4] = {1, 2, 0, -1};
  const double w[4] = {0, 1, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = v[i] * v[j] + w[i] * w[j];
  }
  std::vector<double> b(4);
  for (std::size_t i = 0; i < 4; ++i) b[i] = 0.3 * v[i] - 0.7 * w[i];
  const auto a = solve_update(m, b, 1e-8);
  const auto r = m * std::span<const double>(a);
  double res = 0.0;
  for (std::size_t i = 0; i < 4; ++i) res = std::max(res, std::abs(r[i] - b[i]));
  EXPECT_LT(res, 1e-8);
  // minimum norm: no component along the null space
  Eigen::Matrix4d md;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) md(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  const Eigen::Vector4d pinv = md.completeOrthogonalDecomposition().solve(Eigen::Map<const Eigen::Vector4d>(b.data()));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[static_cast<std::size_t>(i)], pinv(i), 1e-10);
}

TEST(QiteStep, EigenstateIsStationary) {
  const auto h = build_ising_hamiltonian(3, 0.0, 1.0);
  const auto pool = reduced_pool(3);
  const auto s = from_basis(3, 0);
  const auto st = qite_step(s, h, 1.0, QiteConfig{}, pool);
  EXPECT_LT((t::to_cvec(st.state) - t::to_cvec(s)).norm(), 1e-14);
  EXPECT_NEAR(st.energy, -3.0, 1e-14);
}

TEST(QiteStep, TooLargeStepRejected) {
  QiteConfig cfg;
  cfg.dtau = 1.0;
  // E = 3.2 for |111> makes 1 - 2 dtau E negative
  EXPECT_THROW(qite_step(from_basis(3, 7), h3(), 1.0, cfg, reduced_pool(3)), Error);
}

TEST(RunQite, TraceLayoutAndStartEnergy) {
  const auto tr = run_qite(from_basis(3, parse_bitstring("100")), h3(), QiteConfig{});
  EXPECT_EQ(tr.length(), 31u);
  EXPECT_EQ(tr.energies.size(), 31u);
  EXPECT_EQ(tr.c_sq_inv.size(), 31u);
  EXPECT_EQ(tr.a_coeffs.size(), 30u);
  EXPECT_NEAR(tr.energies[0], -1.0, 1e-14);
  EXPECT_EQ(tr.c_sq_inv[0], 1.0);
}

TEST(RunQite, OneParticleStateDescendsMonotonically) {
  const auto tr = run_qite(from_basis(3, parse_bitstring("100")), h3(), QiteConfig{});
  for (std::size_t s = 1; s < tr.energies.size(); ++s) EXPECT_LE(tr.energies[s], tr.energies[s - 1] + 1e-6);
  EXPECT_NEAR(tr.energies.back(), -2.4, 0.01);
  // frozen regression value of this implementation
  EXPECT_NEAR(tr.energies.back(), -2.395298325, 1e-8);
}

TEST(RunQite, StatesStayNormalizedAndReal) {
  const auto tr = run_qite(library_state(4, "even7").value(), h4(), QiteConfig{});
  for (const auto& s : tr.states) {
    EXPECT_NEAR(s.norm(), 1.0, 1e-10);
    EXPECT_LT(s.max_imag(), 1e-10);
  }
}

TEST(RunQite, SymmetricTwoParticleStateReachesGround) {
  const auto tr = run_qite(library_state(3, "w3-twoparticle").value(), h3(), QiteConfig{});
  EXPECT_NEAR(tr.energies.back(), t::dense_levels(3, 0.6, 1.0)(0), 0.01);
}

TEST(RunQite, NegatedHamiltonianFromVacuum) {
  const auto tr = run_qite(from_basis(4, 0), h4().scaled(-1.0), QiteConfig{});
  EXPECT_NEAR(tr.energies.back(), -t::dense_levels(4, 0.6, 1.0)(15), 0.01);
}

TEST(RunQite, AlternatingOneParticleState) {
  const auto s = parse_state_spec("+0001,-0010,+0100,-1000", 4);
  const auto tr = run_qite(s, h4(), QiteConfig{});
  EXPECT_NEAR(tr.energies.back(), -1.132381, 1e-3);
}

TEST(RunQite, SecondOrderNormalizationAlsoConverges) {
  QiteConfig cfg;
  cfg.c_expansion_order = 2;
  const auto tr = run_qite(from_basis(3, parse_bitstring("100")), h3(), cfg);
  EXPECT_NEAR(tr.energies.back(), -2.4, 0.01);
}

TEST(RunQite, RejectsBadConfig) {
  QiteConfig cfg;
  cfg.steps = 0;
  EXPECT_THROW(run_qite(from_basis(3, 0), h3(), cfg), Error);
  EXPECT_THROW(run_qite(from_basis(4, 0), h3(), QiteConfig{}), Error);
}

TEST(RunQite, NoisyTraceIsReproducible) {
  QiteConfig cfg;
  cfg.mode = MeasureMode::ShotsRoem;
  cfg.noise = NoiseConfig::readout(0.03);
  cfg.steps = 6;
  const auto a = run_qite(from_basis(3, 1), h3(), cfg);
  const auto b = run_qite(from_basis(3, 1), h3(), cfg);
  EXPECT_EQ(a.energies, b.energies);
  cfg.noise.seed = 1;
  EXPECT_NE(run_qite(from_basis(3, 1), h3(), cfg).energies, a.energies);
}

}  // namespace
