#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "isingql/errors.hpp"
#include "isingql/noise.hpp"
#include "isingql/oracle.hpp"

namespace {

using namespace isingql;

NoiseConfig flips(double p10, double p01) {
  NoiseConfig cfg;
  cfg.p10 = {p10};
  cfg.p01 = {p01};
  return cfg;
}

StateVector ground3() {
  const Spectrum s = oracle_spectrum(3, 0.6, 1.0);
  return from_real(3, s.t.row(0));
}

TEST(MeasureModeText, RoundTrip) {
  for (auto m : {MeasureMode::Exact, MeasureMode::Shots, MeasureMode::ShotsRoem, MeasureMode::ShotsRoemRichardson}) {
    EXPECT_EQ(parse_measure_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_measure_mode("roem"), Error);
}

TEST(NoiseConfigCheck, RejectsBadValues) {
  EXPECT_THROW(flips(0.6, 0.0).validate(1), Error);
  NoiseConfig c;
  c.p01 = {0.1, 0.1};
  EXPECT_THROW(c.validate(3), Error);
  c = NoiseConfig{};
  c.shots = 0;
  EXPECT_THROW(c.validate(1), Error);
  c = NoiseConfig{};
  c.scales = {1, 1};
  EXPECT_THROW(c.validate(1), Error);
  EXPECT_NO_THROW(NoiseConfig::readout(0.03).validate(4));
}

TEST(OutcomeDistribution, NoiselessZOnZero) {
  const auto q = outcome_distribution(from_basis(1, 0), PauliString::parse("Z"), NoiseConfig{}, 1);
  EXPECT_DOUBLE_EQ(q[0], 1.0);
  EXPECT_DOUBLE_EQ(q[1], 0.0);
}

TEST(OutcomeDistribution, ReadoutFlipGivesRawBias) {
  const auto cfg = flips(0.1, 0.0);
  const auto q = outcome_distribution(from_basis(1, 0), PauliString::parse("Z"), cfg, 1);
  EXPECT_NEAR(q[0] - q[1], 0.8, 1e-15);
}

TEST(OutcomeDistribution, BasisRotationForXAndY) {
  const StateVector plus(1, {cplx{1 / std::sqrt(2.0)}, cplx{1 / std::sqrt(2.0)}});
  auto q = outcome_distribution(plus, PauliString::parse("X"), NoiseConfig{}, 1);
  EXPECT_NEAR(q[0], 1.0, 1e-15);
  const StateVector plus_i(1, {cplx{1 / std::sqrt(2.0)}, cplx{0, 1 / std::sqrt(2.0)}});
  q = outcome_distribution(plus_i, PauliString::parse("Y"), NoiseConfig{}, 1);
  EXPECT_NEAR(q[0], 1.0, 1e-15);
}

TEST(OutcomeDistribution, DepolarizingAttenuatesMoreAtHigherScale) {
  NoiseConfig cfg;
  cfg.depol = 0.02;
  cfg.layers = 5;
  const auto s = ground3();
  const PauliString p = PauliString::parse("XXI");
  auto value = [&](int scale) {
    const auto q = outcome_distribution(s, p, cfg, scale);
    return mitigate_distribution(q, p.support(), NoiseConfig{}, 1.0).value;
  };
  EXPECT_GT(std::abs(value(1)), std::abs(value(2)));
  EXPECT_GT(std::abs(pauli_expectation(s, p)), std::abs(value(1)));
}

TEST(Roem, IdentityWithoutReadoutError) {
  const auto s = ground3();
  const PauliString p = PauliString::parse("ZIZ");
  const auto q = outcome_distribution(s, p, NoiseConfig{}, 1);
  EXPECT_NEAR(mitigate_distribution(q, p.support(), NoiseConfig{}, 1.0).value, pauli_expectation(s, p), 1e-14);
}

TEST(Roem, SingleQubitClosedForm) {
  const auto cfg = flips(0.1, 0.0);
  const std::vector<double> q{0.9, 0.1};
  EXPECT_NEAR(mitigate_distribution(q, 1u, cfg, 1.0).value, 1.0, 1e-14);
}

TEST(Roem, TwoQubitProductInversion) {
  const auto cfg = NoiseConfig::readout(0.05);
  const auto q = outcome_distribution(from_basis(2, 0), PauliString::parse("ZZ"), cfg, 1);
  EXPECT_NEAR(mitigate_distribution(q, 3u, cfg, 1.0).value, 1.0, 1e-14);
}

TEST(Roem, SingularChannelRejected) {
  const auto cfg = flips(0.5, 0.5);
  const std::vector<double> q{0.5, 0.5};
  EXPECT_THROW(mitigate_distribution(q, 1u, cfg, 1.0), Error);
}

TEST(Richardson, LinearAndConstantModels) {
  const std::vector<ScaledValue> lin{{1, 0.7 + 0.2, 0.0}, {2, 0.7 + 0.4, 0.0}};
  EXPECT_NEAR(richardson_extrapolate(lin), 0.7, 1e-15);
  const std::vector<ScaledValue> flat{{1, 0.3, 0.0}, {2, 0.3, 0.0}, {3, 0.3, 0.0}};
  EXPECT_NEAR(richardson_extrapolate(flat), 0.3, 1e-15);
}

TEST(Richardson, AttenuationRemainderBound) {
  const double eps = 0.01;
  const int d = 10;
  std::vector<ScaledValue> pts;
  for (int k : {1, 2}) pts.push_back({k, std::pow(1.0 - eps, k * d), 0.0});
  EXPECT_LT(std::abs(richardson_extrapolate(pts) - 1.0), eps * eps * d * d);
}

TEST(Sampling, CountsAreDeterministicPerStream) {
  const auto cfg = NoiseConfig::readout(0.03);
  const auto s = ground3();
  const PauliString p = PauliString::parse("XXI");
  const StreamKey k{0, 1, 2, purpose::kEnergy, 3};
  const auto a = sample_pauli(s, p, cfg, 1, k);
  const auto b = sample_pauli(s, p, cfg, 1, k);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(std::accumulate(a.counts.begin(), a.counts.end(), std::uint64_t{0}), a.total);
  StreamKey other = k;
  other.step = 3;
  EXPECT_NE(sample_pauli(s, p, cfg, 1, other).counts, a.counts);
  EXPECT_NE(stream_seed(0, k, 1), stream_seed(0, k, 2));
  EXPECT_NE(stream_seed(0, k, 1), stream_seed(1, k, 1));
}

TEST(Sampling, ExactModeEqualsExpectation) {
  const auto s = ground3();
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  EXPECT_DOUBLE_EQ(measured_expectation(s, h, NoiseConfig{}, MeasureMode::Exact, {}).value, expectation(s, h));
}

TEST(Sampling, VacuumEnergyWithinBinomialError) {
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  const auto e = measured_expectation(from_basis(3, 0), h, NoiseConfig{}, MeasureMode::Shots, {});
  // Z terms are deterministic; each XX term has close to unit binomial variance / shots.
  const double sigma = std::sqrt(3 * 0.36 / 8192.0);
  EXPECT_NEAR(e.variance, sigma * sigma, 0.02 * sigma * sigma);
  EXPECT_LT(std::abs(e.value + 3.0), 3 * sigma);
}

TEST(Sampling, MitigatedGroundEnergyOverSeeds) {
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  const auto s = ground3();
  double mean = 0.0;
  const int seeds = 30;
  for (int k = 0; k < seeds; ++k) {
    auto cfg = NoiseConfig::readout(0.03);
    cfg.seed = static_cast<std::uint64_t>(k);
    mean += measured_expectation(s, h, cfg, MeasureMode::ShotsRoem, {}).value;
  }
  mean /= seeds;
  EXPECT_LT(std::abs(mean - expectation(s, h)), 0.05);
}

TEST(Sampling, RichardsonRemovesDepolarizingBias) {
  auto cfg = NoiseConfig::readout(0.03);
  cfg.depol = 0.01;
  cfg.layers = 4;
  cfg.shots = 1 << 20;
  const auto h = build_ising_hamiltonian(3, 0.6, 1.0);
  const auto s = ground3();
  const double exact = expectation(s, h);
  const auto roem = measured_expectation(s, h, cfg, MeasureMode::ShotsRoem, {});
  const auto rich = measured_expectation(s, h, cfg, MeasureMode::ShotsRoemRichardson, {});
  EXPECT_LT(std::abs(rich.value - exact), std::abs(roem.value - exact));
  EXPECT_LT(std::abs(rich.value - exact), 4 * std::sqrt(rich.variance) + 4 * 0.01 * 0.01 * 16);
}

TEST(Sampling, IdentityStringNeedsNoShots) {
  const auto e = measure_pauli(from_basis(2, 1), PauliString(2), NoiseConfig{}, MeasureMode::Shots, {});
  EXPECT_EQ(e.value, 1.0);
  EXPECT_EQ(e.variance, 0.0);
}

}  // namespace
