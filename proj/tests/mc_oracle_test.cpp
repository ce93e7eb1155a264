// Copyright 2026 The keyrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "keyrate/mc_oracle.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "keyrate/protocols_pkd.hpp"
#include "keyrate/sweep.hpp"
#include "keyrate/validate.hpp"

namespace keyrate {
namespace {

const NoiseYield kGround = noise_yield(kGroundDetectorNoise, 1e-9);

ChannelParams At(double loss_db) {
  ChannelParams ch;
  ch.loss_db = loss_db;
  return ch;
}

McConfig Wcp(std::uint64_t n, std::uint64_t seed = 7) {
  return {n, seed, McScenario::kWcp};
}
McConfig Pairs(std::uint64_t n, std::uint64_t seed = 7) {
  return {n, seed, McScenario::kPair};
}

TEST(PhotonRng, PoissonMomentsMatch) {
  for (double mean : {0.1, 0.8, 20.0, 75.0}) {
    PhotonRng rng(99);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mean));
      sum += k;
      sum_sq += k * k;
    }
    const double m = sum / n;
    const double var = sum_sq / n - m * m;
    EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n)) << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.03) << mean;
  }
}

TEST(PhotonRng, UniformInUnitInterval) {
  PhotonRng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SimulateWcp, AgreesWithAnalyticGainAndError) {
  const McEstimate est = simulate_wcp(Wcp(10'000'000), At(30.0), kGround, 0.8);
  const DetectionStatistics s = wcp_statistics(1e-3, kGround, 0.8);
  EXPECT_LT(std::abs(est.gain_hat - s.gain), 3.0 * est.gain_se);
  EXPECT_LT(std::abs(est.qber_hat - s.error), 3.0 * est.qber_se);
  EXPECT_GT(est.gain_se, 0.0);
}

TEST(SimulateWcp, NothingToDetect) {
  const McEstimate est =
      simulate_wcp(Wcp(100000), At(0.0), NoiseYield{0.0, 0.5}, 0.0);
  EXPECT_EQ(est.gain_hat, 0.0);
  EXPECT_EQ(est.n_clicks, 0u);
  EXPECT_EQ(est.qber_se, 0.0);
}

TEST(SimulateWcp, SaturatesWithBrightPulses) {
  const std::uint64_t n = 100000;
  const McEstimate est = simulate_wcp(Wcp(n), At(0.0), kGround, 20.0);
  const double q = wcp_statistics(1.0, kGround, 20.0).gain;
  const double null_se = std::sqrt(q * (1.0 - q) / n);
  EXPECT_LE(std::abs(est.gain_hat - q), 3.0 * null_se);
  EXPECT_GE(est.gain_hat, 0.9999);
}

TEST(SimulateWcp, MisalignmentErrorsSignalClicks) {
  const McEstimate est =
      simulate_wcp(Wcp(200000), At(0.0), NoiseYield{0.0, 0.5}, 2.0, 0.1);
  EXPECT_NEAR(est.qber_hat, 0.1, 3.0 * est.qber_se);
}

TEST(SimulateWcp, ReproducibleFromSeed) {
  const McEstimate a = simulate_wcp(Wcp(300000, 11), At(20.0), kGround, 0.8);
  const McEstimate b = simulate_wcp(Wcp(300000, 11), At(20.0), kGround, 0.8);
  const McEstimate c = simulate_wcp(Wcp(300000, 12), At(20.0), kGround, 0.8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.n_clicks, c.n_clicks);
}

TEST(SimulateWcp, StandardErrorShrinksAsRootN) {
  const McEstimate small = simulate_wcp(Wcp(250000), At(10.0), kGround, 0.8);
  const McEstimate large = simulate_wcp(Wcp(1000000), At(10.0), kGround, 0.8);
  EXPECT_NEAR(large.gain_se / small.gain_se, 0.5, 0.1);
}

TEST(SimulateWcp, RejectsMismatchedScenario) {
  EXPECT_THROW(simulate_wcp(Pairs(10), At(10.0), kGround, 0.8), DomainError);
  EXPECT_THROW(simulate_wcp(Wcp(0), At(10.0), kGround, 0.8), DomainError);
}

TEST(SimulateSps, AgreesWithAnalyticStatistics) {
  for (double loss : {20.0, 40.0}) {
    const McEstimate est = simulate_sps({4'000'000, 5, McScenario::kSps},
                                        At(loss), kGround);
    const DetectionStatistics s =
        sps_statistics(db_to_transmissivity(loss), kGround);
    EXPECT_LT(std::abs(est.gain_hat - s.gain), 3.0 * est.gain_se) << loss;
    EXPECT_LT(std::abs(est.qber_hat - s.error), 3.0 * est.qber_se) << loss;
  }
}

TEST(SimulatePairs, PaperParametersAtFortyDb) {
  const PairSourceParams pair;
  const ChannelParams ch = At(40.0);
  const McEstimate est = simulate_pairs(Pairs(100'000'000), ch, pair,
                                        kSpaceDetectorNoise,
                                        kGroundDetectorNoise);
  const CoincidenceStatistics s =
      pair_statistics(ch, kSpaceDetectorNoise, kGroundDetectorNoise, pair);
  EXPECT_LT(std::abs(est.qber_hat - s.qber), 3.0 * est.qber_se);
  EXPECT_LT(std::abs(est.gain_hat - s.total_rate() * 1e-9),
            3.0 * est.gain_se);
}

TEST(SimulatePairs, NoiselessPerfectVisibilityHasNoErrors) {
  ChannelParams ch = At(10.0);
  ch.gate_window = 1e-12;
  const McEstimate est =
      simulate_pairs(Pairs(2'000'000), ch, PairSourceParams{}, {}, {});
  EXPECT_GT(est.n_clicks, 0u);
  EXPECT_EQ(est.qber_hat, 0.0);
  EXPECT_EQ(est.n_errors, 0u);
}

TEST(SimulatePairs, HalvingWindowHalvesAccidentals) {
  // Same observation time: twice as many windows of half the width.
  const PairSourceParams pair;
  ChannelParams wide = At(20.0);
  ChannelParams narrow = wide;
  narrow.gate_window = 0.5e-9;
  const McEstimate a = simulate_pairs(Pairs(40'000'000, 1), wide, pair,
                                      kSpaceDetectorNoise,
                                      kGroundDetectorNoise);
  const McEstimate b = simulate_pairs(Pairs(80'000'000, 2), narrow, pair,
                                      kSpaceDetectorNoise,
                                      kGroundDetectorNoise);
  const double expected = 0.5 * static_cast<double>(a.n_accidentals);
  const double se = std::sqrt(static_cast<double>(b.n_accidentals) +
                              0.25 * static_cast<double>(a.n_accidentals));
  EXPECT_GT(a.n_accidentals, 500u);
  EXPECT_LT(std::abs(static_cast<double>(b.n_accidentals) - expected),
            3.0 * se);
}

TEST(SimulatePairs, RejectsMultiPairWindows) {
  ChannelParams ch = At(20.0);
  ch.gate_window = 2e-9;
  EXPECT_THROW(simulate_pairs(Pairs(10), ch, PairSourceParams{}, {}, {}),
               DomainError);
  ch.gate_window = 1e-9;  // r_p tau = 0.1 exactly is still inside the model
  EXPECT_NO_THROW(simulate_pairs(Pairs(10), ch, PairSourceParams{}, {}, {}));
}

// Every protocol's analytic click statistics against simulation at three
// losses, via the same path as `keyrate mc-validate`.
TEST(McValidate, AllProtocolsAgreeAtThreeLosses) {
  const SweepConfig cfg;
  std::uint64_t seed = 100;
  for (Protocol protocol : kAllProtocols) {
    for (double loss : {20.0, 40.0, 60.0}) {
      const ValidationReport r =
          mc_validate(cfg, protocol, loss, 10'000'000, ++seed);
      EXPECT_TRUE(r.passed()) << format_report(r);
    }
  }
}

TEST(McValidate, ReportIsDeterministic) {
  const SweepConfig cfg;
  const std::string a =
      format_report(mc_validate(cfg, Protocol::kBbm92, 30.0, 1'000'000, 5));
  const std::string b =
      format_report(mc_validate(cfg, Protocol::kBbm92, 30.0, 1'000'000, 5));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("rng=mt19937_64"), std::string::npos);
}

}  // namespace
}  // namespace keyrate
