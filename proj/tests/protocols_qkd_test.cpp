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

#include "keyrate/protocols_qkd.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace keyrate {
namespace {

const ErrorCorrectionModel kEc{1.16};
const NoiseYield kGround = noise_yield(kGroundDetectorNoise, 1e-9);
const NoiseYield kNoiseless{0.0, 0.5};

ChannelParams At(double loss_db) {
  ChannelParams ch;
  ch.loss_db = loss_db;
  return ch;
}

// Expected values below come from tests/oracles/freeze_values.py (mpmath, 50
// significant digits).

TEST(DecoyBb84, HighLossRateIsZero) {
  const RatePoint p = decoy_bb84_rate(At(70.0), kGround, {}, kEc);
  EXPECT_EQ(p.bits_per_pulse, 0.0);
  EXPECT_EQ(p.bits_per_second, 0.0);
  EXPECT_TRUE(p.clamped);
  EXPECT_EQ(p.protocol, Protocol::kDecoyBb84);
  ASSERT_TRUE(p.mu.has_value());
  EXPECT_EQ(*p.mu, 0.8);
}

TEST(DecoyBb84, NoiselessReducesToSinglePhotonGain) {
  for (double loss : {0.0, 10.0, 33.0, 80.0}) {
    const RatePoint p = decoy_bb84_rate(At(loss), kNoiseless, {}, kEc);
    const double eta = std::pow(10.0, -loss / 10.0);
    const double q1 = eta * 0.8 * std::exp(-0.8);
    EXPECT_EQ(p.qber, 0.0);
    EXPECT_FALSE(p.clamped);
    EXPECT_NEAR(p.bits_per_pulse, 0.5 * 0.5 * q1, 1e-15 * q1);
  }
}

TEST(DecoyBb84, ThirtyDbMatchesHighPrecisionEvaluation) {
  const RatePoint p = decoy_bb84_rate(At(30.0), kGround, {}, kEc);
  EXPECT_NEAR(p.bits_per_pulse, 8.329343127791854e-5, 1e-12);
  EXPECT_NEAR(p.bits_per_pulse / 8.329343127791854e-5, 1.0, 1e-12);
  EXPECT_NEAR(p.qber, 0.0021788464758079408, 1e-15);
  EXPECT_DOUBLE_EQ(p.bits_per_second, p.bits_per_pulse * 1e8);

  const DetectionStatistics s = wcp_statistics(1e-3, kGround, 0.8);
  EXPECT_NEAR(s.gain / 0.00080317728643597079, 1.0, 1e-12);
}

TEST(DecoyBb84, ZeroYieldIsNotADivisionFailure) {
  ChannelParams ch = At(10.0);
  ch.detector_efficiency = 0.0;
  const RatePoint p = decoy_bb84_rate(ch, kNoiseless, {}, kEc);
  EXPECT_EQ(p.bits_per_pulse, 0.0);
  EXPECT_EQ(p.qber, 0.0);
  EXPECT_FALSE(p.clamped);
}

TEST(DecoyBb84, RejectsInvalidParams) {
  WcpDecoyParams bad;
  bad.mu_decoy = 0.9;
  EXPECT_THROW(decoy_bb84_rate(At(20.0), kGround, bad, kEc), DomainError);
  WcpDecoyParams unnormalised;
  unnormalised.p_vacuum = 0.3;
  EXPECT_THROW(decoy_bb84_rate(At(20.0), kGround, unnormalised, kEc),
               DomainError);
  EXPECT_THROW(decoy_bb84_rate(At(20.0), kGround, {}, {0.9}), DomainError);
}

TEST(DecoyBb84, MisalignmentRaisesQber) {
  WcpDecoyParams wcp;
  wcp.misalignment_error = 0.02;
  const RatePoint clean = decoy_bb84_rate(At(20.0), kGround, {}, kEc);
  const RatePoint misaligned = decoy_bb84_rate(At(20.0), kGround, wcp, kEc);
  EXPECT_GT(misaligned.qber, clean.qber + 0.019);
  EXPECT_LT(misaligned.bits_per_pulse, clean.bits_per_pulse);
}

TEST(Bbm92, PaperParametersFrozenValues) {
  const PairSourceParams pair;
  const RatePoint p20 = bbm92_rate(At(20.0), kSpaceDetectorNoise,
                                   kGroundDetectorNoise, pair, kEc);
  EXPECT_NEAR(p20.qber, 0.045623990529858861, 1e-14);
  EXPECT_NEAR(p20.bits_per_second / 58071.543889642754, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(p20.bits_per_pulse, p20.bits_per_second / 1e8);

  const RatePoint p40 = bbm92_rate(At(40.0), kSpaceDetectorNoise,
                                   kGroundDetectorNoise, pair, kEc);
  EXPECT_NEAR(p40.qber, 0.059502802002676461, 1e-14);
  EXPECT_NEAR(p40.bits_per_second / 421.38320349266204, 1.0, 1e-12);

  const RatePoint p60 = bbm92_rate(At(60.0), kSpaceDetectorNoise,
                                   kGroundDetectorNoise, pair, kEc);
  EXPECT_NEAR(p60.qber, 0.39135536356841135, 1e-14);
  EXPECT_EQ(p60.bits_per_second, 0.0);
  EXPECT_TRUE(p60.clamped);
}

TEST(Bbm92, VanishingWindowGivesZeroQber) {
  ChannelParams ch = At(30.0);
  ch.gate_window = 1e-20;
  const RatePoint p = bbm92_rate(ch, {}, {}, PairSourceParams{}, kEc);
  EXPECT_LT(p.qber, 1e-10);
  EXPECT_FALSE(p.clamped);
}

TEST(Bbm92, ZeroCoincidencesGiveZeroRate) {
  PairSourceParams pair;
  pair.herald_efficiency = 0.0;
  const RatePoint p = bbm92_rate(At(30.0), {}, {}, pair, kEc);
  EXPECT_EQ(p.bits_per_pulse, 0.0);
  EXPECT_EQ(p.qber, 0.0);
}

TEST(Bbm92, AccidentalsLinearInWindow) {
  ChannelParams ch = At(30.0);
  ch.gate_window = 1e-11;
  const PairSourceParams pair;
  const CoincidenceStatistics a =
      pair_statistics(ch, kSpaceDetectorNoise, kGroundDetectorNoise, pair);
  ChannelParams doubled = ch;
  doubled.gate_window = 2e-11;
  const CoincidenceStatistics b =
      pair_statistics(doubled, kSpaceDetectorNoise, kGroundDetectorNoise, pair);
  EXPECT_EQ(b.accidental_rate, 2.0 * a.accidental_rate);
  EXPECT_EQ(b.true_rate, a.true_rate);
  EXPECT_GT(b.qber, a.qber);
  ASSERT_LT(a.accidental_rate, 0.01 * a.true_rate);
  EXPECT_NEAR(b.qber / a.qber, 2.0, 0.1);
}

TEST(Bbm92, AccidentalsBilinearInSingles) {
  const ChannelParams ch = At(35.0);
  const PairSourceParams pair;
  const CoincidenceStatistics s =
      pair_statistics(ch, kSpaceDetectorNoise, kGroundDetectorNoise, pair);
  EXPECT_EQ(s.accidental_rate,
            s.singles_source * s.singles_receiver * ch.gate_window);

  // Doubling every source-side contribution doubles S1 and therefore A.
  PairSourceParams brighter = pair;
  brighter.herald_efficiency *= 2.0;
  const DetectorNoise noisier{2.0 * kSpaceDetectorNoise.dark_rate, 0.0};
  const CoincidenceStatistics d =
      pair_statistics(ch, noisier, kGroundDetectorNoise, brighter);
  EXPECT_EQ(d.singles_source, 2.0 * s.singles_source);
  EXPECT_NEAR(d.accidental_rate / s.accidental_rate, 2.0, 1e-15);
}

TEST(SpsBb84, NoiselessIsHalfTheTransmission) {
  for (double loss : {0.0, 3.0, 30.0, 90.0}) {
    const RatePoint p = sps_bb84_rate(At(loss), kNoiseless, kEc);
    EXPECT_EQ(p.qber, 0.0);
    EXPECT_EQ(p.bits_per_pulse, db_to_transmissivity(loss) / 2.0);
    EXPECT_FALSE(p.mu.has_value());
  }
}

TEST(SpsBb84, HighLossErrorForcesZero) {
  const RatePoint p = sps_bb84_rate(At(70.0), kGround, kEc);
  EXPECT_NEAR(p.qber, 0.48611110976080234, 1e-14);
  EXPECT_GT(p.qber, 0.11);
  EXPECT_EQ(p.bits_per_pulse, 0.0);
  EXPECT_TRUE(p.clamped);
}

TEST(SpsBb84, BoundedBySiftedClickRate) {
  const RatePoint p = sps_bb84_rate(At(30.0), kGround, kEc);
  EXPECT_LT(p.bits_per_pulse, db_to_transmissivity(30.0) / 2.0);
  EXPECT_NEAR(p.qber, 0.0017421585426556047, 1e-15);
}

TEST(SpsBb84, ZeroGainGivesZeroRate) {
  ChannelParams ch = At(10.0);
  ch.detector_efficiency = 0.0;
  const RatePoint p = sps_bb84_rate(ch, kNoiseless, kEc);
  EXPECT_EQ(p.bits_per_pulse, 0.0);
  EXPECT_FALSE(p.clamped);
}

// Properties over the 0-80 dB grid with the default noise assumptions.
class QkdLossGrid : public ::testing::Test {
 protected:
  static RatePoint Eval(Protocol protocol, double loss) {
    switch (protocol) {
      case Protocol::kDecoyBb84:
        return decoy_bb84_rate(At(loss), kGround, {}, kEc);
      case Protocol::kBbm92:
        return bbm92_rate(At(loss), kSpaceDetectorNoise, kGroundDetectorNoise,
                          {}, kEc);
      default:
        return sps_bb84_rate(At(loss), kGround, kEc);
    }
  }
};

TEST_F(QkdLossGrid, RateNonIncreasingWithCutoff) {
  for (Protocol protocol :
       {Protocol::kDecoyBb84, Protocol::kBbm92, Protocol::kSpsBb84}) {
    double previous = INFINITY;
    bool reached_zero = false;
    for (int loss = 0; loss <= 80; ++loss) {
      const RatePoint p = Eval(protocol, loss);
      EXPECT_LE(p.bits_per_pulse, previous)
          << protocol_name(protocol) << " at " << loss << " dB";
      previous = p.bits_per_pulse;
      if (p.bits_per_pulse == 0.0) reached_zero = true;
      if (p.clamped) {
        EXPECT_EQ(p.bits_per_pulse, 0.0);
      }
      EXPECT_GE(p.qber, 0.0);
      EXPECT_LE(p.qber, 0.5);
    }
    EXPECT_TRUE(reached_zero) << protocol_name(protocol);
  }
}

TEST_F(QkdLossGrid, QberNonDecreasingForPreparedStates) {
  for (Protocol protocol : {Protocol::kDecoyBb84, Protocol::kSpsBb84}) {
    double previous = 0.0;
    for (int loss = 0; loss <= 80; ++loss) {
      const double q = Eval(protocol, loss).qber;
      EXPECT_GE(q, previous) << protocol_name(protocol) << " at " << loss;
      previous = q;
    }
  }
}

TEST(ZeroNoise, AllQkdQbersVanish) {
  ChannelParams ch;
  ch.gate_window = 1e-30;
  for (int loss = 0; loss <= 80; loss += 5) {
    ch.loss_db = loss;
    const RatePoint d = decoy_bb84_rate(ch, kNoiseless, {}, kEc);
    const RatePoint s = sps_bb84_rate(ch, kNoiseless, kEc);
    const RatePoint b = bbm92_rate(ch, {}, {}, {}, kEc);
    EXPECT_EQ(d.qber, 0.0);
    EXPECT_EQ(s.qber, 0.0);
    EXPECT_LT(b.qber, 1e-15);
    EXPECT_FALSE(d.clamped || s.clamped || b.clamped);
  }
}

}  // namespace
}  // namespace keyrate
