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

#pragma once

// Asymptotic key rates for the three prepare-and-measure / entanglement QKD
// protocols: decoy-state BB84 with a weak coherent source, BBM92 with an
// SPDC pair source, and BB84 with an ideal single-photon source.

#include <algorithm>
#include <cmath>

#include "keyrate/channel.hpp"
#include "keyrate/rate_point.hpp"

namespace keyrate {

struct WcpDecoyParams {
  double mu_signal = 0.8;
  double mu_decoy = 0.1;
  double p_signal = 0.5;
  double p_decoy = 0.25;
  double p_vacuum = 0.25;
  double misalignment_error = 0.0;  // e_det; 0 for a perfect-visibility source

  friend bool operator==(const WcpDecoyParams&, const WcpDecoyParams&) = default;
};

struct PairSourceParams {
  double pair_rate = 1e8;         // pairs/s
  double herald_efficiency = 0.25;
  double intrinsic_error = 0.0;   // polarisation-correlation error

  friend bool operator==(const PairSourceParams&, const PairSourceParams&) = default;
};

inline void Validate(const WcpDecoyParams& wcp) {
  if (!(wcp.mu_signal > wcp.mu_decoy && wcp.mu_decoy >= 0.0)) {
    throw DomainError("require mu_signal > mu_decoy >= 0");
  }
  for (double p : {wcp.p_signal, wcp.p_decoy, wcp.p_vacuum}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("state probabilities must lie in [0, 1]");
    }
  }
  if (std::abs(wcp.p_signal + wcp.p_decoy + wcp.p_vacuum - 1.0) > 1e-12) {
    throw DomainError("p_signal + p_decoy + p_vacuum must equal 1");
  }
  if (!(wcp.misalignment_error >= 0.0 && wcp.misalignment_error <= 0.5)) {
    throw DomainError("misalignment_error must lie in [0, 0.5]");
  }
}

inline void Validate(const PairSourceParams& pair) {
  if (!(pair.pair_rate > 0.0)) throw DomainError("pair_rate must be positive");
  if (!(pair.herald_efficiency >= 0.0 && pair.herald_efficiency <= 1.0)) {
    throw DomainError("herald_efficiency must lie in [0, 1]");
  }
  if (!(pair.intrinsic_error >= 0.0 && pair.intrinsic_error <= 0.5)) {
    throw DomainError("intrinsic_error must lie in [0, 0.5]");
  }
}

namespace detail {

inline double clamp_qber(double q) { return std::clamp(q, 0.0, 0.5); }

inline RatePoint make_point(Protocol protocol, const ChannelParams& ch,
                            std::optional<double> mu, double qber,
                            double raw_fraction, double scale,
                            double rate_hz) {
  RatePoint p;
  p.protocol = protocol;
  p.loss_db = ch.loss_db;
  p.mu = mu;
  p.qber = clamp_qber(qber);
  p.clamped = raw_fraction <= 0.0;
  p.bits_per_pulse = p.clamped ? 0.0 : scale * raw_fraction;
  p.bits_per_second = p.bits_per_pulse * rate_hz;
  if (!std::isfinite(p.bits_per_pulse) || !std::isfinite(p.qber)) {
    throw EvaluationError(std::string(protocol_name(protocol)) +
                          ": non-finite result");
  }
  return p;
}

}  // namespace detail

// Click statistics of a Poissonian pulse of mean `mu` through overall
// efficiency `eta`: gain Q and error rate E conditioned on a click.
struct DetectionStatistics {
  double gain = 0.0;
  double error = 0.0;
};

inline DetectionStatistics wcp_statistics(double eta, const NoiseYield& noise,
                                          double mu,
                                          double misalignment_error = 0.0) {
  const double signal = -std::expm1(-eta * mu);  // 1 - e^{-eta mu}
  DetectionStatistics s;
  s.gain = noise.y0 + (1.0 - noise.y0) * signal;  // 1 - (1-y0) e^{-eta mu}
  if (s.gain > 0.0) {
    s.error = (noise.e0 * noise.y0 + misalignment_error * signal) / s.gain;
  }
  return s;
}

// Ideal single-photon source. A noise click coinciding with the photon is
// resolved in the photon's favour, so only noise-only clicks err.
inline DetectionStatistics sps_statistics(double eta, const NoiseYield& noise) {
  DetectionStatistics s;
  s.gain = noise.y0 + eta - noise.y0 * eta;  // 1 - (1-y0)(1-eta)
  if (s.gain > 0.0) s.error = noise.e0 * noise.y0 * (1.0 - eta) / s.gain;
  return s;
}

// Heralded coincidence statistics for a downlink pair source: one photon is
// detected at the source, the other after the channel. Rates are per second.
struct CoincidenceStatistics {
  double singles_source = 0.0;    // S1
  double singles_receiver = 0.0;  // S2
  double true_rate = 0.0;         // C
  double accidental_rate = 0.0;   // A = S1 S2 tau
  double qber = 0.0;

  double total_rate() const { return true_rate + accidental_rate; }
};

inline CoincidenceStatistics pair_statistics(const ChannelParams& ch,
                                             const DetectorNoise& noise_src,
                                             const DetectorNoise& noise_rx,
                                             const PairSourceParams& pair) {
  Validate(ch);
  Validate(noise_src);
  Validate(noise_rx);
  Validate(pair);
  const double t = db_to_transmissivity(ch.loss_db);
  CoincidenceStatistics s;
  s.singles_source = pair.pair_rate * pair.herald_efficiency +
                     noise_src.total_rate();
  s.singles_receiver = pair.pair_rate * t * ch.detector_efficiency +
                       noise_rx.total_rate();
  s.true_rate =
      pair.pair_rate * pair.herald_efficiency * t * ch.detector_efficiency;
  s.accidental_rate = s.singles_source * s.singles_receiver * ch.gate_window;
  // Accidentals are indistinguishable from true coincidences and carry a
  // random bit.
  const double total = s.total_rate();
  if (total > 0.0) {
    s.qber = (0.5 * s.accidental_rate + pair.intrinsic_error * s.true_rate) /
             total;
  }
  return s;
}

inline RatePoint decoy_bb84_rate(const ChannelParams& ch,
                                 const NoiseYield& noise,
                                 const WcpDecoyParams& wcp,
                                 const ErrorCorrectionModel& ec) {
  Validate(ch);
  Validate(noise);
  Validate(wcp);
  Validate(ec);
  const double eta = db_to_transmissivity(ch.loss_db) * ch.detector_efficiency;
  const double mu = wcp.mu_signal;

  // Single-photon yield and error in the infinite-decoy limit.
  const double y1 = noise.y0 + eta - noise.y0 * eta;
  if (y1 <= 0.0) {
    // Nothing reaches the detector and it never fires on its own.
    return RatePoint{Protocol::kDecoyBb84, ch.loss_db, mu, 0.0, 0.0, 0.0,
                     false};
  }
  const double q1 = y1 * mu * std::exp(-mu);
  const double e1 = (noise.e0 * noise.y0 + wcp.misalignment_error * eta) / y1;

  const DetectionStatistics signal =
      wcp_statistics(eta, noise, mu, wcp.misalignment_error);
  const double e_mu = detail::clamp_qber(signal.error);
  const double raw = q1 * (1.0 - binary_entropy(detail::clamp_qber(e1))) -
                     signal.gain * ec.efficiency * binary_entropy(e_mu);
  constexpr double kSift = 0.5;
  return detail::make_point(Protocol::kDecoyBb84, ch, mu, e_mu, raw,
                            kSift * wcp.p_signal, ch.source_rate);
}

inline RatePoint bbm92_rate(const ChannelParams& ch,
                            const DetectorNoise& noise_src,
                            const DetectorNoise& noise_rx,
                            const PairSourceParams& pair,
                            const ErrorCorrectionModel& ec) {
  Validate(ec);
  const CoincidenceStatistics s =
      pair_statistics(ch, noise_src, noise_rx, pair);
  if (s.total_rate() <= 0.0) {
    return RatePoint{Protocol::kBbm92, ch.loss_db, std::nullopt, 0.0, 0.0,
                     0.0, false};
  }
  const double qber = detail::clamp_qber(s.qber);
  const double raw = 1.0 - (1.0 + ec.efficiency) * binary_entropy(qber);
  constexpr double kSift = 0.5;
  return detail::make_point(Protocol::kBbm92, ch, std::nullopt, qber, raw,
                            kSift * s.total_rate() / pair.pair_rate,
                            pair.pair_rate);
}

inline RatePoint sps_bb84_rate(const ChannelParams& ch,
                               const NoiseYield& noise,
                               const ErrorCorrectionModel& ec) {
  Validate(ch);
  Validate(noise);
  Validate(ec);
  const double eta = db_to_transmissivity(ch.loss_db) * ch.detector_efficiency;
  const DetectionStatistics s = sps_statistics(eta, noise);
  if (s.gain <= 0.0) {
    return RatePoint{Protocol::kSpsBb84, ch.loss_db, std::nullopt, 0.0, 0.0,
                     0.0, false};
  }
  const double e = detail::clamp_qber(s.error);
  const double h = binary_entropy(e);
  const double raw = 1.0 - ec.efficiency * h - h;
  constexpr double kSift = 0.5;
  return detail::make_point(Protocol::kSpsBb84, ch, std::nullopt, e, raw,
                            kSift * s.gain, ch.source_rate);
}

}  // namespace keyrate
