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

// Key rates for single-basis photon key distribution, where the channel is
// assumed free of active man-in-the-middle attacks. No basis sifting; the
// only privacy amplification is against multi-photon leakage.

#include <cmath>
#include <concepts>
#include <optional>
#include <string_view>

#include "keyrate/channel.hpp"
#include "keyrate/protocols_qkd.hpp"
#include "keyrate/rate_point.hpp"

namespace keyrate {

// Privacy-amplification term g(zeta) of the pulse-position-modulated scheme.
enum class PaModel {
  // g(zeta) = zeta e^{-2 zeta}. Stand-in with the multi-photon tagging shape
  // of weak-coherent PKD without decoys; maximal at zeta = 1/2.
  kZetaExp2,
};

inline constexpr std::string_view pa_model_name(PaModel m) {
  switch (m) {
    case PaModel::kZetaExp2: return "zeta_exp2";
  }
  return "unknown";
}

inline std::optional<PaModel> pa_model_from_name(std::string_view name) {
  if (name == pa_model_name(PaModel::kZetaExp2)) return PaModel::kZetaExp2;
  return std::nullopt;
}

inline double privacy_amplification_term(PaModel model, double zeta) {
  switch (model) {
    case PaModel::kZetaExp2: return zeta * std::exp(-2.0 * zeta);
  }
  throw DomainError("unknown privacy amplification model");
}

// zeta = mu (1 - t); the mean photon number follows from the channel.
struct PpmPkdParams {
  double zeta = 0.5;
  PaModel pa_model = PaModel::kZetaExp2;

  friend bool operator==(const PpmPkdParams&, const PpmPkdParams&) = default;
};

// Wrong-slot probability of a PPM symbol: a noise click lands in either slot
// with equal odds, the signal always in the right one.
inline double ppm_qber(double mu, double t, double detector_efficiency,
                       const NoiseYield& noise) {
  const double p_click = mu * t * detector_efficiency;
  const double denom = p_click + noise.y0;
  if (denom <= 0.0) return 0.0;
  return detail::clamp_qber(noise.e0 * noise.y0 / denom);
}

// R = g(zeta) t/(1-t) eta (1 - f_E H2(QBER)) f_source, with an arbitrary
// g supplied by the caller.
template <std::invocable<double> PaTerm>
RatePoint ppm_pkd_rate(const ChannelParams& ch, const NoiseYield& noise,
                       double zeta, PaTerm&& g,
                       const ErrorCorrectionModel& ec) {
  Validate(ch);
  Validate(noise);
  Validate(ec);
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw DomainError("zeta must be finite and non-negative");
  }
  const double t = db_to_transmissivity(ch.loss_db);
  if (!(t < 1.0)) {
    throw DomainError("ppm_pkd requires transmissivity < 1 (loss_db > 0)");
  }
  const double mu = zeta / (1.0 - t);
  const double qber = ppm_qber(mu, t, ch.detector_efficiency, noise);
  const double correction = 1.0 - binary_entropy(qber) * ec.efficiency;
  const double scale = static_cast<double>(g(zeta)) * t / (1.0 - t) *
                       ch.detector_efficiency;
  return detail::make_point(Protocol::kPpmPkd, ch, mu, qber, correction,
                            scale, ch.source_rate);
}

inline RatePoint ppm_pkd_rate(const ChannelParams& ch, const NoiseYield& noise,
                              const PpmPkdParams& params,
                              const ErrorCorrectionModel& ec) {
  return ppm_pkd_rate(
      ch, noise, params.zeta,
      [model = params.pa_model](double z) {
        return privacy_amplification_term(model, z);
      },
      ec);
}

// Same coincidence statistics as BBM92; every coincidence is key material
// and only error correction is paid for.
inline RatePoint heralded_pkd_rate(const ChannelParams& ch,
                                   const DetectorNoise& noise_src,
                                   const DetectorNoise& noise_rx,
                                   const PairSourceParams& pair,
                                   const ErrorCorrectionModel& ec) {
  Validate(ec);
  const CoincidenceStatistics s =
      pair_statistics(ch, noise_src, noise_rx, pair);
  if (s.total_rate() <= 0.0) {
    return RatePoint{Protocol::kHeraldedPkd, ch.loss_db, std::nullopt, 0.0,
                     0.0, 0.0, false};
  }
  const double qber = detail::clamp_qber(s.qber);
  const double raw = 1.0 - ec.efficiency * binary_entropy(qber);
  return detail::make_point(Protocol::kHeraldedPkd, ch, std::nullopt, qber,
                            raw, s.total_rate() / pair.pair_rate,
                            pair.pair_rate);
}

inline RatePoint sps_pkd_rate(const ChannelParams& ch, const NoiseYield& noise,
                              const ErrorCorrectionModel& ec) {
  Validate(ch);
  Validate(noise);
  Validate(ec);
  const double eta = db_to_transmissivity(ch.loss_db) * ch.detector_efficiency;
  const DetectionStatistics s = sps_statistics(eta, noise);
  if (s.gain <= 0.0) {
    return RatePoint{Protocol::kSpsPkd, ch.loss_db, std::nullopt, 0.0, 0.0,
                     0.0, false};
  }
  const double e = detail::clamp_qber(s.error);
  const double raw = 1.0 - ec.efficiency * binary_entropy(e);
  return detail::make_point(Protocol::kSpsPkd, ch, std::nullopt, e, raw,
                            s.gain, ch.source_rate);
}

}  // namespace keyrate
