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

// Photon-level Monte-Carlo simulation of the detection process. It shares no
// code with the analytic gain/error formulas it is used to check.
//
// Sampling is built directly on std::mt19937_64, whose output sequence is
// fixed by the standard; the distribution code below is ours, so a seed
// reproduces bit-identical estimates on every platform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "keyrate/channel.hpp"
#include "keyrate/error.hpp"
#include "keyrate/protocols_qkd.hpp"

namespace keyrate {

inline constexpr std::string_view kMcRngAlgorithm =
    "mt19937_64+uniform53+poisson-knuth";

enum class McScenario { kWcp, kPair, kSps };

struct McConfig {
  std::uint64_t n_pulses = 10'000'000;
  std::uint64_t seed = 1;
  McScenario scenario = McScenario::kWcp;
};

struct McEstimate {
  double gain_hat = 0.0;  // clicks (coincidences) per trial
  double gain_se = 0.0;
  double qber_hat = 0.0;  // erroneous fraction of clicks
  double qber_se = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t n_clicks = 0;
  std::uint64_t n_errors = 0;
  // Pair scenario only: coincidences formed by unrelated clicks.
  std::uint64_t n_accidentals = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

class PhotonRng {
 public:
  explicit PhotonRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Knuth's product method, split into chunks of mean <= 30 so that e^{-mean}
  // never underflows. A sum of independent Poisson draws is Poisson.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 0.0) {
      const double chunk = std::min(mean, 30.0);
      mean -= chunk;
      const double limit = std::exp(-chunk);
      double prod = uniform();
      while (prod >= limit) {
        ++total;
        prod *= uniform();
      }
    }
    return total;
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline void check_scenario(const McConfig& cfg, McScenario expected) {
  if (cfg.n_pulses < 1) throw DomainError("n_pulses must be at least 1");
  if (cfg.scenario != expected) {
    throw DomainError("McConfig scenario does not match the simulation");
  }
}

inline McEstimate finish(std::uint64_t trials, std::uint64_t clicks,
                         std::uint64_t errors) {
  McEstimate est;
  est.n_trials = trials;
  est.n_clicks = clicks;
  est.n_errors = errors;
  const double n = static_cast<double>(trials);
  est.gain_hat = static_cast<double>(clicks) / n;
  est.gain_se = std::sqrt(est.gain_hat * (1.0 - est.gain_hat) / n);
  if (clicks > 0) {
    const double k = static_cast<double>(clicks);
    est.qber_hat = static_cast<double>(errors) / k;
    est.qber_se = std::sqrt(est.qber_hat * (1.0 - est.qber_hat) / k);
  }
  return est;
}

}  // namespace detail

// Poisson photon number per pulse, independent survival of each photon,
// independent noise click. Noise-only clicks err with probability e0, clicks
// carrying signal with probability misalignment_error.
inline McEstimate simulate_wcp(const McConfig& cfg, const ChannelParams& ch,
                               const NoiseYield& noise, double mu,
                               double misalignment_error = 0.0) {
  detail::check_scenario(cfg, McScenario::kWcp);
  Validate(ch);
  Validate(noise);
  if (!(mu >= 0.0)) throw DomainError("mu must be non-negative");
  const double survive =
      std::pow(10.0, -ch.loss_db / 10.0) * ch.detector_efficiency;

  PhotonRng rng(cfg.seed);
  std::uint64_t clicks = 0;
  std::uint64_t errors = 0;
  for (std::uint64_t i = 0; i < cfg.n_pulses; ++i) {
    const std::uint64_t photons = rng.poisson(mu);
    std::uint64_t arrived = 0;
    for (std::uint64_t k = 0; k < photons; ++k) {
      if (rng.bernoulli(survive)) ++arrived;
    }
    const bool dark = rng.bernoulli(noise.y0);
    if (arrived == 0 && !dark) continue;
    ++clicks;
    const double p_err = arrived > 0 ? misalignment_error : noise.e0;
    if (rng.bernoulli(p_err)) ++errors;
  }
  return detail::finish(cfg.n_pulses, clicks, errors);
}

// Exactly one photon per pulse.
inline McEstimate simulate_sps(const McConfig& cfg, const ChannelParams& ch,
                               const NoiseYield& noise) {
  detail::check_scenario(cfg, McScenario::kSps);
  Validate(ch);
  Validate(noise);
  const double survive =
      std::pow(10.0, -ch.loss_db / 10.0) * ch.detector_efficiency;

  PhotonRng rng(cfg.seed);
  std::uint64_t clicks = 0;
  std::uint64_t errors = 0;
  for (std::uint64_t i = 0; i < cfg.n_pulses; ++i) {
    const bool arrived = rng.bernoulli(survive);
    const bool dark = rng.bernoulli(noise.y0);
    if (!arrived && !dark) continue;
    ++clicks;
    if (!arrived && rng.bernoulli(noise.e0)) ++errors;
  }
  return detail::finish(cfg.n_pulses, clicks, errors);
}

// One trial per coincidence window of width ch.gate_window. A heralded pair
// is detected on both sides with probability r_p tau eta_s t eta_det;
// otherwise each side fires independently at its singles rate, and two
// unrelated clicks in the same window form an accidental coincidence.
//
// Valid only while pairs per window r_p tau <= 0.1.
inline McEstimate simulate_pairs(const McConfig& cfg, const ChannelParams& ch,
                                 const PairSourceParams& pair,
                                 const DetectorNoise& noise_src,
                                 const DetectorNoise& noise_rx) {
  detail::check_scenario(cfg, McScenario::kPair);
  Validate(ch);
  Validate(pair);
  Validate(noise_src);
  Validate(noise_rx);
  const double tau = ch.gate_window;
  if (pair.pair_rate * tau > 0.1 * (1.0 + 1e-12)) {
    throw DomainError(
        "pair_rate * gate_window exceeds 0.1; multi-pair windows are outside "
        "the simulation model");
  }
  const double t = std::pow(10.0, -ch.loss_db / 10.0);
  const double herald_side = pair.pair_rate * pair.herald_efficiency;
  const double receiver_side = pair.pair_rate * t * ch.detector_efficiency;
  const double p_true = herald_side * tau * t * ch.detector_efficiency;
  const double p_src =
      std::min(1.0, (herald_side + noise_src.dark_rate +
                     noise_src.background_rate) * tau);
  const double p_rx =
      std::min(1.0, (receiver_side + noise_rx.dark_rate +
                     noise_rx.background_rate) * tau);

  PhotonRng rng(cfg.seed);
  std::uint64_t clicks = 0;
  std::uint64_t errors = 0;
  std::uint64_t accidentals = 0;
  for (std::uint64_t i = 0; i < cfg.n_pulses; ++i) {
    if (rng.bernoulli(p_true)) {
      ++clicks;
      if (rng.bernoulli(pair.intrinsic_error)) ++errors;
      continue;
    }
    if (rng.bernoulli(p_src) && rng.bernoulli(p_rx)) {
      ++clicks;
      ++accidentals;
      if (rng.bernoulli(0.5)) ++errors;
    }
  }
  McEstimate est = detail::finish(cfg.n_pulses, clicks, errors);
  est.n_accidentals = accidentals;
  return est;
}

}  // namespace keyrate
