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

// Link budget and detector noise: converts decibel losses and count rates
// into the per-window probabilities every protocol model consumes.

#include <algorithm>
#include <cmath>
#include <string>

#include "keyrate/error.hpp"

namespace keyrate {

struct DetectorNoise {
  double dark_rate = 0.0;        // counts/s
  double background_rate = 0.0; // counts/s

  double total_rate() const { return dark_rate + background_rate; }

  friend bool operator==(const DetectorNoise&, const DetectorNoise&) = default;
};

// Pessimistic radiation-damaged detector in orbit.
inline constexpr DetectorNoise kSpaceDetectorNoise{15000.0, 0.0};
// Ground detector with scattered-light background.
inline constexpr DetectorNoise kGroundDetectorNoise{2500.0, 1000.0};

struct ChannelParams {
  double loss_db = 0.0;              // link loss, excluding detector efficiency
  double detector_efficiency = 1.0;  // receiver detector efficiency
  double gate_window = 1e-9;         // s
  double source_rate = 1e8;          // pulses/s

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

// Probability of a noise click within one gate window, and the fraction of
// such clicks that land on the wrong bit value.
struct NoiseYield {
  double y0 = 0.0;
  double e0 = 0.5;

  friend bool operator==(const NoiseYield&, const NoiseYield&) = default;
};

inline void Validate(const DetectorNoise& noise) {
  if (!(noise.dark_rate >= 0.0) || !(noise.background_rate >= 0.0)) {
    throw DomainError("detector count rates must be non-negative");
  }
}

inline void Validate(const ChannelParams& ch) {
  if (!(ch.loss_db >= 0.0) || !std::isfinite(ch.loss_db)) {
    throw DomainError("loss_db must be finite and non-negative, got " +
                      std::to_string(ch.loss_db));
  }
  if (!(ch.detector_efficiency >= 0.0 && ch.detector_efficiency <= 1.0)) {
    throw DomainError("detector_efficiency must lie in [0, 1]");
  }
  if (!(ch.gate_window > 0.0)) {
    throw DomainError("gate_window must be positive");
  }
  if (!(ch.source_rate > 0.0)) {
    throw DomainError("source_rate must be positive");
  }
}

inline void Validate(const NoiseYield& noise) {
  if (!(noise.y0 >= 0.0 && noise.y0 <= 1.0)) {
    throw DomainError("noise yield y0 must lie in [0, 1]");
  }
  if (!(noise.e0 >= 0.0 && noise.e0 <= 1.0)) {
    throw DomainError("noise error fraction e0 must lie in [0, 1]");
  }
}

inline double db_to_transmissivity(double loss_db) {
  if (!(loss_db >= 0.0)) {
    throw DomainError("loss_db must be non-negative, got " +
                      std::to_string(loss_db));
  }
  return std::pow(10.0, -loss_db / 10.0);
}

inline double transmissivity_to_db(double transmissivity) {
  if (!(transmissivity > 0.0 && transmissivity <= 1.0)) {
    throw DomainError("transmissivity must lie in (0, 1]");
  }
  return -10.0 * std::log10(transmissivity);
}

// Clamps at 1: a saturated detector is a valid, if useless, operating point.
inline NoiseYield noise_yield(const DetectorNoise& noise, double gate_window) {
  Validate(noise);
  if (!(gate_window > 0.0)) throw DomainError("gate_window must be positive");
  return {std::min(1.0, noise.total_rate() * gate_window), 0.5};
}

// Shannon entropy of a Bernoulli(x) variable, in bits. 0 log 0 = 0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("binary_entropy argument must lie in [0, 1], got " +
                      std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace keyrate
