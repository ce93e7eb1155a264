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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "keyrate/error.hpp"

namespace keyrate {

// Declaration order is the sort order of sweep output.
enum class Protocol {
  kDecoyBb84,
  kBbm92,
  kSpsBb84,
  kPpmPkd,
  kHeraldedPkd,
  kSpsPkd,
};

inline constexpr std::array<Protocol, 6> kAllProtocols = {
    Protocol::kDecoyBb84, Protocol::kBbm92,       Protocol::kSpsBb84,
    Protocol::kPpmPkd,    Protocol::kHeraldedPkd, Protocol::kSpsPkd,
};

inline constexpr std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kDecoyBb84: return "decoy_bb84";
    case Protocol::kBbm92: return "bbm92";
    case Protocol::kSpsBb84: return "sps_bb84";
    case Protocol::kPpmPkd: return "ppm_pkd";
    case Protocol::kHeraldedPkd: return "heralded_pkd";
    case Protocol::kSpsPkd: return "sps_pkd";
  }
  return "unknown";
}

inline std::optional<Protocol> protocol_from_name(std::string_view name) {
  for (Protocol p : kAllProtocols) {
    if (protocol_name(p) == name) return p;
  }
  return std::nullopt;
}

// The QKD protocol run on the same hardware as a PKD protocol, and back.
inline constexpr Protocol counterpart(Protocol p) {
  switch (p) {
    case Protocol::kDecoyBb84: return Protocol::kPpmPkd;
    case Protocol::kBbm92: return Protocol::kHeraldedPkd;
    case Protocol::kSpsBb84: return Protocol::kSpsPkd;
    case Protocol::kPpmPkd: return Protocol::kDecoyBb84;
    case Protocol::kHeraldedPkd: return Protocol::kBbm92;
    case Protocol::kSpsPkd: return Protocol::kSpsBb84;
  }
  return p;
}

inline constexpr bool is_qkd(Protocol p) {
  return p == Protocol::kDecoyBb84 || p == Protocol::kBbm92 ||
         p == Protocol::kSpsBb84;
}

struct ErrorCorrectionModel {
  double efficiency = 1.16;  // f_E, overhead on the Shannon limit

  friend bool operator==(const ErrorCorrectionModel&, const ErrorCorrectionModel&) = default;
};

inline void Validate(const ErrorCorrectionModel& ec) {
  if (!(ec.efficiency >= 1.0)) {
    throw DomainError("error-correction efficiency must be >= 1");
  }
}

// One evaluated operating point. `clamped` is set when the analytic key
// fraction came out non-positive and bits_per_pulse was forced to zero.
struct RatePoint {
  Protocol protocol = Protocol::kDecoyBb84;
  double loss_db = 0.0;
  std::optional<double> mu;  // mean photon number, when the source has one
  double qber = 0.0;
  double bits_per_pulse = 0.0;
  double bits_per_second = 0.0;
  bool clamped = false;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

}  // namespace keyrate
