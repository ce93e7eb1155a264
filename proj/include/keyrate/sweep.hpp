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

// Evaluates every protocol over a loss grid. Downlink orientation: the pair
// source and its heralding detector fly, so source-side detectors see space
// noise and the receiver sees ground noise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "keyrate/channel.hpp"
#include "keyrate/error.hpp"
#include "keyrate/optimizer.hpp"
#include "keyrate/protocols_pkd.hpp"
#include "keyrate/protocols_qkd.hpp"
#include "keyrate/rate_point.hpp"
#include "keyrate/version.hpp"

namespace keyrate {

struct SweepConfig {
  double loss_start_db = 20.0;
  double loss_stop_db = 70.0;
  double loss_step_db = 1.0;
  std::vector<Protocol> protocols{kAllProtocols.begin(), kAllProtocols.end()};

  DetectorNoise noise_space = kSpaceDetectorNoise;
  DetectorNoise noise_ground = kGroundDetectorNoise;
  // loss_db is ignored; each grid point supplies its own.
  ChannelParams channel;
  WcpDecoyParams wcp;
  PairSourceParams pair;
  ErrorCorrectionModel ec;
  PaModel pa_model = PaModel::kZetaExp2;
  OptimizeSpec optimize;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepMetadata {
  SweepConfig config;
  std::string software_version{kVersion};
  std::chrono::system_clock::time_point timestamp;
};

struct SweepResult {
  std::vector<RatePoint> points;  // sorted by (protocol, loss_db)
  SweepMetadata metadata;
};

// Range checks named by configuration key.
inline void validate_config(const SweepConfig& cfg) {
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(0, key, what);
  };
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(cfg.loss_start_db) && cfg.loss_start_db >= 0.0,
          "loss_start_db", "must be finite and >= 0");
  require(finite(cfg.loss_stop_db) && cfg.loss_stop_db >= cfg.loss_start_db,
          "loss_stop_db", "must be finite and >= loss_start_db");
  require(finite(cfg.loss_step_db) && cfg.loss_step_db > 0.0, "loss_step_db",
          "must be finite and > 0");
  require(!cfg.protocols.empty(), "protocols", "must name at least one");
  require(cfg.wcp.mu_signal > cfg.wcp.mu_decoy && finite(cfg.wcp.mu_signal),
          "mu_signal", "must be finite and > mu_decoy");
  require(cfg.wcp.mu_decoy >= 0.0, "mu_decoy", "must be >= 0");
  require(cfg.wcp.p_signal >= 0.0 && cfg.wcp.p_signal <= 1.0, "p_signal",
          "must lie in [0, 1]");
  require(cfg.wcp.p_decoy >= 0.0 && cfg.wcp.p_decoy <= 1.0, "p_decoy",
          "must lie in [0, 1]");
  require(cfg.wcp.p_vacuum >= 0.0 && cfg.wcp.p_vacuum <= 1.0, "p_vacuum",
          "must lie in [0, 1]");
  require(std::abs(cfg.wcp.p_signal + cfg.wcp.p_decoy + cfg.wcp.p_vacuum -
                   1.0) <= 1e-12,
          "p_vacuum", "p_signal + p_decoy + p_vacuum must equal 1");
  require(cfg.wcp.misalignment_error >= 0.0 &&
              cfg.wcp.misalignment_error <= 0.5,
          "misalignment_error", "must lie in [0, 0.5]");
  require(finite(cfg.pair.pair_rate) && cfg.pair.pair_rate > 0.0, "pair_rate",
          "must be finite and > 0");
  require(cfg.pair.herald_efficiency >= 0.0 &&
              cfg.pair.herald_efficiency <= 1.0,
          "herald_efficiency", "must lie in [0, 1]");
  require(cfg.pair.intrinsic_error >= 0.0 && cfg.pair.intrinsic_error <= 0.5,
          "intrinsic_error", "must lie in [0, 0.5]");
  require(finite(cfg.channel.gate_window) && cfg.channel.gate_window > 0.0,
          "tau_s", "must be finite and > 0");
  require(finite(cfg.noise_space.dark_rate) && cfg.noise_space.dark_rate >= 0.0,
          "dark_space", "must be finite and >= 0");
  require(finite(cfg.noise_ground.dark_rate) &&
              cfg.noise_ground.dark_rate >= 0.0,
          "dark_ground", "must be finite and >= 0");
  require(finite(cfg.noise_ground.background_rate) &&
              cfg.noise_ground.background_rate >= 0.0,
          "background_ground", "must be finite and >= 0");
  require(cfg.channel.detector_efficiency >= 0.0 &&
              cfg.channel.detector_efficiency <= 1.0,
          "detector_efficiency", "must lie in [0, 1]");
  require(finite(cfg.ec.efficiency) && cfg.ec.efficiency >= 1.0, "f_ec",
          "must be finite and >= 1");
  require(finite(cfg.channel.source_rate) && cfg.channel.source_rate > 0.0,
          "source_rate", "must be finite and > 0");
  require(finite(cfg.optimize.lower), "opt_lower", "must be finite");
  require(finite(cfg.optimize.upper) && cfg.optimize.upper > cfg.optimize.lower,
          "opt_upper", "must be finite and > opt_lower");
  require(cfg.optimize.tolerance > 0.0, "opt_tol", "must be > 0");
  require(cfg.optimize.max_evals >= 16, "opt_max_evals", "must be >= 16");
}

// Grid points start + k*step for every k with start + k*step <= stop.
inline std::vector<double> loss_grid(const SweepConfig& cfg) {
  const double span = (cfg.loss_stop_db - cfg.loss_start_db) / cfg.loss_step_db;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = cfg.loss_start_db + static_cast<double>(k) * cfg.loss_step_db;
  }
  return grid;
}

inline ChannelParams channel_at(const SweepConfig& cfg, double loss_db) {
  ChannelParams ch = cfg.channel;
  ch.loss_db = loss_db;
  return ch;
}

inline NoiseYield receiver_noise_yield(const SweepConfig& cfg) {
  return noise_yield(cfg.noise_ground, cfg.channel.gate_window);
}

struct PpmOptimum {
  double zeta = 0.0;
  double mu = 0.0;
  RatePoint point;
};

// Maximises PPM bits per pulse over zeta in the configured bracket and
// reports mu = zeta / (1 - t).
inline PpmOptimum optimize_ppm(const SweepConfig& cfg, double loss_db) {
  const ChannelParams ch = channel_at(cfg, loss_db);
  const NoiseYield noise = receiver_noise_yield(cfg);
  auto objective = [&](double zeta) {
    return ppm_pkd_rate(ch, noise, PpmPkdParams{zeta, cfg.pa_model}, cfg.ec)
        .bits_per_pulse;
  };
  const OptimizeResult best = optimize_mu(objective, cfg.optimize);
  PpmOptimum out;
  out.zeta = best.argmax;
  out.point =
      ppm_pkd_rate(ch, noise, PpmPkdParams{best.argmax, cfg.pa_model}, cfg.ec);
  out.mu = *out.point.mu;
  return out;
}

inline RatePoint evaluate_point(const SweepConfig& cfg, Protocol protocol,
                                double loss_db) {
  const ChannelParams ch = channel_at(cfg, loss_db);
  switch (protocol) {
    case Protocol::kDecoyBb84:
      return decoy_bb84_rate(ch, receiver_noise_yield(cfg), cfg.wcp, cfg.ec);
    case Protocol::kBbm92:
      return bbm92_rate(ch, cfg.noise_space, cfg.noise_ground, cfg.pair,
                        cfg.ec);
    case Protocol::kSpsBb84:
      return sps_bb84_rate(ch, receiver_noise_yield(cfg), cfg.ec);
    case Protocol::kPpmPkd:
      return optimize_ppm(cfg, loss_db).point;
    case Protocol::kHeraldedPkd:
      return heralded_pkd_rate(ch, cfg.noise_space, cfg.noise_ground,
                               cfg.pair, cfg.ec);
    case Protocol::kSpsPkd:
      return sps_pkd_rate(ch, receiver_noise_yield(cfg), cfg.ec);
  }
  throw EvaluationError("unknown protocol");
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);
  std::vector<Protocol> protocols = cfg.protocols;
  std::sort(protocols.begin(), protocols.end());
  protocols.erase(std::unique(protocols.begin(), protocols.end()),
                  protocols.end());
  const std::vector<double> grid = loss_grid(cfg);

  SweepResult result;
  result.metadata.config = cfg;
  result.metadata.timestamp = std::chrono::system_clock::now();
  result.points.reserve(protocols.size() * grid.size());
  for (Protocol protocol : protocols) {
    for (double loss : grid) {
      try {
        result.points.push_back(evaluate_point(cfg, protocol, loss));
      } catch (const std::exception& e) {
        throw EvaluationError(std::string(protocol_name(protocol)) + " at " +
                              std::to_string(loss) + " dB: " + e.what());
      }
    }
  }
  return result;
}

}  // namespace keyrate
