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

// Analytic-versus-simulated comparison behind `mc-validate`.
//
// z-scores use the standard error implied by the analytic value (the null
// hypothesis), not the empirical one: at high loss a run may see only a
// handful of clicks and the empirical error would be degenerate. The QBER of
// a run with no clicks is not testable and is reported as such.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "keyrate/mc_oracle.hpp"
#include "keyrate/protocols_pkd.hpp"
#include "keyrate/protocols_qkd.hpp"
#include "keyrate/sweep.hpp"

namespace keyrate {

struct ValidationRow {
  std::string quantity;
  double analytic = 0.0;
  double empirical = 0.0;
  double standard_error = 0.0;  // under the analytic value
  double z = 0.0;
  bool testable = true;

  bool passed() const { return !testable || std::abs(z) <= 3.0; }
};

struct ValidationReport {
  Protocol protocol = Protocol::kDecoyBb84;
  double loss_db = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  std::optional<double> mu;
  McEstimate estimate;
  std::vector<ValidationRow> rows;

  bool passed() const {
    for (const auto& r : rows) {
      if (!r.passed()) return false;
    }
    return true;
  }
};

namespace detail {

inline ValidationRow proportion_row(std::string quantity, double analytic,
                                    double empirical, std::uint64_t trials) {
  ValidationRow row{std::move(quantity), analytic, empirical};
  if (trials == 0) {
    row.testable = false;
    return row;
  }
  row.standard_error =
      std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials));
  if (row.standard_error > 0.0) {
    row.z = (empirical - analytic) / row.standard_error;
  } else {
    row.z = empirical == analytic ? 0.0
                                  : std::numeric_limits<double>::infinity();
  }
  return row;
}

}  // namespace detail

inline ValidationReport mc_validate(const SweepConfig& cfg, Protocol protocol,
                                    double loss_db, std::uint64_t n_trials,
                                    std::uint64_t seed) {
  validate_config(cfg);
  ValidationReport report;
  report.protocol = protocol;
  report.loss_db = loss_db;
  report.n_trials = n_trials;
  report.seed = seed;

  const ChannelParams ch = channel_at(cfg, loss_db);
  const NoiseYield noise = receiver_noise_yield(cfg);
  const double eta = db_to_transmissivity(loss_db) * ch.detector_efficiency;
  double gain = 0.0;
  double qber = 0.0;
  std::string gain_label = "gain";

  switch (protocol) {
    case Protocol::kDecoyBb84:
    case Protocol::kPpmPkd: {
      double mu = cfg.wcp.mu_signal;
      double e_det = cfg.wcp.misalignment_error;
      if (protocol == Protocol::kPpmPkd) {
        mu = optimize_ppm(cfg, loss_db).mu;
        e_det = 0.0;
      }
      report.mu = mu;
      const DetectionStatistics s = wcp_statistics(eta, noise, mu, e_det);
      gain = s.gain;
      qber = protocol == Protocol::kPpmPkd
                 ? ppm_qber(mu, db_to_transmissivity(loss_db),
                            ch.detector_efficiency, noise)
                 : s.error;
      report.estimate = simulate_wcp({n_trials, seed, McScenario::kWcp}, ch,
                                     noise, mu, e_det);
      break;
    }
    case Protocol::kSpsBb84:
    case Protocol::kSpsPkd: {
      const DetectionStatistics s = sps_statistics(eta, noise);
      gain = s.gain;
      qber = s.error;
      report.estimate =
          simulate_sps({n_trials, seed, McScenario::kSps}, ch, noise);
      break;
    }
    case Protocol::kBbm92:
    case Protocol::kHeraldedPkd: {
      const CoincidenceStatistics s =
          pair_statistics(ch, cfg.noise_space, cfg.noise_ground, cfg.pair);
      gain = s.total_rate() * ch.gate_window;
      qber = s.qber;
      gain_label = "coincidence/window";
      report.estimate =
          simulate_pairs({n_trials, seed, McScenario::kPair}, ch, cfg.pair,
                         cfg.noise_space, cfg.noise_ground);
      break;
    }
  }

  const McEstimate& est = report.estimate;
  report.rows.push_back(
      detail::proportion_row(gain_label, gain, est.gain_hat, est.n_trials));
  report.rows.push_back(
      detail::proportion_row("qber", qber, est.qber_hat, est.n_clicks));
  return report;
}

inline std::string format_report(const ValidationReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "protocol=%s loss_db=%.17g n=%llu seed=%llu rng=%s\n",
                std::string(protocol_name(r.protocol)).c_str(), r.loss_db,
                static_cast<unsigned long long>(r.n_trials),
                static_cast<unsigned long long>(r.seed),
                std::string(kMcRngAlgorithm).c_str());
  out += buf;
  if (r.mu) {
    std::snprintf(buf, sizeof buf, "mu=%.17g\n", *r.mu);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "clicks=%llu errors=%llu\n",
                static_cast<unsigned long long>(r.estimate.n_clicks),
                static_cast<unsigned long long>(r.estimate.n_errors));
  out += buf;
  std::snprintf(buf, sizeof buf, "%-20s %-14s %-14s %-12s %-9s %s\n",
                "quantity", "analytic", "empirical", "std_err", "z",
                "verdict");
  out += buf;
  for (const auto& row : r.rows) {
    if (row.testable) {
      std::snprintf(buf, sizeof buf,
                    "%-20s %-14.6e %-14.6e %-12.4e %-+9.3f %s\n",
                    row.quantity.c_str(), row.analytic, row.empirical,
                    row.standard_error, row.z, row.passed() ? "pass" : "FAIL");
    } else {
      std::snprintf(buf, sizeof buf, "%-20s %-14.6e %-14s %-12s %-9s %s\n",
                    row.quantity.c_str(), row.analytic, "-", "-", "-",
                    "untestable (no clicks)");
    }
    out += buf;
  }
  out += r.passed() ? "result: PASS\n" : "result: FAIL\n";
  return out;
}

}  // namespace keyrate
