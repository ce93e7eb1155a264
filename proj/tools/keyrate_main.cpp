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

// keyrate: key-rate sweeps, single points, PPM mu optimisation and
// Monte-Carlo validation from the command line.
//
// Exit codes: 0 success, 2 usage/config error, 3 evaluation error or failed
// validation, 4 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "keyrate/keyrate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEvaluation = 3;
constexpr int kExitIo = 4;

keyrate::SweepConfig load_config(const std::string& path) {
  if (path.empty()) return keyrate::parse_config("");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw keyrate::IoError("cannot open config file " + path, 0);
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw keyrate::IoError("cannot read config file " + path, 0);
  return keyrate::parse_config(text.str());
}

keyrate::Protocol require_protocol(const std::string& name) {
  const auto p = keyrate::protocol_from_name(name);
  if (!p) throw keyrate::ConfigError(0, "--protocol", "unknown protocol " + name);
  return *p;
}

// Writes to `path`, or stdout when empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw keyrate::IoError("cannot open output file " + path, 0);
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic secret-key rates for QKD and PKD free-space links"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(keyrate::kVersion));

  std::string config_path;
  std::string out_path;
  std::string protocol_name;
  double loss_db = 0.0;
  std::uint64_t n_trials = 10'000'000;
  std::uint64_t seed = 1;

  auto* point = app.add_subcommand("point", "Evaluate one protocol at one loss");
  point->add_option("--protocol", protocol_name, "Protocol identifier")
      ->required();
  point->add_option("--loss-db", loss_db, "Total link loss in dB")->required();
  point->add_option("--config", config_path, "Configuration file");
  point->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Sweep all protocols over loss");
  sweep->add_option("--config", config_path, "Configuration file");
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* optimize =
      app.add_subcommand("optimize", "Optimise PPM PKD mean photon number");
  optimize->add_option("--protocol", protocol_name, "Must be ppm_pkd")
      ->required();
  optimize->add_option("--loss-db", loss_db, "Total link loss in dB")
      ->required();
  optimize->add_option("--config", config_path, "Configuration file");

  auto* validate = app.add_subcommand(
      "mc-validate", "Compare analytic click statistics with simulation");
  validate->add_option("--protocol", protocol_name, "Protocol identifier")
      ->required();
  validate->add_option("--loss-db", loss_db, "Total link loss in dB")
      ->required();
  validate->add_option("--n", n_trials, "Number of simulated trials")
      ->check(CLI::PositiveNumber);
  validate->add_option("--seed", seed, "Generator seed");
  validate->add_option("--config", config_path, "Configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const keyrate::SweepConfig cfg = load_config(config_path);

    if (*point) {
      const keyrate::Protocol protocol = require_protocol(protocol_name);
      keyrate::SweepConfig one = cfg;
      one.loss_start_db = one.loss_stop_db = loss_db;
      one.protocols = {protocol};
      const keyrate::SweepResult result = keyrate::run_sweep(one);
      with_output(out_path,
                  [&](std::ostream& os) { keyrate::emit_csv(result, os); });
    } else if (*sweep) {
      const keyrate::SweepResult result = keyrate::run_sweep(cfg);
      with_output(out_path,
                  [&](std::ostream& os) { keyrate::emit_csv(result, os); });
    } else if (*optimize) {
      if (require_protocol(protocol_name) != keyrate::Protocol::kPpmPkd) {
        throw keyrate::ConfigError(0, "--protocol",
                                   "only ppm_pkd has a free mean photon number");
      }
      const keyrate::PpmOptimum opt = keyrate::optimize_ppm(cfg, loss_db);
      std::cout << "protocol = ppm_pkd\n"
                << "loss_db = " << keyrate::shortest_repr(loss_db) << '\n'
                << "zeta_opt = " << keyrate::shortest_repr(opt.zeta) << '\n'
                << "mu_opt = " << keyrate::shortest_repr(opt.mu) << '\n'
                << "qber = " << keyrate::shortest_repr(opt.point.qber) << '\n'
                << "bits_per_pulse = "
                << keyrate::shortest_repr(opt.point.bits_per_pulse) << '\n'
                << "bits_per_second = "
                << keyrate::shortest_repr(opt.point.bits_per_second) << '\n';
    } else if (*validate) {
      const keyrate::Protocol protocol = require_protocol(protocol_name);
      const keyrate::ValidationReport report =
          keyrate::mc_validate(cfg, protocol, loss_db, n_trials, seed);
      std::cout << keyrate::format_report(report);
      if (!report.passed()) return kExitEvaluation;
    }
  } catch (const keyrate::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const keyrate::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return kExitEvaluation;
  }
  return kExitOk;
}
