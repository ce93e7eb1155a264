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

// Flat `key = value` configuration text. One key per line, `#` starts a
// comment, every key optional, unknown or repeated keys rejected.

#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "keyrate/error.hpp"
#include "keyrate/format.hpp"
#include "keyrate/sweep.hpp"

namespace keyrate {

namespace detail {

struct NumericKey {
  std::string_view name;
  std::function<double&(SweepConfig&)> field;
};

inline const std::vector<NumericKey>& numeric_keys() {
  static const std::vector<NumericKey> keys = {
      {"loss_start_db", [](SweepConfig& c) -> double& { return c.loss_start_db; }},
      {"loss_stop_db", [](SweepConfig& c) -> double& { return c.loss_stop_db; }},
      {"loss_step_db", [](SweepConfig& c) -> double& { return c.loss_step_db; }},
      {"mu_signal", [](SweepConfig& c) -> double& { return c.wcp.mu_signal; }},
      {"mu_decoy", [](SweepConfig& c) -> double& { return c.wcp.mu_decoy; }},
      {"p_signal", [](SweepConfig& c) -> double& { return c.wcp.p_signal; }},
      {"p_decoy", [](SweepConfig& c) -> double& { return c.wcp.p_decoy; }},
      {"p_vacuum", [](SweepConfig& c) -> double& { return c.wcp.p_vacuum; }},
      {"misalignment_error",
       [](SweepConfig& c) -> double& { return c.wcp.misalignment_error; }},
      {"pair_rate", [](SweepConfig& c) -> double& { return c.pair.pair_rate; }},
      {"herald_efficiency",
       [](SweepConfig& c) -> double& { return c.pair.herald_efficiency; }},
      {"intrinsic_error",
       [](SweepConfig& c) -> double& { return c.pair.intrinsic_error; }},
      {"tau_s", [](SweepConfig& c) -> double& { return c.channel.gate_window; }},
      {"dark_space",
       [](SweepConfig& c) -> double& { return c.noise_space.dark_rate; }},
      {"dark_ground",
       [](SweepConfig& c) -> double& { return c.noise_ground.dark_rate; }},
      {"background_ground",
       [](SweepConfig& c) -> double& { return c.noise_ground.background_rate; }},
      {"detector_efficiency",
       [](SweepConfig& c) -> double& { return c.channel.detector_efficiency; }},
      {"f_ec", [](SweepConfig& c) -> double& { return c.ec.efficiency; }},
      {"source_rate",
       [](SweepConfig& c) -> double& { return c.channel.source_rate; }},
      {"opt_lower", [](SweepConfig& c) -> double& { return c.optimize.lower; }},
      {"opt_upper", [](SweepConfig& c) -> double& { return c.optimize.upper; }},
      {"opt_tol",
       [](SweepConfig& c) -> double& { return c.optimize.tolerance; }},
  };
  return keys;
}

inline std::vector<Protocol> parse_protocol_list(std::size_t line,
                                                 std::string_view value) {
  std::vector<Protocol> out;
  while (true) {
    const auto comma = value.find(',');
    const std::string_view item = trim(value.substr(0, comma));
    const auto p = protocol_from_name(item);
    if (!p) {
      throw ConfigError(line, "protocols",
                        "unknown protocol '" + std::string(item) + "'");
    }
    if (std::find(out.begin(), out.end(), *p) != out.end()) {
      throw ConfigError(line, "protocols",
                        "protocol listed twice: " + std::string(item));
    }
    out.push_back(*p);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

inline SweepConfig parse_config(std::string_view text) {
  SweepConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "", "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "missing key");
    if (value.empty()) {
      throw ConfigError(line_no, std::string(key), "missing value");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(line_no, std::string(key), "duplicate key");
    }

    if (key == "protocols") {
      cfg.protocols = detail::parse_protocol_list(line_no, value);
      continue;
    }
    if (key == "pa_model") {
      const auto model = pa_model_from_name(value);
      if (!model) {
        throw ConfigError(line_no, "pa_model",
                          "unknown model '" + std::string(value) + "'");
      }
      cfg.pa_model = *model;
      continue;
    }
    if (key == "opt_max_evals") {
      const auto v = parse_double(value);
      if (!v || *v != std::floor(*v) || *v < 0 || *v > 1e9) {
        throw ConfigError(line_no, "opt_max_evals", "expected an integer");
      }
      cfg.optimize.max_evals = static_cast<int>(*v);
      continue;
    }
    bool known = false;
    for (const auto& k : detail::numeric_keys()) {
      if (k.name != key) continue;
      const auto v = parse_double(value);
      if (!v) {
        throw ConfigError(line_no, std::string(key),
                          "not a number: '" + std::string(value) + "'");
      }
      k.field(cfg) = *v;
      known = true;
      break;
    }
    if (!known) throw ConfigError(line_no, std::string(key), "unknown key");
  }
  validate_config(cfg);
  return cfg;
}

// Every key, in a fixed order, such that parse_config(emit_config(c)) == c.
inline std::string emit_config(const SweepConfig& cfg) {
  SweepConfig copy = cfg;
  std::ostringstream out;
  for (const auto& k : detail::numeric_keys()) {
    out << k.name << " = " << shortest_repr(k.field(copy)) << '\n';
  }
  out << "opt_max_evals = " << cfg.optimize.max_evals << '\n';
  out << "pa_model = " << pa_model_name(cfg.pa_model) << '\n';
  out << "protocols = ";
  for (std::size_t i = 0; i < cfg.protocols.size(); ++i) {
    if (i) out << ',';
    out << protocol_name(cfg.protocols[i]);
  }
  out << '\n';
  return out.str();
}

}  // namespace keyrate
