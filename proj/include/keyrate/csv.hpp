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

// Plot-ready CSV for sweep results:
//   protocol,loss_db,mu,qber,bits_per_pulse,bits_per_second,clamped
// Numbers are shortest round-trip decimals, mu is empty when the source has
// no mean photon number, clamped is 0 or 1.

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "keyrate/error.hpp"
#include "keyrate/format.hpp"
#include "keyrate/rate_point.hpp"
#include "keyrate/sweep.hpp"

namespace keyrate {

inline constexpr std::string_view kCsvHeader =
    "protocol,loss_db,mu,qber,bits_per_pulse,bits_per_second,clamped";

inline std::string csv_row(const RatePoint& p) {
  std::string row(protocol_name(p.protocol));
  row += ',';
  row += shortest_repr(p.loss_db);
  row += ',';
  if (p.mu) row += shortest_repr(*p.mu);
  row += ',';
  row += shortest_repr(p.qber);
  row += ',';
  row += shortest_repr(p.bits_per_pulse);
  row += ',';
  row += shortest_repr(p.bits_per_second);
  row += ',';
  row += p.clamped ? '1' : '0';
  return row;
}

inline void emit_csv(const SweepResult& result, std::ostream& sink) {
  std::size_t written = 0;
  auto put = [&](std::string_view line) {
    sink << line << '\n';
    if (!sink) throw IoError("failed writing CSV", written);
    written += line.size() + 1;
  };
  put(kCsvHeader);
  for (const RatePoint& p : result.points) put(csv_row(p));
  sink.flush();
  if (!sink) throw IoError("failed flushing CSV", written);
}

inline std::vector<RatePoint> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw ConfigError(1, "", "missing CSV header");
  }
  std::vector<RatePoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 7) throw ConfigError(line_no, "", "expected 7 fields");
    auto number = [&](std::string_view cell, const char* name) {
      const auto v = parse_double(cell);
      if (!v) throw ConfigError(line_no, name, "not a number");
      return *v;
    };
    const auto protocol = protocol_from_name(cells[0]);
    if (!protocol) throw ConfigError(line_no, "protocol", "unknown protocol");
    RatePoint p;
    p.protocol = *protocol;
    p.loss_db = number(cells[1], "loss_db");
    if (!cells[2].empty()) p.mu = number(cells[2], "mu");
    p.qber = number(cells[3], "qber");
    p.bits_per_pulse = number(cells[4], "bits_per_pulse");
    p.bits_per_second = number(cells[5], "bits_per_second");
    if (cells[6] != "0" && cells[6] != "1") {
      throw ConfigError(line_no, "clamped", "expected 0 or 1");
    }
    p.clamped = cells[6] == "1";
    points.push_back(p);
  }
  return points;
}

}  // namespace keyrate
