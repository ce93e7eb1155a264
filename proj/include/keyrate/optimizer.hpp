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

// Bounded 1-D maximisation of a key-rate objective over mean photon number.
//
// Rate curves are frequently flat zero on part of the interval (past the
// privacy-amplification cutoff), so a pure golden-section search can stall on
// a plateau. The search therefore samples a uniform coarse grid first, brackets
// the best sample by its neighbours, and refines inside that bracket.
//
// Ties resolve towards the smaller argument: between equal rates, fewer
// photons per pulse is preferred.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <string>

#include "keyrate/error.hpp"

namespace keyrate {

struct OptimizeSpec {
  double lower = 0.0;
  double upper = 2.0;
  double tolerance = 1e-6;  // absolute, on the argument
  int max_evals = 256;

  friend bool operator==(const OptimizeSpec&, const OptimizeSpec&) = default;
};

struct OptimizeResult {
  double argmax = 0.0;
  double value = 0.0;
  int evals = 0;
};

inline void Validate(const OptimizeSpec& spec) {
  if (!(spec.lower < spec.upper) || !std::isfinite(spec.lower) ||
      !std::isfinite(spec.upper)) {
    throw DomainError("optimizer bracket requires finite lower < upper");
  }
  if (!(spec.tolerance > 0.0)) {
    throw DomainError("optimizer tolerance must be positive");
  }
  if (spec.max_evals < 16) {
    throw DomainError("optimizer max_evals must be at least 16");
  }
}

namespace detail {

inline std::string probe_label(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

// The coarse grid uses 64 samples when max_evals allows at least twice that,
// otherwise half the budget; the remainder goes to refinement.
template <std::invocable<double> Objective>
OptimizeResult optimize_mu(Objective&& rate_fn, const OptimizeSpec& spec) {
  Validate(spec);
  OptimizeResult best;
  bool have_best = false;
  int evals = 0;

  auto probe = [&](double x) {
    const double v = static_cast<double>(rate_fn(x));
    ++evals;
    if (!std::isfinite(v)) {
      throw EvaluationError("objective is not finite at mu = " +
                            detail::probe_label(x));
    }
    if (!have_best || v > best.value ||
        (v == best.value && x < best.argmax)) {
      best.argmax = x;
      best.value = v;
      have_best = true;
    }
    return v;
  };

  const int grid = spec.max_evals >= 128 ? 64 : spec.max_evals / 2;
  const double span = spec.upper - spec.lower;
  int best_index = 0;
  double best_grid = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = i == grid - 1
                         ? spec.upper
                         : spec.lower + span * static_cast<double>(i) /
                                            static_cast<double>(grid - 1);
    const double v = probe(x);
    if (i == 0 || v > best_grid) {
      best_grid = v;
      best_index = i;
    }
  }

  auto grid_point = [&](int i) {
    i = std::clamp(i, 0, grid - 1);
    return i == grid - 1 ? spec.upper
                         : spec.lower + span * static_cast<double>(i) /
                                            static_cast<double>(grid - 1);
  };
  double a = grid_point(best_index - 1);
  double b = grid_point(best_index + 1);

  // Golden-section refinement on [a, b]; equal probes keep the lower half.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  if (b - a > spec.tolerance && evals + 2 <= spec.max_evals) {
    double fc = probe(c);
    double fd = probe(d);
    while (b - a > spec.tolerance && evals < spec.max_evals) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = probe(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = probe(d);
      }
    }
  }

  best.evals = evals;
  return best;
}

}  // namespace keyrate
