// Copyright 2026 The ordsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only oracles and fixtures shared by the unit and acceptance suites.

#ifndef ORDSUB_TESTS_SUPPORT_HPP_
#define ORDSUB_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ordsub/calibration.hpp"
#include "ordsub/coverage.hpp"
#include "ordsub/rng.hpp"

namespace ordsub::testing {

/// Coverage probability by enumerating every satisfied/unsatisfied outcome
/// of the items a user sees; independent of the product formula.
inline double coverage_by_enumeration(const CoverageInstance& inst, SequenceView seq) {
  double total = 0.0;
  for (std::size_t u = 0; u < inst.num_types(); ++u) {
    const std::size_t seen = std::min<std::size_t>(inst.theta[u], seq.size());
    double covered = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << seen); ++mask) {
      double prob = 1.0;
      for (std::size_t j = 0; j < seen; ++j) {
        const double p = inst.p_sat[seq[j].index][u];
        prob *= (mask >> j) & 1 ? p : 1.0 - p;
      }
      if (mask != 0) covered += prob;
    }
    total += inst.pi[u] * covered;
  }
  return total;
}

/// Calls visit(q) for every vector with entries in {0, step, 2 step, ...}
/// and total at most 1 (up to rounding).
inline void for_each_grid_subdistribution(std::size_t dims, int steps,
                                          const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<int> units(dims, 0);
  std::vector<double> q(dims, 0.0);
  auto rec = [&](auto& self, std::size_t d, int left) -> void {
    if (d == dims) {
      for (std::size_t i = 0; i < dims; ++i) q[i] = units[i] / static_cast<double>(steps);
      visit(q);
      return;
    }
    for (int u = 0; u <= left; ++u) {
      units[d] = u;
      self(self, d + 1, left - u);
    }
  };
  rec(rec, 0, steps);
}

/// A random distribution whose entries are positive multiples of 1/steps.
inline std::vector<double> random_grid_distribution(Rng& rng, std::size_t dims, int steps) {
  std::vector<int> units(dims, 1);
  for (int left = steps - static_cast<int>(dims); left > 0; --left)
    ++units[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(dims) - 1))];
  std::vector<double> p(dims);
  for (std::size_t i = 0; i < dims; ++i) p[i] = units[i] / static_cast<double>(steps);
  return p;
}

/// Every overlap measure shipped with the library, by selector name.
inline std::vector<std::pair<std::string, OverlapSpec>> shipped_overlaps() {
  return {
      {"hellinger", hellinger_spec()},
      {"power:0.3", power_spec(0.3)},
      {"power:0.5", power_spec(0.5)},
      {"power:0.7", power_spec(0.7)},
      {"fdiv:hellinger", f_divergence_spec(squared_hellinger_generator(), 1.0)},
      {"fdiv:alpha:0.3", f_divergence_spec(alpha_generator(0.3), 1.0)},
      {"g1g2:power:0.5", concave_power_spec(0.5)},
      {"g1g2:power:0.3", concave_power_spec(0.3)},
  };
}

}  // namespace ordsub::testing

#endif  // ORDSUB_TESTS_SUPPORT_HPP_
