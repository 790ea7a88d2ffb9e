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

// User coverage under patience: a user of type u reads the first theta_u
// items of the list and is covered if any of them satisfies them; item m
// satisfies type u independently with probability p_sat[m][u]. The
// objective is the probability that a random user is covered,
//
//   f(S) = sum_u pi_u * (1 - prod_{j <= min(theta_u, |S|)} (1 - p_sat[s_j][u])).

#ifndef ORDSUB_COVERAGE_HPP_
#define ORDSUB_COVERAGE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ordsub/errors.hpp"
#include "ordsub/sequence.hpp"

namespace ordsub {

struct CoverageInstance {
  std::vector<double> pi;                   // per user type
  std::vector<std::vector<double>> p_sat;   // movies x user types
  std::vector<std::uint32_t> theta;         // per user type, >= 1

  std::size_t num_movies() const { return p_sat.size(); }
  std::size_t num_types() const { return pi.size(); }

  void validate() const {
    const std::size_t types = pi.size();
    if (types == 0) throw InputError("coverage instance has no user types");
    if (theta.size() != types)
      throw InputError("theta has " + std::to_string(theta.size()) +
                       " entries, expected " + std::to_string(types));
    double total = 0.0;
    for (double x : pi) {
      if (!(x >= 0.0)) throw InputError("pi entries must be >= 0");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw InputError("pi must sum to 1, got " + std::to_string(total));
    for (auto t : theta)
      if (t < 1) throw InputError("patience values must be >= 1");
    for (std::size_t m = 0; m < p_sat.size(); ++m) {
      if (p_sat[m].size() != types)
        throw InputError("p_sat row " + std::to_string(m) + " has " +
                         std::to_string(p_sat[m].size()) +
                         " columns, expected " + std::to_string(types));
      for (double p : p_sat[m])
        if (!(p >= 0.0 && p <= 1.0))
          throw InputError("p_sat entries must lie in [0, 1]");
    }
  }
};

/// Probability that a random user finds a satisfying item within patience.
inline double coverage_value(const CoverageInstance& inst, SequenceView seq) {
  for (auto e : seq)
    if (e.index >= inst.num_movies())
      throw InputError("movie index " + std::to_string(e.index) +
                       " out of range");
  double total = 0.0;
  for (std::size_t u = 0; u < inst.num_types(); ++u) {
    const std::size_t seen = std::min<std::size_t>(inst.theta[u], seq.size());
    double miss = 1.0;
    for (std::size_t j = 0; j < seen; ++j) miss *= 1.0 - inst.p_sat[seq[j].index][u];
    total += inst.pi[u] * (1.0 - miss);
  }
  return total;
}

/// SequenceObjective over the instance's movies; validates on construction.
class CoverageObjective {
 public:
  explicit CoverageObjective(CoverageInstance inst) : inst_(std::move(inst)) {
    inst_.validate();
  }

  std::size_t ground_size() const { return inst_.num_movies(); }
  std::optional<std::size_t> max_length() const { return std::nullopt; }
  double operator()(SequenceView seq) const { return coverage_value(inst_, seq); }

  const CoverageInstance& instance() const { return inst_; }

 private:
  CoverageInstance inst_;
};

inline SequenceFn make_coverage_fn(CoverageInstance inst) {
  return SequenceFn("coverage", CoverageObjective(std::move(inst)));
}

}  // namespace ordsub

#endif  // ORDSUB_COVERAGE_HPP_
