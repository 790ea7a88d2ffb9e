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

#ifndef ORDSUB_CHECKER_HPP_
#define ORDSUB_CHECKER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ordsub/errors.hpp"
#include "ordsub/sequence.hpp"
#include "ordsub/solver.hpp"

namespace ordsub {

struct CheckOptions {
  /// Largest |A| + 1 + |B| enumerated; clipped to the objective's
  /// max_length().
  std::size_t max_total_len = 3;
  double tolerance = 1e-9;
  bool allow_repeats = false;
  /// Maximum number of (A, s, s_bar, B) tuples.
  std::uint64_t budget = kDefaultEvaluationBudget;
};

/// One failing instance of f(A||s) - f(A) >= f(A||s||B) - f(A||s_bar||B).
struct Violation {
  Sequence prefix;  // A
  ElementId s;
  ElementId s_bar;
  Sequence suffix;  // B
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SubmodularityReport {
  bool holds = true;
  std::vector<Violation> violations;
  std::uint64_t checked = 0;
};

/// Number of tuples check_ordered_submodularity would test.
inline std::uint64_t count_check_tuples(std::size_t n, std::size_t max_total_len,
                                        bool allow_repeats) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (std::size_t outer = 0; outer + 1 <= max_total_len; ++outer) {
    // outer = |A| + |B|; there are outer + 1 ways to split it.
    std::uint64_t seqs = count_sequences(n, outer, allow_repeats);
    const std::uint64_t free = allow_repeats ? n : (n > outer ? n - outer : 0);
    const std::uint64_t pairs = free * free;
    if (seqs == kMax || (pairs && seqs > kMax / pairs)) return kMax;
    seqs *= pairs;
    if (seqs > kMax / (outer + 1)) return kMax;
    seqs *= outer + 1;
    if (total > kMax - seqs) return kMax;
    total += seqs;
  }
  return total;
}

/// Exhaustively tests the ordered-submodularity inequality for every prefix
/// A, suffix B and elements s, s_bar with |A| + 1 + |B| <= max_total_len.
/// s == s_bar is included; it reduces to f(A||s) >= f(A). Without repeats,
/// only tuples where A||s||B and A||s_bar||B are both repetition-free are
/// tested.
template <SequenceObjective F>
SubmodularityReport check_ordered_submodularity(const F& f,
                                                const CheckOptions& options) {
  const std::size_t n = f.ground_size();
  std::size_t len = options.max_total_len;
  if (auto m = f.max_length()) len = std::min(len, *m);
  const bool repeats = options.allow_repeats;

  const std::uint64_t required = count_check_tuples(n, len, repeats);
  if (required > options.budget) {
    throw ResourceError("ordered-submodularity check needs " +
                        std::to_string(required) + " tuples, budget is " +
                        std::to_string(options.budget));
  }

  SubmodularityReport report;
  if (len == 0 || n == 0) return report;

  std::vector<int> in_use(n, 0);
  Sequence work;
  std::vector<double> with_prefix(n), with_both(n);

  // Calls visit() for every admissible sequence of length `target` appended
  // after the current contents of `work`.
  auto for_each_tail = [&](auto& self, std::size_t target, auto&& visit) -> void {
    if (target == 0) {
      visit();
      return;
    }
    for (std::uint32_t x = 0; x < n; ++x) {
      if (!repeats && in_use[x]) continue;
      work.emplace_back(x);
      ++in_use[x];
      self(self, target - 1, visit);
      --in_use[x];
      work.pop_back();
    }
  };

  for (std::size_t a = 0; a < len; ++a) {
    for_each_tail(for_each_tail, a, [&] {
      const Sequence prefix = work;
      const double f_prefix = detail::finite_value(f, prefix);
      Sequence probe = prefix;
      probe.emplace_back();
      for (std::uint32_t x = 0; x < n; ++x) {
        if (!repeats && in_use[x]) continue;
        probe.back() = ElementId(x);
        with_prefix[x] = detail::finite_value(f, probe);
      }
      for (std::size_t b = 0; a + 1 + b <= len; ++b) {
        // Build B into `work` too, so in_use covers A and B together.
        for_each_tail(for_each_tail, b, [&] {
          const SequenceView suffix(work.begin() + a, work.end());
          Sequence full = prefix;
          full.emplace_back();
          full.insert(full.end(), suffix.begin(), suffix.end());
          for (std::uint32_t x = 0; x < n; ++x) {
            if (!repeats && in_use[x]) continue;
            full[a] = ElementId(x);
            with_both[x] = detail::finite_value(f, full);
          }
          for (std::uint32_t s = 0; s < n; ++s) {
            if (!repeats && in_use[s]) continue;
            const double lhs = with_prefix[s] - f_prefix;
            for (std::uint32_t sb = 0; sb < n; ++sb) {
              if (!repeats && in_use[sb]) continue;
              const double rhs = with_both[s] - with_both[sb];
              ++report.checked;
              if (lhs < rhs - options.tolerance) {
                report.violations.push_back(
                    Violation{prefix, ElementId(s), ElementId(sb),
                              Sequence(suffix.begin(), suffix.end()), lhs,
                              rhs});
              }
            }
          }
        });
      }
    });
  }
  report.holds = report.violations.empty();
  return report;
}

}  // namespace ordsub

#endif  // ORDSUB_CHECKER_HPP_
