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

// Greedy maximization, the exhaustive optimum, and their ratio.
//
// Greedy appends, at every step, the admissible element whose extension has
// the largest value; ties go to the lowest index. On nonnegative
// ordered-submodular objectives the result is within a factor 2 of the
// optimum, and the factor is attained on the patience-coverage instances in
// instances.hpp.
//
// The oracle enumerates every ordered length-k sequence in lexicographic
// order of indices and keeps the first maximizer, so ties resolve to the
// lexicographically smallest sequence. With threads > 1 the first-position
// choices are split across workers and the per-worker winners are reduced
// on (value, sequence), which gives the same answer as a serial run.

#ifndef ORDSUB_SOLVER_HPP_
#define ORDSUB_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ordsub/errors.hpp"
#include "ordsub/sequence.hpp"

namespace ordsub {

inline constexpr std::uint64_t kDefaultEvaluationBudget = 10'000'000;

struct SolveOptions {
  bool allow_repeats = false;
  /// Worker threads for the oracle; greedy is always sequential.
  unsigned threads = 1;
  /// Maximum number of objective evaluations the oracle may perform.
  std::uint64_t budget = kDefaultEvaluationBudget;
};

struct SolveResult {
  Sequence sequence;
  double value = 0.0;
  std::optional<double> optimum_value;
  std::optional<double> ratio;
  std::uint64_t evaluations = 0;
};

namespace detail {

template <SequenceObjective F>
double finite_value(const F& f, SequenceView seq) {
  const double v = f(seq);
  if (!std::isfinite(v)) {
    throw ObjectiveError("objective returned a non-finite value on " +
                         to_string(seq));
  }
  return v;
}

// Recomputes the value of the returned sequence so a result never carries a
// value that disagrees with its sequence.
template <SequenceObjective F>
SolveResult make_result(const F& f, Sequence seq, double value,
                        std::uint64_t evaluations) {
  const double check = finite_value(f, seq);
  if (check != value) {
    throw ObjectiveError("objective is not deterministic on " +
                         to_string(seq));
  }
  return SolveResult{std::move(seq), value, std::nullopt, std::nullopt,
                     evaluations};
}

template <SequenceObjective F>
void validate_length(const F& f, std::size_t k, bool allow_repeats) {
  const std::size_t n = f.ground_size();
  if (k < 1) throw InputError("sequence length k must be at least 1");
  if (n == 0) throw InputError("ground set is empty");
  if (!allow_repeats && k > n) {
    throw InputError("k = " + std::to_string(k) +
                     " exceeds ground set size " + std::to_string(n) +
                     " with repetition disallowed");
  }
  if (auto m = f.max_length(); m && k > *m) {
    throw InputError("k = " + std::to_string(k) +
                     " exceeds the objective's maximum length " +
                     std::to_string(*m));
  }
}

inline bool better(double value, SequenceView seq, double best_value,
                   SequenceView best_seq) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(seq.begin(), seq.end(), best_seq.begin(),
                                      best_seq.end());
}

}  // namespace detail

/// Number of ordered length-k sequences over n elements: n^k with repeats,
/// n!/(n-k)! without. Saturates at uint64 max.
inline std::uint64_t count_sequences(std::size_t n, std::size_t k,
                                     bool allow_repeats) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (!allow_repeats && k > n) return 0;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t factor = allow_repeats ? n : n - i;
    if (factor != 0 && total > kMax / factor) return kMax;
    total *= factor;
  }
  return total;
}

/// Greedy appending with lowest-index tie-breaking. Performs k*n evaluations
/// with repeats and k*n - k(k-1)/2 without.
template <SequenceObjective F>
SolveResult greedy_maximize(const F& f, std::size_t k,
                            const SolveOptions& options = {}) {
  detail::validate_length(f, k, options.allow_repeats);
  const std::size_t n = f.ground_size();
  Sequence seq;
  seq.reserve(k);
  std::vector<bool> used(n, false);
  std::uint64_t evaluations = 0;
  double value = 0.0;
  for (std::size_t step = 0; step < k; ++step) {
    std::optional<std::uint32_t> best;
    double best_value = 0.0;
    seq.emplace_back();
    for (std::uint32_t x = 0; x < n; ++x) {
      if (!options.allow_repeats && used[x]) continue;
      seq.back() = ElementId(x);
      const double v = detail::finite_value(f, seq);
      ++evaluations;
      if (!best || v > best_value) {
        best = x;
        best_value = v;
      }
    }
    seq.back() = ElementId(*best);
    used[*best] = true;
    value = best_value;
  }
  return detail::make_result(f, std::move(seq), value, evaluations);
}

/// Exact maximizer over all ordered length-k sequences; throws ResourceError
/// when the enumeration exceeds options.budget.
template <SequenceObjective F>
SolveResult brute_force_optimum(const F& f, std::size_t k,
                                const SolveOptions& options = {}) {
  detail::validate_length(f, k, options.allow_repeats);
  const std::size_t n = f.ground_size();
  const std::uint64_t required = count_sequences(n, k, options.allow_repeats);
  if (required > options.budget) {
    throw ResourceError("exhaustive search needs " + std::to_string(required) +
                        " evaluations, budget is " +
                        std::to_string(options.budget));
  }

  struct Best {
    Sequence seq;
    double value = 0.0;
    bool found = false;
    std::uint64_t evaluations = 0;
  };

  // Enumerates, in lexicographic order, every sequence whose first element
  // is `first`.
  auto search_from = [&](std::uint32_t first, Best& best) {
    Sequence seq(k);
    std::vector<bool> used(n, false);
    seq[0] = ElementId(first);
    used[first] = true;
    auto recurse = [&](auto& self, std::size_t pos) -> void {
      if (pos == k) {
        const double v = detail::finite_value(f, seq);
        ++best.evaluations;
        if (!best.found || v > best.value) {
          best.seq = seq;
          best.value = v;
          best.found = true;
        }
        return;
      }
      for (std::uint32_t x = 0; x < n; ++x) {
        if (!options.allow_repeats && used[x]) continue;
        seq[pos] = ElementId(x);
        used[x] = true;
        self(self, pos + 1);
        used[x] = false;
      }
    };
    recurse(recurse, 1);
  };

  const unsigned workers = std::max(
      1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
  std::vector<Best> partial(n);
  if (workers == 1) {
    for (std::uint32_t first = 0; first < n; ++first)
      search_from(first, partial[first]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint32_t first = w; first < n; first += workers)
            search_from(first, partial[first]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  Best winner;
  std::uint64_t evaluations = 0;
  for (auto& b : partial) {
    evaluations += b.evaluations;
    if (!b.found) continue;
    if (!winner.found ||
        detail::better(b.value, b.seq, winner.value, winner.seq)) {
      winner = b;
    }
  }
  return detail::make_result(f, std::move(winner.seq), winner.value,
                             evaluations);
}

struct RatioOutcome {
  SolveResult greedy;
  SolveResult optimum;
  /// greedy / optimum; empty when the optimum is not positive, where a
  /// multiplicative ratio carries no meaning.
  std::optional<double> ratio;

  bool defined() const { return ratio.has_value(); }
};

/// Runs greedy and the oracle and relates them. The greedy result carries
/// the optimum and the ratio.
template <SequenceObjective F>
RatioOutcome approximation_ratio(const F& f, std::size_t k,
                                 const SolveOptions& options = {}) {
  RatioOutcome out{greedy_maximize(f, k, options),
                   brute_force_optimum(f, k, options), std::nullopt};
  out.greedy.optimum_value = out.optimum.value;
  if (out.optimum.value > 0.0) {
    out.ratio = out.greedy.value / out.optimum.value;
    out.greedy.ratio = out.ratio;
  }
  return out;
}

}  // namespace ordsub

#endif  // ORDSUB_SOLVER_HPP_
