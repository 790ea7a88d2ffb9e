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

// Building ordered-submodular sequence functions out of simpler pieces:
// nonnegative linear combinations, a monotone submodular set function cut
// off after the first t positions, and rank-weighted marginal gains of a set
// function under decreasing weights.

#ifndef ORDSUB_COMPOSE_HPP_
#define ORDSUB_COMPOSE_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordsub/errors.hpp"
#include "ordsub/sequence.hpp"

namespace ordsub {

/// Weighted coverage h(S) = sum of weights of universe points covered by
/// some element of S. Monotone and submodular; order and multiplicity of S
/// are irrelevant.
class WeightedCoverageSetFn {
 public:
  WeightedCoverageSetFn(std::vector<std::vector<std::size_t>> covers,
                        std::vector<double> point_weights)
      : covers_(std::move(covers)), point_weights_(std::move(point_weights)) {
    for (double w : point_weights_)
      if (!(w >= 0.0)) throw InputError("coverage point weights must be >= 0");
    for (const auto& c : covers_)
      for (auto p : c)
        if (p >= point_weights_.size())
          throw InputError("covered point index out of range");
  }

  std::size_t ground_size() const { return covers_.size(); }

  double operator()(SequenceView items) const {
    std::vector<bool> hit(point_weights_.size(), false);
    double total = 0.0;
    for (auto e : items) {
      for (auto p : covers_[e.index]) {
        if (!hit[p]) {
          hit[p] = true;
          total += point_weights_[p];
        }
      }
    }
    return total;
  }

 private:
  std::vector<std::vector<std::size_t>> covers_;
  std::vector<double> point_weights_;
};

/// alpha * f + beta * g, with alpha, beta >= 0.
inline SequenceFn linear_combination(const SequenceFn& f, const SequenceFn& g,
                                     double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0))
    throw InputError("linear combination coefficients must be >= 0");
  if (f.ground_size() != g.ground_size())
    throw InputError("linear combination of objectives over different ground sets");
  std::optional<std::size_t> len = f.max_length();
  if (auto m = g.max_length()) len = len ? std::min(*len, *m) : *m;
  return SequenceFn(
      "linear(" + f.name() + "," + g.name() + ")", f.ground_size(),
      [f, g, alpha, beta](SequenceView s) { return alpha * f(s) + beta * g(s); },
      len);
}

/// f(S) = h(first min(t, |S|) elements of S).
template <typename SetFn>
SequenceFn thresholded(SetFn h, std::size_t t) {
  const std::size_t n = h.ground_size();
  return SequenceFn("thresholded", n, [h = std::move(h), t](SequenceView s) {
    return h(s.first(std::min(t, s.size())));
  });
}

/// f(S) = sum_i g_i * (h(S_i) - h(S_{i-1})) for weakly decreasing g >= 0.
/// Accepts sequences up to |weights| long.
template <typename SetFn>
SequenceFn rank_weighted(SetFn h, std::vector<double> weights) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw InputError("rank weights must be >= 0");
    if (i && weights[i] > weights[i - 1])
      throw InputError("rank weights must be weakly decreasing");
  }
  const std::size_t n = h.ground_size();
  const std::size_t len = weights.size();
  return SequenceFn(
      "rank_weighted", n,
      [h = std::move(h), w = std::move(weights)](SequenceView s) {
        double total = 0.0;
        double previous = h(s.first(0));
        for (std::size_t i = 0; i < s.size(); ++i) {
          const double current = h(s.first(i + 1));
          total += w[i] * (current - previous);
          previous = current;
        }
        return total;
      },
      len);
}

}  // namespace ordsub

#endif  // ORDSUB_COMPOSE_HPP_
