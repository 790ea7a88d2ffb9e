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

// Ground-set elements, sequences over them, and the type-erased sequence
// objective consumed by the solvers and the checker.

#ifndef ORDSUB_SEQUENCE_HPP_
#define ORDSUB_SEQUENCE_HPP_

#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordsub/errors.hpp"

namespace ordsub {

/// Index of an item in a ground set of size n; valid iff index < n.
struct ElementId {
  std::uint32_t index = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(ElementId, ElementId) = default;
};

using Sequence = std::vector<ElementId>;
using SequenceView = std::span<const ElementId>;

inline Sequence make_sequence(std::initializer_list<std::uint32_t> indices) {
  Sequence seq;
  seq.reserve(indices.size());
  for (auto i : indices) seq.emplace_back(i);
  return seq;
}

/// A || B.
inline Sequence concat(SequenceView a, SequenceView b) {
  Sequence out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline bool has_duplicates(SequenceView seq) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] == seq[j]) return true;
  return false;
}

/// Renders a sequence as "[0, 2, 1]" (0-based indices).
inline std::string to_string(SequenceView seq) {
  std::string out = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(seq[i].index);
  }
  out += "]";
  return out;
}

/// Anything the solvers can maximize: a deterministic, side-effect-free map
/// from sequences over {0..ground_size()-1} to reals. max_length() bounds
/// the sequence lengths the objective accepts (e.g. the number of rank
/// weights of a calibration objective).
template <typename F>
concept SequenceObjective = requires(const F& f, SequenceView s) {
  { f(s) } -> std::convertible_to<double>;
  { f.ground_size() } -> std::convertible_to<std::size_t>;
  { f.max_length() } -> std::convertible_to<std::optional<std::size_t>>;
};

/// Type-erased sequence objective. Immutable and cheap to copy; copies share
/// the underlying evaluator, which must be safe to call concurrently.
class SequenceFn {
 public:
  using Evaluator = std::function<double(SequenceView)>;

  SequenceFn(std::string name, std::size_t ground_size, Evaluator evaluator,
             std::optional<std::size_t> max_length = std::nullopt)
      : name_(std::move(name)),
        ground_size_(ground_size),
        max_length_(max_length),
        evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))) {}

  template <SequenceObjective F>
    requires(!std::same_as<std::remove_cvref_t<F>, SequenceFn>)
  SequenceFn(std::string name, F objective)
      : name_(std::move(name)),
        ground_size_(objective.ground_size()),
        max_length_(objective.max_length()),
        evaluator_(std::make_shared<const Evaluator>(
            [obj = std::move(objective)](SequenceView s) {
              return static_cast<double>(obj(s));
            })) {}

  const std::string& name() const { return name_; }
  std::size_t ground_size() const { return ground_size_; }
  std::optional<std::size_t> max_length() const { return max_length_; }

  /// Unchecked evaluation; callers guarantee valid indices and lengths.
  double operator()(SequenceView seq) const { return (*evaluator_)(seq); }

  /// Checked evaluation: validates indices and length, and rejects
  /// non-finite values.
  double evaluate(SequenceView seq) const {
    for (auto e : seq) {
      if (e.index >= ground_size_) {
        throw InputError("element index " + std::to_string(e.index) +
                         " out of range for ground set of size " +
                         std::to_string(ground_size_));
      }
    }
    if (max_length_ && seq.size() > *max_length_) {
      throw InputError("sequence of length " + std::to_string(seq.size()) +
                       " exceeds objective '" + name_ + "' maximum length " +
                       std::to_string(*max_length_));
    }
    const double v = (*this)(seq);
    if (!std::isfinite(v)) {
      throw ObjectiveError("objective '" + name_ +
                           "' returned a non-finite value on " +
                           to_string(seq));
    }
    return v;
  }

 private:
  std::string name_;
  std::size_t ground_size_;
  std::optional<std::size_t> max_length_;
  std::shared_ptr<const Evaluator> evaluator_;
};

static_assert(SequenceObjective<SequenceFn>);

/// f(S) = c for every S.
inline SequenceFn constant_fn(std::size_t ground_size, double c) {
  return SequenceFn("constant", ground_size, [c](SequenceView) { return c; });
}

}  // namespace ordsub

#endif  // ORDSUB_SEQUENCE_HPP_
