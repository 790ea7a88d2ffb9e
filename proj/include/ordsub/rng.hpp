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

#ifndef ORDSUB_RNG_HPP_
#define ORDSUB_RNG_HPP_

#include <cstdint>
#include <random>

namespace ordsub {

/// Seeded source for the instance generators, "mt19937_64/v1".
///
/// std::mt19937_64 is fully specified by the standard; the conversions below
/// are done by hand because the standard distributions are not. Anything
/// reimplementing the same engine and conversions reproduces the instances
/// bit for bit:
///   uniform()      = ((x >> 11) + 0.5) * 2^-53, in the open interval (0, 1)
///   integer(a, b)  = a + min(floor(uniform() * (b - a + 1)), b - a)
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    auto offset = static_cast<std::uint64_t>(uniform() * static_cast<double>(span));
    if (offset >= span) offset = span - 1;
    return lo + static_cast<std::int64_t>(offset);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordsub

#endif  // ORDSUB_RNG_HPP_
