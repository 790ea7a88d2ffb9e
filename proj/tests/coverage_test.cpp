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

#include <algorithm>

#include <gtest/gtest.h>

#include "ordsub/checker.hpp"
#include "ordsub/coverage.hpp"
#include "ordsub/instances.hpp"
#include "support.hpp"

namespace ordsub {
namespace {

TEST(CoverageTest, TightInstanceValues) {
  const CoverageInstance inst = tightness_instance(2, 0.0);
  EXPECT_DOUBLE_EQ(coverage_value(inst, make_sequence({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(coverage_value(inst, make_sequence({0, 1})), 1.0);
  EXPECT_EQ(coverage_value(inst, Sequence{}), 0.0);
  EXPECT_DOUBLE_EQ(make_coverage_fn(inst)(make_sequence({0})), 0.5);
}

TEST(CoverageTest, RepeatedMovieMultipliesAgain) {
  const CoverageInstance inst{{1.0}, {{0.5}}, {2}};
  const double v = coverage_value(inst, make_sequence({0, 0}));
  EXPECT_DOUBLE_EQ(v, testing::coverage_by_enumeration(inst, make_sequence({0, 0})));
  EXPECT_DOUBLE_EQ(v, 0.75);
}

TEST(CoverageTest, AllZeroSatisfaction) {
  CoverageInstance inst = random_coverage(5, 4, 3, 2);
  for (auto& row : inst.p_sat) std::fill(row.begin(), row.end(), 0.0);
  const SequenceFn fn = make_coverage_fn(inst);
  EXPECT_EQ(fn(make_sequence({0, 1, 2, 3})), 0.0);
  EXPECT_EQ(fn(make_sequence({3})), 0.0);
}

TEST(CoverageTest, MatchesOutcomeEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CoverageInstance inst = random_coverage(seed, 6, 4, 5);
    const Sequence s = make_sequence({5, 1, 3, 0, 2});
    for (std::size_t len = 0; len <= s.size(); ++len) {
      const SequenceView prefix(s.data(), len);
      EXPECT_NEAR(coverage_value(inst, prefix), testing::coverage_by_enumeration(inst, prefix), 1e-12);
    }
  }
}

TEST(CoverageTest, RandomInstancePassesChecker) {
  const SubmodularityReport r =
      check_ordered_submodularity(make_coverage_fn(random_coverage(7, 5, 4, 4)), {4});
  EXPECT_TRUE(r.holds);
}

TEST(CoverageTest, PrefixMonotoneAndBounded) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CoverageInstance inst = random_coverage(seed, 6, 4, 3);
    Rng rng(seed);
    Sequence s;
    double previous = coverage_value(inst, s);
    for (int step = 0; step < 6; ++step) {
      s.emplace_back(static_cast<std::uint32_t>(rng.integer(0, 5)));
      const double v = coverage_value(inst, s);
      EXPECT_GE(v, previous);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      previous = v;
    }
  }
}

TEST(CoverageTest, UniformPatienceMakesOrderIrrelevant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CoverageInstance inst = random_coverage(seed, 5, 3, 3);
    std::fill(inst.theta.begin(), inst.theta.end(), 4u);
    Sequence s = make_sequence({0, 2, 3, 4});
    const double base = coverage_value(inst, s);
    std::sort(s.begin(), s.end());
    do {
      EXPECT_NEAR(coverage_value(inst, s), base, 1e-15);
    } while (std::next_permutation(s.begin(), s.end()));
  }
}

TEST(CoverageTest, Validation) {
  EXPECT_THROW((CoverageInstance{{0.5, 0.4}, {{0.1, 0.1}}, {1, 1}}.validate()), InputError);
  EXPECT_THROW((CoverageInstance{{1.0}, {{0.1, 0.1}}, {1}}.validate()), InputError);
  EXPECT_THROW((CoverageInstance{{1.0}, {{0.1}}, {0}}.validate()), InputError);
  EXPECT_THROW((CoverageInstance{{1.0}, {{1.5}}, {1}}.validate()), InputError);
  EXPECT_THROW((CoverageInstance{{1.0}, {{0.5}}, {1, 2}}.validate()), InputError);
  EXPECT_THROW(make_coverage_fn(CoverageInstance{{0.7, 0.7}, {}, {1, 1}}), InputError);
  // A zero-probability type is allowed.
  EXPECT_NO_THROW((CoverageInstance{{1.0, 0.0}, {{0.5, 0.5}}, {1, 1}}.validate()));
  EXPECT_THROW(coverage_value(tightness_instance(2, 0.0), make_sequence({2})), InputError);
}

}  // namespace
}  // namespace ordsub
