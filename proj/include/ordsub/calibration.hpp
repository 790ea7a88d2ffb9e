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

// Calibrated ranked lists.
//
// Each movie i has a genre distribution p(g|i) and the user has a target
// distribution p(g|u). A list S places movie S[r] at rank r with weight w_r,
// and induces the genre mass
//
//   q(g) = sum_r w_r * p(g | S[r]),
//
// a subdistribution while the list is shorter than the weight vector. The
// list is scored by an overlap measure G(p, q): nonnegative, and maximized
// exactly at q = p. Supported overlap measures:
//
//   hellinger      sum_g sqrt(p q)
//   power(a)       sum_g p^(1-a) q^a,                 0 < a < 1
//   f-divergence   d_star - sum_g f(p/q) q,           f convex, f(1) = 0
//   concave ratio  sum_g h(q) / h'(p),                h nondecreasing concave
//
// plus an optional modular quality bonus lambda * sum_{i in S} quality(i).

#ifndef ORDSUB_CALIBRATION_HPP_
#define ORDSUB_CALIBRATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ordsub/errors.hpp"
#include "ordsub/sequence.hpp"
#include "ordsub/solver.hpp"

namespace ordsub {

inline constexpr double kSumTolerance = 1e-9;

enum class WeightMode {
  kNormalized,  // rank weights sum to 1; required by the overlap objectives
  kRaw,         // arbitrary positive weights; only the KL heuristic uses this
};

inline const char* to_string(WeightMode mode) {
  return mode == WeightMode::kNormalized ? "normalized" : "raw";
}

namespace detail {

inline void check_distribution(std::span<const double> v, const std::string& what) {
  double total = 0.0;
  for (double x : v) {
    if (!(x >= 0.0)) throw InputError(what + " has a negative or NaN entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kSumTolerance)
    throw InputError(what + " must sum to 1, got " + std::to_string(total));
}

}  // namespace detail

struct CalibrationInstance {
  std::vector<std::vector<double>> genre_dist;  // movies x genres
  std::vector<double> target;                   // genres
  std::vector<double> rank_weights;             // weakly decreasing, > 0
  WeightMode weight_mode = WeightMode::kNormalized;
  std::optional<std::vector<double>> quality;   // per movie
  double quality_tradeoff = 0.0;                // lambda

  std::size_t num_movies() const { return genre_dist.size(); }
  std::size_t num_genres() const { return target.size(); }
  std::size_t max_length() const { return rank_weights.size(); }

  void validate() const {
    if (target.empty()) throw InputError("calibration target has no genres");
    detail::check_distribution(target, "target distribution");
    for (std::size_t i = 0; i < genre_dist.size(); ++i) {
      if (genre_dist[i].size() != target.size())
        throw InputError("genre_dist row " + std::to_string(i) + " has " +
                         std::to_string(genre_dist[i].size()) +
                         " genres, expected " + std::to_string(target.size()));
      detail::check_distribution(genre_dist[i],
                                 "genre_dist row " + std::to_string(i));
    }
    if (rank_weights.empty()) throw InputError("rank_weights is empty");
    double total = 0.0;
    for (std::size_t r = 0; r < rank_weights.size(); ++r) {
      if (!(rank_weights[r] > 0.0) || !std::isfinite(rank_weights[r]))
        throw InputError("rank weights must be positive and finite");
      if (r && rank_weights[r] > rank_weights[r - 1])
        throw InputError("rank weights must be weakly decreasing");
      total += rank_weights[r];
    }
    if (weight_mode == WeightMode::kNormalized &&
        std::abs(total - 1.0) > kSumTolerance)
      throw InputError("normalized rank weights must sum to 1, got " +
                       std::to_string(total));
    if (quality) {
      if (quality->size() != genre_dist.size())
        throw InputError("quality has " + std::to_string(quality->size()) +
                         " entries, expected " +
                         std::to_string(genre_dist.size()));
      for (double x : *quality)
        if (!std::isfinite(x)) throw InputError("quality scores must be finite");
    }
    if (!(quality_tradeoff >= 0.0) || !std::isfinite(quality_tradeoff))
      throw InputError("quality_tradeoff must be a finite value >= 0");
  }
};

/// Genre mass of a partial list. Sums to at most 1 in normalized mode.
struct Subdistribution {
  std::vector<double> mass;

  double total() const {
    double t = 0.0;
    for (double x : mass) t += x;
    return t;
  }
};

/// q = sum_r w_r * p(.|seq[r]) with absolute rank weights.
inline Subdistribution build_q(const CalibrationInstance& inst, SequenceView seq) {
  if (seq.size() > inst.rank_weights.size())
    throw InputError("sequence of length " + std::to_string(seq.size()) +
                     " is longer than the " +
                     std::to_string(inst.rank_weights.size()) + " rank weights");
  Subdistribution q{std::vector<double>(inst.num_genres(), 0.0)};
  for (std::size_t r = 0; r < seq.size(); ++r) {
    if (seq[r].index >= inst.num_movies())
      throw InputError("movie index " + std::to_string(seq[r].index) +
                       " out of range");
    const auto& row = inst.genre_dist[seq[r].index];
    for (std::size_t g = 0; g < q.mass.size(); ++g)
      q.mass[g] += inst.rank_weights[r] * row[g];
  }
  return q;
}

namespace detail {

inline void check_pair(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw InputError("distribution has " + std::to_string(p.size()) +
                     " entries but subdistribution has " +
                     std::to_string(q.size()));
  for (std::size_t x = 0; x < p.size(); ++x)
    if (!(p[x] >= 0.0) || !(q[x] >= 0.0))
      throw InputError("overlap arguments must be nonnegative");
}

}  // namespace detail

/// sum_x sqrt(p(x) q(x)); in [0, 1] for a distribution p and subdistribution q.
inline double hellinger_overlap(std::span<const double> p, std::span<const double> q) {
  detail::check_pair(p, q);
  double total = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) total += std::sqrt(p[x] * q[x]);
  return total;
}

/// Convex f on [0, inf) with f(1) = 0, together with what the divergence sum
/// needs at q(x) = 0: f(0) for p(x) = 0 and lim_{t->inf} f(t)/t for
/// p(x) > 0 (the term becomes p(x) times that limit).
struct DivergenceGenerator {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> second_derivative;
  double slope_at_infinity = std::numeric_limits<double>::infinity();
};

/// f(t) = t - sqrt(t); D_f(p, q) = 1 - sum sqrt(p q) on subdistributions,
/// so d_star = 1 recovers the Hellinger overlap.
inline DivergenceGenerator squared_hellinger_generator() {
  return {"hellinger", [](double t) { return t - std::sqrt(t); },
          [](double t) { return 0.25 / (t * std::sqrt(t)); }, 1.0};
}

/// f(t) = t - t^(1-a), 0 < a < 1; D_f(p, q) = 1 - sum p^(1-a) q^a.
inline DivergenceGenerator alpha_generator(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InputError("alpha generator requires 0 < alpha < 1");
  return {"alpha:" + std::to_string(alpha),
          [alpha](double t) { return t - std::pow(t, 1.0 - alpha); },
          [alpha](double t) {
            return alpha * (1.0 - alpha) * std::pow(t, -1.0 - alpha);
          },
          1.0};
}

/// D_f(p, q) = sum_x f(p(x)/q(x)) q(x).
inline double f_divergence(const DivergenceGenerator& gen, std::span<const double> p,
                           std::span<const double> q) {
  detail::check_pair(p, q);
  double total = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    double term;
    if (q[x] > 0.0) {
      term = gen.f(p[x] / q[x]) * q[x];
    } else if (p[x] == 0.0) {
      term = 0.0;
    } else {
      term = p[x] * gen.slope_at_infinity;
    }
    total += term;
  }
  if (!std::isfinite(total))
    throw ObjectiveError("f-divergence '" + gen.name +
                         "' is unbounded here (q = 0 where p > 0); use a "
                         "bounded divergence");
  return total;
}

struct HellingerOverlap {};

struct FDivergenceOverlap {
  DivergenceGenerator generator;
  double d_star = 1.0;
};

struct PowerOverlap {
  double alpha = 0.5;
};

/// sum_x h(q(x)) / h'(p(x)) for nonnegative nondecreasing concave h. Terms
/// with h'(p(x)) = +inf count as 0.
struct ConcaveRatioOverlap {
  std::string name;
  std::function<double(double)> h;
  std::function<double(double)> h_prime;
};

using OverlapSpec =
    std::variant<HellingerOverlap, FDivergenceOverlap, PowerOverlap, ConcaveRatioOverlap>;

inline OverlapSpec hellinger_spec() { return HellingerOverlap{}; }

inline OverlapSpec power_spec(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InputError("power overlap requires 0 < alpha < 1");
  return PowerOverlap{alpha};
}

inline OverlapSpec f_divergence_spec(DivergenceGenerator gen, double d_star) {
  if (!std::isfinite(d_star) || d_star < 0.0)
    throw InputError("d_star must be finite and >= 0");
  return FDivergenceOverlap{std::move(gen), d_star};
}

/// The concave-ratio overlap built from h(x) = x^a.
inline OverlapSpec concave_power_spec(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InputError("concave power requires 0 < alpha < 1");
  return ConcaveRatioOverlap{
      "x^" + std::to_string(alpha),
      [alpha](double x) { return std::pow(x, alpha); },
      [alpha](double x) {
        return x == 0.0 ? std::numeric_limits<double>::infinity()
                        : alpha * std::pow(x, alpha - 1.0);
      }};
}

inline std::string overlap_name(const OverlapSpec& spec) {
  struct Namer {
    std::string operator()(const HellingerOverlap&) const { return "hellinger"; }
    std::string operator()(const FDivergenceOverlap& s) const {
      return "fdiv:" + s.generator.name;
    }
    std::string operator()(const PowerOverlap& s) const {
      return "power:" + std::to_string(s.alpha);
    }
    std::string operator()(const ConcaveRatioOverlap& s) const {
      return "g1g2:" + s.name;
    }
  };
  return std::visit(Namer{}, spec);
}

inline double overlap(const OverlapSpec& spec, std::span<const double> p,
                      std::span<const double> q) {
  struct Eval {
    std::span<const double> p, q;

    double operator()(const HellingerOverlap&) const { return hellinger_overlap(p, q); }

    double operator()(const FDivergenceOverlap& s) const {
      const double v = s.d_star - f_divergence(s.generator, p, q);
      if (v < -1e-12)
        throw SpecificationError("d_star = " + std::to_string(s.d_star) +
                                 " is below the divergence " +
                                 std::to_string(s.d_star - v) + " of '" +
                                 s.generator.name + "'");
      return std::max(v, 0.0);
    }

    double operator()(const PowerOverlap& s) const {
      detail::check_pair(p, q);
      double total = 0.0;
      for (std::size_t x = 0; x < p.size(); ++x)
        total += std::pow(p[x], 1.0 - s.alpha) * std::pow(q[x], s.alpha);
      return total;
    }

    double operator()(const ConcaveRatioOverlap& s) const {
      detail::check_pair(p, q);
      double total = 0.0;
      for (std::size_t x = 0; x < p.size(); ++x) {
        const double slope = s.h_prime(p[x]);
        if (std::isinf(slope) && slope > 0.0) continue;
        total += s.h(q[x]) / slope;
      }
      if (!std::isfinite(total))
        throw ObjectiveError("overlap '" + s.name + "' is not finite here");
      return total;
    }
  };
  return std::visit(Eval{p, q}, spec);
}

/// overlap(target, build_q(S)) + lambda * sum_{i in S} quality(i).
class CalibrationObjective {
 public:
  CalibrationObjective(CalibrationInstance inst, OverlapSpec spec)
      : inst_(std::move(inst)), spec_(std::move(spec)) {
    inst_.validate();
    if (inst_.weight_mode != WeightMode::kNormalized)
      throw InputError("overlap objectives require normalized rank weights");
  }

  std::size_t ground_size() const { return inst_.num_movies(); }
  std::optional<std::size_t> max_length() const { return inst_.max_length(); }

  double operator()(SequenceView seq) const {
    const Subdistribution q = build_q(inst_, seq);
    double value = overlap(spec_, inst_.target, q.mass);
    if (inst_.quality && inst_.quality_tradeoff != 0.0) {
      double bonus = 0.0;
      for (auto e : seq) bonus += (*inst_.quality)[e.index];
      value += inst_.quality_tradeoff * bonus;
    }
    return value;
  }

  const CalibrationInstance& instance() const { return inst_; }
  const OverlapSpec& spec() const { return spec_; }

 private:
  CalibrationInstance inst_;
  OverlapSpec spec_;
};

inline SequenceFn make_calibration_fn(CalibrationInstance inst, OverlapSpec spec) {
  std::string name = "calibration:" + overlap_name(spec);
  return SequenceFn(std::move(name),
                    CalibrationObjective(std::move(inst), std::move(spec)));
}

enum class LogBase { kNatural, kTwo };

inline const char* to_string(LogBase base) {
  return base == LogBase::kNatural ? "natural" : "base2";
}

/// sum_g p(g|u) log sum_r w_r p(g|S[r]). Returns -infinity when some genre
/// with p(g|u) > 0 receives no mass (always the case for an empty list).
inline double kl_heuristic(const CalibrationInstance& inst, SequenceView seq,
                           LogBase base = LogBase::kNatural) {
  const Subdistribution q = build_q(inst, seq);
  double total = 0.0;
  for (std::size_t g = 0; g < inst.num_genres(); ++g) {
    if (inst.target[g] == 0.0) continue;
    if (q.mass[g] <= 0.0) return -std::numeric_limits<double>::infinity();
    total += inst.target[g] * std::log(q.mass[g]);
  }
  return base == LogBase::kNatural ? total : total / std::numbers::ln2;
}

/// The KL heuristic as a sequence function. The empty list is scored 0 so
/// that f(empty) is finite; nonempty lists follow kl_heuristic.
inline SequenceFn make_kl_fn(CalibrationInstance inst, LogBase base = LogBase::kNatural) {
  inst.validate();
  const std::size_t n = inst.num_movies();
  const std::size_t len = inst.max_length();
  return SequenceFn(
      "kl_heuristic", n,
      [inst = std::move(inst), base](SequenceView s) {
        return s.empty() ? 0.0 : kl_heuristic(inst, s, base);
      },
      len);
}

/// First `length` weights rescaled to sum to 1.
inline CalibrationInstance truncate_weights(const CalibrationInstance& inst,
                                            std::size_t length) {
  if (length < 1 || length > inst.rank_weights.size())
    throw InputError("length " + std::to_string(length) +
                     " outside [1, " + std::to_string(inst.rank_weights.size()) + "]");
  CalibrationInstance out = inst;
  out.rank_weights.resize(length);
  double total = 0.0;
  for (double w : out.rank_weights) total += w;
  for (double& w : out.rank_weights) w /= total;
  out.weight_mode = WeightMode::kNormalized;
  return out;
}

struct VariableLengthResult {
  SolveResult best;
  /// Greedy result for each length 1..k, in order.
  std::vector<SolveResult> per_length;
};

/// Greedy at every length l in [1, k] with the first l weights renormalized;
/// returns the best list, preferring the shorter length on ties.
inline VariableLengthResult variable_length_solve(const CalibrationInstance& inst,
                                                  const OverlapSpec& spec,
                                                  std::size_t k,
                                                  const SolveOptions& options = {}) {
  inst.validate();
  if (k < 1 || k > inst.rank_weights.size())
    throw InputError("k = " + std::to_string(k) + " must lie in [1, " +
                     std::to_string(inst.rank_weights.size()) + "]");
  VariableLengthResult out;
  for (std::size_t len = 1; len <= k; ++len) {
    const SequenceFn fn = make_calibration_fn(truncate_weights(inst, len), spec);
    out.per_length.push_back(greedy_maximize(fn, len, options));
    if (len == 1 || out.per_length.back().value > out.best.value)
      out.best = out.per_length.back();
  }
  // Report the cost of the whole sweep.
  std::uint64_t total = 0;
  for (const auto& r : out.per_length) total += r.evaluations;
  out.best.evaluations = total;
  return out;
}

}  // namespace ordsub

#endif  // ORDSUB_CALIBRATION_HPP_
