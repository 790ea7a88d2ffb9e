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

// Named instances, seeded random instance families, and the instance file
// format.

#ifndef ORDSUB_INSTANCES_HPP_
#define ORDSUB_INSTANCES_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ordsub/calibration.hpp"
#include "ordsub/compose.hpp"
#include "ordsub/coverage.hpp"
#include "ordsub/errors.hpp"
#include "ordsub/json_io.hpp"
#include "ordsub/rng.hpp"

namespace ordsub {

/// k user types and k movies where movie j satisfies exactly type j and
/// type j has patience j (1-based). The optimum lists the movies in order
/// and covers everyone; greedy covers only the upper half.
///
/// The type probabilities are pi_j proportional to 1 + j * delta so greedy,
/// with lowest-index tie-breaking, is driven to open with s_k, s_{k-1}, ...
/// With delta = 0 every first step ties and greedy recovers the optimum.
inline CoverageInstance tightness_instance(std::size_t k, double delta) {
  if (k < 2 || k % 2 != 0)
    throw InputError("tightness instance needs an even k >= 2, got " +
                     std::to_string(k));
  if (!(delta >= 0.0) || delta * static_cast<double>(k) >= 1.0)
    throw InputError("tightness perturbation must satisfy 0 <= delta < 1/k");
  CoverageInstance inst;
  inst.pi.resize(k);
  inst.theta.resize(k);
  inst.p_sat.assign(k, std::vector<double>(k, 0.0));
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    inst.pi[j] = 1.0 + static_cast<double>(j + 1) * delta;
    total += inst.pi[j];
    inst.theta[j] = static_cast<std::uint32_t>(j + 1);
    inst.p_sat[j][j] = 1.0;
  }
  for (double& x : inst.pi) x /= total;
  inst.validate();
  return inst;
}

inline constexpr std::array<double, 4> kKlDefaultTarget = {0.05, 0.9, 0.025, 0.025};
inline constexpr double kKlDefaultEps = 1e-10;

/// Two movies over four genres, rank weights (w1, 1) in raw mode, on which
/// the KL heuristic changes sign as w1 grows.
inline CalibrationInstance kl_counterexample(
    double w1, double eps = kKlDefaultEps,
    std::array<double, 4> target = kKlDefaultTarget) {
  if (!(eps > 0.0 && eps < 1.0 / 3.0))
    throw InputError("eps must lie in (0, 1/3)");
  if (!(w1 > 1.0) || !std::isfinite(w1))
    throw InputError("w1 must be a finite value > 1");
  CalibrationInstance inst;
  inst.genre_dist = {
      {0.5 * (1 - eps), 0.25 * (1 - eps), 0.25 * (1 - eps), eps},
      {0.5 * (1 - eps), 0.5 * (1 - eps), 0.5 * eps, 0.5 * eps},
  };
  inst.target.assign(target.begin(), target.end());
  inst.rank_weights = {w1, 1.0};
  inst.weight_mode = WeightMode::kRaw;
  inst.validate();
  return inst;
}

/// Two genres, four movies, weights (0.5, 0.3, 0.2), target (0.5, 0.5):
/// whether i1 should precede i2 depends on what opens the list.
inline CalibrationInstance seqdep_instance() {
  CalibrationInstance inst;
  inst.genre_dist = {{0.4, 0.6}, {0.8, 0.2}, {1.0, 0.0}, {0.0, 1.0}};
  inst.target = {0.5, 0.5};
  inst.rank_weights = {0.5, 0.3, 0.2};
  inst.weight_mode = WeightMode::kNormalized;
  inst.validate();
  return inst;
}

/// Keeps only the listed movies, in the given order.
inline CalibrationInstance restrict_movies(const CalibrationInstance& inst,
                                           const std::vector<std::size_t>& movies) {
  CalibrationInstance out = inst;
  out.genre_dist.clear();
  if (inst.quality) out.quality->clear();
  for (auto m : movies) {
    if (m >= inst.num_movies()) throw InputError("movie index out of range");
    out.genre_dist.push_back(inst.genre_dist[m]);
    if (inst.quality) out.quality->push_back((*inst.quality)[m]);
  }
  return out;
}

namespace detail {

inline std::vector<double> normalized_uniform(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double total = 0.0;
  for (double& x : v) total += (x = rng.uniform());
  for (double& x : v) x /= total;
  return v;
}

}  // namespace detail

/// Draw order: pi (normalized uniform), p_sat row by row (uniform), theta
/// (uniform integer in [1, max_patience]).
inline CoverageInstance random_coverage(std::uint64_t seed, std::size_t n_movies,
                                        std::size_t n_types,
                                        std::uint32_t max_patience) {
  if (n_movies == 0 || n_types == 0 || max_patience == 0)
    throw InputError("random coverage dimensions must be positive");
  Rng rng(seed);
  CoverageInstance inst;
  inst.pi = detail::normalized_uniform(rng, n_types);
  inst.p_sat.assign(n_movies, std::vector<double>(n_types));
  for (auto& row : inst.p_sat)
    for (double& p : row) p = rng.uniform();
  inst.theta.resize(n_types);
  for (auto& t : inst.theta)
    t = static_cast<std::uint32_t>(rng.integer(1, max_patience));
  inst.validate();
  return inst;
}

/// Draw order: genre rows, target, then k weights sorted descending; all
/// normalized uniform.
inline CalibrationInstance random_calibration(std::uint64_t seed, std::size_t n_movies,
                                              std::size_t n_genres, std::size_t k) {
  if (n_movies == 0 || n_genres == 0 || k == 0)
    throw InputError("random calibration dimensions must be positive");
  if (k > n_movies) throw InputError("k must not exceed the number of movies");
  Rng rng(seed);
  CalibrationInstance inst;
  inst.genre_dist.resize(n_movies);
  for (auto& row : inst.genre_dist) row = detail::normalized_uniform(rng, n_genres);
  inst.target = detail::normalized_uniform(rng, n_genres);
  inst.rank_weights = detail::normalized_uniform(rng, k);
  std::sort(inst.rank_weights.begin(), inst.rank_weights.end(), std::greater<>());
  inst.weight_mode = WeightMode::kNormalized;
  inst.validate();
  return inst;
}

/// Uniform quality scores in (0, 1), one per movie.
inline std::vector<double> random_quality(std::uint64_t seed, std::size_t n_movies) {
  Rng rng(seed);
  std::vector<double> q(n_movies);
  for (double& x : q) x = rng.uniform();
  return q;
}

/// Each element covers each of n_points points with probability
/// cover_prob; point weights are uniform in (0, 1).
inline WeightedCoverageSetFn random_coverage_set_fn(std::uint64_t seed,
                                                    std::size_t n_elements,
                                                    std::size_t n_points,
                                                    double cover_prob = 0.4) {
  Rng rng(seed);
  std::vector<double> weights(n_points);
  for (double& w : weights) w = rng.uniform();
  std::vector<std::vector<std::size_t>> covers(n_elements);
  for (auto& c : covers)
    for (std::size_t p = 0; p < n_points; ++p)
      if (rng.uniform() < cover_prob) c.push_back(p);
  return WeightedCoverageSetFn(std::move(covers), std::move(weights));
}

// ---------------------------------------------------------------------------
// Instance files
//
// {
//   "kind": "coverage" | "calibration",
//   "metadata": {"name": ..., "seed": ..., "generator": ..., "parameters": {...}},
//   "payload": {...}
// }
//
// coverage payload:    pi, theta, p_sat (movies x user types)
// calibration payload: genre_dist (movies x genres), target, rank_weights,
//                      weight_mode ("normalized" | "raw"), optional quality,
//                      quality_tradeoff
// ---------------------------------------------------------------------------

enum class InstanceKind { kCoverage, kCalibration };

inline const char* to_string(InstanceKind kind) {
  return kind == InstanceKind::kCoverage ? "coverage" : "calibration";
}

struct InstanceFile {
  Json metadata = Json::object();
  std::variant<CoverageInstance, CalibrationInstance> payload;

  InstanceKind kind() const {
    return std::holds_alternative<CoverageInstance>(payload)
               ? InstanceKind::kCoverage
               : InstanceKind::kCalibration;
  }
};

inline Json make_metadata(const std::string& name, const std::string& generator,
                          Json parameters = Json::object(),
                          std::optional<std::uint64_t> seed = std::nullopt) {
  Json m = Json::object();
  m["name"] = name;
  m["seed"] = seed ? Json(*seed) : Json(nullptr);
  m["generator"] = generator;
  m["rng"] = seed ? Json(Rng::kName) : Json(nullptr);
  m["parameters"] = std::move(parameters);
  return m;
}

namespace detail {

inline Json reals(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json real_rows(const std::vector<std::vector<double>>& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(reals(row));
  return a;
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("instance file is missing field '") + key + "'");
  return j.at(key);
}

inline double real_of(const Json& j) {
  if (!j.is_number()) throw InputError("expected a number in instance file");
  return j.get<double>();
}

inline std::vector<double> reals_of(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(real_of(e));
  return v;
}

inline std::vector<std::vector<double>> rows_of(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  std::vector<std::vector<double>> m;
  for (const auto& row : j) m.push_back(reals_of(row));
  return m;
}

}  // namespace detail

inline Json to_json(const InstanceFile& file) {
  Json j = Json::object();
  j["kind"] = to_string(file.kind());
  j["metadata"] = file.metadata;
  Json payload = Json::object();
  if (const auto* cov = std::get_if<CoverageInstance>(&file.payload)) {
    payload["pi"] = detail::reals(cov->pi);
    payload["theta"] = cov->theta;
    payload["p_sat"] = detail::real_rows(cov->p_sat);
  } else {
    const auto& cal = std::get<CalibrationInstance>(file.payload);
    payload["genre_dist"] = detail::real_rows(cal.genre_dist);
    payload["target"] = detail::reals(cal.target);
    payload["rank_weights"] = detail::reals(cal.rank_weights);
    payload["weight_mode"] = to_string(cal.weight_mode);
    if (cal.quality) payload["quality"] = detail::reals(*cal.quality);
    payload["quality_tradeoff"] = cal.quality_tradeoff;
  }
  j["payload"] = std::move(payload);
  return j;
}

/// Parses and validates an instance document.
inline InstanceFile from_json(const Json& j) {
  InstanceFile file;
  const std::string kind = detail::field(j, "kind").get<std::string>();
  if (j.contains("metadata")) file.metadata = j.at("metadata");
  const Json& payload = detail::field(j, "payload");
  if (kind == "coverage") {
    CoverageInstance inst;
    inst.pi = detail::reals_of(detail::field(payload, "pi"));
    for (const auto& t : detail::field(payload, "theta")) {
      if (!t.is_number_integer() || t.get<std::int64_t>() < 1)
        throw InputError("theta entries must be integers >= 1");
      inst.theta.push_back(static_cast<std::uint32_t>(t.get<std::int64_t>()));
    }
    inst.p_sat = detail::rows_of(detail::field(payload, "p_sat"));
    inst.validate();
    file.payload = std::move(inst);
  } else if (kind == "calibration") {
    CalibrationInstance inst;
    inst.genre_dist = detail::rows_of(detail::field(payload, "genre_dist"));
    inst.target = detail::reals_of(detail::field(payload, "target"));
    inst.rank_weights = detail::reals_of(detail::field(payload, "rank_weights"));
    const std::string mode = detail::field(payload, "weight_mode").get<std::string>();
    if (mode == "normalized") {
      inst.weight_mode = WeightMode::kNormalized;
    } else if (mode == "raw") {
      inst.weight_mode = WeightMode::kRaw;
    } else {
      throw InputError("unknown weight_mode '" + mode + "'");
    }
    if (payload.contains("quality")) inst.quality = detail::reals_of(payload.at("quality"));
    if (payload.contains("quality_tradeoff"))
      inst.quality_tradeoff = detail::real_of(payload.at("quality_tradeoff"));
    inst.validate();
    file.payload = std::move(inst);
  } else {
    throw InputError("unknown instance kind '" + kind + "'");
  }
  return file;
}

inline std::string serialize(const InstanceFile& file) {
  return dump_json(to_json(file)) + "\n";
}

inline InstanceFile parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance file: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance file: ") + e.what());
  }
}

inline InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline void write_instance_file(const std::string& path, const InstanceFile& file) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file '" + path + "'");
  out << serialize(file);
  if (!out) throw InputError("failed writing instance file '" + path + "'");
}

}  // namespace ordsub

#endif  // ORDSUB_INSTANCES_HPP_
