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

// The batch commands behind the ordsub CLI: solve, verify, reproduce and
// generate. Each returns a RunReport holding a structured document, a
// human-readable table and the process exit code.

#ifndef ORDSUB_COMMANDS_HPP_
#define ORDSUB_COMMANDS_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ordsub/calibration.hpp"
#include "ordsub/checker.hpp"
#include "ordsub/coverage.hpp"
#include "ordsub/errors.hpp"
#include "ordsub/instances.hpp"
#include "ordsub/json_io.hpp"
#include "ordsub/sequence.hpp"
#include "ordsub/solver.hpp"

namespace ordsub {

inline constexpr const char* kVersion = "ordsub 1.0.0";

struct RunReport {
  Json doc = Json::object();
  std::string table;
  int exit_code = 0;
};

/// An objective resolved from a selector string against an instance.
struct ResolvedObjective {
  SequenceFn fn;
  /// Objectives whose sign varies; ratios are not reported for them.
  bool sign_varying = false;
};

namespace detail {

inline double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw InputError("cannot parse " + what + " from '" + text + "'");
  return v;
}

inline bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

inline Json sequence_json(SequenceView seq) {
  Json a = Json::array();
  for (auto e : seq) a.push_back(e.index);
  return a;
}

inline std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.9g", v);
  return buf;
}

inline Json result_json(const SolveResult& r) {
  Json j = Json::object();
  j["sequence"] = sequence_json(r.sequence);
  j["value"] = r.value;
  j["evaluations"] = r.evaluations;
  return j;
}

inline Json violation_json(const Violation& v) {
  Json j = Json::object();
  j["A"] = sequence_json(v.prefix);
  j["s"] = v.s.index;
  j["s_bar"] = v.s_bar.index;
  j["B"] = sequence_json(v.suffix);
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  return j;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void finish(RunReport& report, const Stopwatch& clock) {
  report.doc["version"] = kVersion;
  report.doc["wall_time_seconds"] = clock.seconds();
}

}  // namespace detail

/// Overlap selectors: hellinger | power:<a> | fdiv:hellinger |
/// fdiv:alpha:<a> | g1g2:power:<a>.
inline std::optional<OverlapSpec> parse_overlap_selector(const std::string& sel) {
  using detail::parse_real;
  using detail::starts_with;
  if (sel == "hellinger") return hellinger_spec();
  if (starts_with(sel, "power:")) return power_spec(parse_real(sel.substr(6), "alpha"));
  if (sel == "fdiv:hellinger") return f_divergence_spec(squared_hellinger_generator(), 1.0);
  if (starts_with(sel, "fdiv:alpha:"))
    return f_divergence_spec(alpha_generator(parse_real(sel.substr(11), "alpha")), 1.0);
  if (starts_with(sel, "g1g2:power:"))
    return concave_power_spec(parse_real(sel.substr(11), "alpha"));
  return std::nullopt;
}

/// Resolves an objective selector: coverage | <overlap selector> | kl |
/// constant:<c>. Rejects selectors that do not fit the instance kind.
inline ResolvedObjective resolve_objective(const InstanceFile& file,
                                           const std::string& selector,
                                           LogBase log_base = LogBase::kNatural) {
  std::size_t n = 0;
  if (const auto* cov = std::get_if<CoverageInstance>(&file.payload)) {
    n = cov->num_movies();
    if (selector == "coverage") return {make_coverage_fn(*cov), false};
  } else {
    const auto& cal = std::get<CalibrationInstance>(file.payload);
    n = cal.num_movies();
    if (selector == "kl") return {make_kl_fn(cal, log_base), true};
    if (auto spec = parse_overlap_selector(selector))
      return {make_calibration_fn(cal, *spec), false};
  }
  if (detail::starts_with(selector, "constant:"))
    return {constant_fn(n, detail::parse_real(selector.substr(9), "constant")), false};
  throw InputError("objective '" + selector + "' is not valid for a " +
                   std::string(to_string(file.kind())) + " instance");
}

struct SolveRequest {
  std::string instance_path;
  std::string objective;
  std::size_t k = 0;
  bool oracle = false;
  bool allow_repeats = false;
  bool variable_length = false;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultEvaluationBudget;
  LogBase log_base = LogBase::kNatural;
};

inline RunReport cmd_solve(const SolveRequest& req) {
  detail::Stopwatch clock;
  if (req.k < 1) throw InputError("k must be at least 1");
  const InstanceFile file = read_instance_file(req.instance_path);
  const SolveOptions options{req.allow_repeats, req.threads, req.budget};

  RunReport report;
  auto& doc = report.doc;
  doc["command"] = "solve";
  doc["args"] = {{"instance", req.instance_path}, {"objective", req.objective},
                 {"k", req.k},
                 {"oracle", req.oracle},
                 {"repeats", req.allow_repeats},
                 {"variable_length", req.variable_length}};
  doc["instance"] = file.metadata;

  std::ostringstream table;
  std::optional<SolveResult> greedy, optimum;
  bool sign_varying = false;

  if (req.variable_length) {
    const auto* cal = std::get_if<CalibrationInstance>(&file.payload);
    const auto spec = parse_overlap_selector(req.objective);
    if (!cal || !spec)
      throw InputError("--variable-length needs a calibration instance and an overlap objective");
    doc["objective"] = "calibration:" + overlap_name(*spec);
    const VariableLengthResult sweep = variable_length_solve(*cal, *spec, req.k, options);
    greedy = sweep.best;
    Json lengths = Json::array();
    for (std::size_t len = 1; len <= req.k; ++len) {
      Json row = detail::result_json(sweep.per_length[len - 1]);
      row["length"] = len;
      if (req.oracle) {
        const SequenceFn fn = make_calibration_fn(truncate_weights(*cal, len), *spec);
        const SolveResult opt = brute_force_optimum(fn, len, options);
        row["optimum"] = detail::result_json(opt);
        if (!optimum || opt.value > optimum->value) optimum = opt;
      }
      lengths.push_back(std::move(row));
    }
    doc["per_length"] = std::move(lengths);
  } else {
    const ResolvedObjective obj = resolve_objective(file, req.objective, req.log_base);
    sign_varying = obj.sign_varying;
    doc["objective"] = obj.fn.name();
    greedy = greedy_maximize(obj.fn, req.k, options);
    if (req.oracle) optimum = brute_force_optimum(obj.fn, req.k, options);
  }

  doc["greedy"] = detail::result_json(*greedy);
  table << "objective  " << doc["objective"].get<std::string>() << "\n";
  table << "greedy     " << to_string(greedy->sequence) << "  value "
        << detail::real_text(greedy->value) << "\n";
  if (optimum) {
    doc["oracle"] = detail::result_json(*optimum);
    table << "oracle     " << to_string(optimum->sequence) << "  value "
          << detail::real_text(optimum->value) << "\n";
    if (!sign_varying && optimum->value > 0.0) {
      const double ratio = greedy->value / optimum->value;
      doc["ratio"] = ratio;
      table << "ratio      " << detail::real_text(ratio) << "\n";
    } else {
      doc["ratio"] = nullptr;
      const std::string note =
          "ratio undefined: the objective can take either sign or the optimum is not positive";
      doc["ratio_note"] = note;
      table << note << "\n";
    }
  }
  report.table = table.str();
  detail::finish(report, clock);
  return report;
}

struct VerifyRequest {
  std::string instance_path;
  std::string objective;
  std::size_t max_total_len = 3;
  double tolerance = 1e-9;
  bool allow_repeats = false;
  std::uint64_t budget = kDefaultEvaluationBudget;
  std::size_t max_witnesses = 10;
  LogBase log_base = LogBase::kNatural;
};

inline RunReport cmd_verify(const VerifyRequest& req) {
  detail::Stopwatch clock;
  const InstanceFile file = read_instance_file(req.instance_path);
  const ResolvedObjective obj = resolve_objective(file, req.objective, req.log_base);
  const SubmodularityReport check = check_ordered_submodularity(
      obj.fn, CheckOptions{req.max_total_len, req.tolerance, req.allow_repeats, req.budget});

  RunReport report;
  auto& doc = report.doc;
  doc["command"] = "verify";
  doc["args"] = {{"instance", req.instance_path}, {"objective", req.objective},
                 {"max_total_len", req.max_total_len},
                 {"tolerance", req.tolerance},
                 {"repeats", req.allow_repeats}};
  doc["instance"] = file.metadata;
  doc["objective"] = obj.fn.name();
  doc["holds"] = check.holds;
  doc["checked"] = check.checked;
  doc["violation_count"] = check.violations.size();
  Json witnesses = Json::array();
  for (std::size_t i = 0; i < check.violations.size() && i < req.max_witnesses; ++i)
    witnesses.push_back(detail::violation_json(check.violations[i]));
  doc["violations"] = std::move(witnesses);

  std::ostringstream table;
  table << "objective   " << obj.fn.name() << "\n"
        << "checked     " << check.checked << "\n"
        << "violations  " << check.violations.size() << "\n"
        << "holds       " << (check.holds ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < check.violations.size() && i < req.max_witnesses; ++i) {
    const auto& v = check.violations[i];
    table << "  A=" << to_string(v.prefix) << " s=" << v.s.index
          << " s_bar=" << v.s_bar.index << " B=" << to_string(v.suffix)
          << "  lhs " << detail::real_text(v.lhs) << " < rhs "
          << detail::real_text(v.rhs) << "\n";
  }
  report.table = table.str();
  report.exit_code = check.holds ? 0 : 1;
  detail::finish(report, clock);
  return report;
}

/// Published (w1, ALG, OPT) rows of the KL sign-change table.
struct KlTableRow {
  double w1, alg, opt;
};

inline const std::vector<KlTableRow>& kl_published_table() {
  static const std::vector<KlTableRow> rows = {
      {1.1, -0.823134, -0.797737}, {1.5, -0.691859, -0.585156},
      {2.0, -0.549794, -0.371873}, {3.5, -0.201250, 0.114023},
      {5.0, 0.0311358, 0.386387},  {10.0, 0.580034, 1.01213},
      {100.0, 2.73099, 3.20940},
  };
  return rows;
}

/// Published Hellinger overlaps of i3 i1 i2, i3 i2 i1, i4 i1 i2, i4 i2 i1.
inline constexpr std::array<double, 4> kSeqdepPublished = {0.956, 0.940, 0.974, 0.983};

struct ReproduceRequest {
  std::string target;  // a1-table | a2-example | tightness:<k>
  std::optional<double> tolerance;
  double delta = 1e-6;
  unsigned threads = 1;
};

namespace detail {

inline RunReport reproduce_a1(const ReproduceRequest& req) {
  const double tol = req.tolerance.value_or(1e-4);
  RunReport report;
  auto& doc = report.doc;
  std::ostringstream table;

  auto run_base = [&](LogBase base, Json& rows, std::ostringstream& out) {
    bool all = true;
    out << "log base " << to_string(base) << "\n"
        << "  w1        ALG            OPT            |dALG|       |dOPT|       ok\n";
    for (const auto& row : kl_published_table()) {
      const CalibrationInstance inst = kl_counterexample(row.w1);
      const double alg = kl_heuristic(inst, make_sequence({0, 1}), base);
      const double opt = kl_heuristic(inst, make_sequence({1, 0}), base);
      const double d_alg = std::abs(alg - row.alg);
      const double d_opt = std::abs(opt - row.opt);
      const bool ok = d_alg <= tol && d_opt <= tol;
      all = all && ok;
      Json r = Json::object();
      r["w1"] = row.w1;
      r["alg"] = alg;
      r["opt"] = opt;
      r["published_alg"] = row.alg;
      r["published_opt"] = row.opt;
      r["abs_dev_alg"] = d_alg;
      r["abs_dev_opt"] = d_opt;
      r["pass"] = ok;
      rows.push_back(std::move(r));
      char line[160];
      std::snprintf(line, sizeof line, "  %-8g  %-13.6g  %-13.6g  %-11.3e  %-11.3e  %s\n",
                    row.w1, alg, opt, d_alg, d_opt, ok ? "yes" : "NO");
      out << line;
    }
    return all;
  };

  Json natural_rows = Json::array();
  const bool natural_ok = run_base(LogBase::kNatural, natural_rows, table);
  doc["tolerance"] = tol;
  doc["rows_natural"] = std::move(natural_rows);
  std::optional<LogBase> passing;
  if (natural_ok) {
    passing = LogBase::kNatural;
  } else {
    Json base2_rows = Json::array();
    const bool base2_ok = run_base(LogBase::kTwo, base2_rows, table);
    doc["rows_base2"] = std::move(base2_rows);
    if (base2_ok) passing = LogBase::kTwo;
  }
  doc["log_base"] = passing ? Json(to_string(*passing)) : Json(nullptr);

  // Sign change of ALG between w1 = 3.5 and w1 = 5.
  const double alg35 = kl_heuristic(kl_counterexample(3.5), make_sequence({0, 1}));
  const double alg5 = kl_heuristic(kl_counterexample(5.0), make_sequence({0, 1}));
  doc["alg_sign_flips_between_3.5_and_5"] = alg35 < 0.0 && alg5 > 0.0;

  table << "passing log base: " << (passing ? to_string(*passing) : "none") << "\n";
  doc["pass"] = passing.has_value();
  report.exit_code = passing ? 0 : 1;
  report.table = table.str();
  return report;
}

inline RunReport reproduce_a2(const ReproduceRequest& req) {
  const double tol = req.tolerance.value_or(1e-3);
  const SequenceFn fn = make_calibration_fn(seqdep_instance(), hellinger_spec());
  const std::array<Sequence, 4> lists = {make_sequence({2, 0, 1}), make_sequence({2, 1, 0}),
                                         make_sequence({3, 0, 1}), make_sequence({3, 1, 0})};
  const std::array<const char*, 4> labels = {"i3 i1 i2", "i3 i2 i1", "i4 i1 i2", "i4 i2 i1"};
  RunReport report;
  auto& doc = report.doc;
  std::ostringstream table;
  std::array<double, 4> v{};
  bool all = true;
  Json values = Json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    v[i] = fn.evaluate(lists[i]);
    const Subdistribution q = build_q(seqdep_instance(), lists[i]);
    const bool ok = std::abs(v[i] - kSeqdepPublished[i]) <= tol;
    all = all && ok;
    Json r = Json::object();
    r["list"] = labels[i];
    r["q"] = reals(q.mass);
    r["value"] = v[i];
    r["published"] = kSeqdepPublished[i];
    r["abs_dev"] = std::abs(v[i] - kSeqdepPublished[i]);
    r["pass"] = ok;
    values.push_back(std::move(r));
    table << "f(" << labels[i] << ") = " << real_text(v[i]) << "  published "
          << kSeqdepPublished[i] << (ok ? "  ok" : "  MISMATCH") << "\n";
  }
  const bool first = v[0] > v[1];
  const bool second = v[2] < v[3];
  doc["tolerance"] = tol;
  doc["values"] = std::move(values);
  doc["f(i3 i1 i2) > f(i3 i2 i1)"] = first;
  doc["f(i4 i1 i2) < f(i4 i2 i1)"] = second;
  table << "f(i3 i1 i2) > f(i3 i2 i1): " << (first ? "true" : "false") << "\n"
        << "f(i4 i1 i2) < f(i4 i2 i1): " << (second ? "true" : "false") << "\n";
  const bool pass = all && first && second;
  doc["pass"] = pass;
  report.exit_code = pass ? 0 : 1;
  report.table = table.str();
  return report;
}

inline RunReport reproduce_tightness(const ReproduceRequest& req, std::size_t k) {
  const double tol = req.tolerance.value_or(k == 2 ? 1e-5 : 1e-4);
  const SequenceFn fn = make_coverage_fn(tightness_instance(k, req.delta));
  SolveOptions options;
  options.threads = req.threads;
  const RatioOutcome out = approximation_ratio(fn, k, options);
  RunReport report;
  auto& doc = report.doc;
  doc["k"] = k;
  doc["delta"] = req.delta;
  doc["tolerance"] = tol;
  doc["greedy"] = result_json(out.greedy);
  doc["oracle"] = result_json(out.optimum);
  doc["ratio"] = out.ratio ? Json(*out.ratio) : Json(nullptr);
  const bool pass = out.ratio && std::abs(*out.ratio - 0.5) <= tol;
  doc["pass"] = pass;
  std::ostringstream table;
  table << "ALG   " << real_text(out.greedy.value) << "  " << to_string(out.greedy.sequence)
        << "\nOPT   " << real_text(out.optimum.value) << "  "
        << to_string(out.optimum.sequence) << "\nratio "
        << (out.ratio ? real_text(*out.ratio) : std::string("undefined")) << "\n";
  report.exit_code = pass ? 0 : 1;
  report.table = table.str();
  return report;
}

}  // namespace detail

inline RunReport cmd_reproduce(const ReproduceRequest& req) {
  detail::Stopwatch clock;
  RunReport report;
  if (req.target == "a1-table") {
    report = detail::reproduce_a1(req);
  } else if (req.target == "a2-example") {
    report = detail::reproduce_a2(req);
  } else if (detail::starts_with(req.target, "tightness:")) {
    const std::string digits = req.target.substr(10);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("tightness target needs an integer k, got '" + digits + "'");
    report = detail::reproduce_tightness(req, std::stoul(digits));
  } else {
    throw InputError("unknown reproduce target '" + req.target +
                     "' (expected a1-table, a2-example or tightness:<k>)");
  }
  Json doc = Json::object();
  doc["command"] = "reproduce";
  doc["target"] = req.target;
  doc.update(report.doc);
  report.doc = std::move(doc);
  detail::finish(report, clock);
  return report;
}

struct GenerateRequest {
  std::string generator;  // tightness | kl-counterexample | seqdep |
                          // random-coverage | random-calibration
  std::string output_path;
  std::size_t k = 2;
  double delta = 1e-6;
  double w1 = 2.0;
  double eps = kKlDefaultEps;
  std::uint64_t seed = 1;
  std::size_t movies = 5;
  std::size_t types = 3;
  std::size_t genres = 3;
  std::uint32_t max_patience = 3;
};

inline InstanceFile generate_instance(const GenerateRequest& req) {
  InstanceFile file;
  const std::string& g = req.generator;
  if (g == "tightness") {
    file.payload = tightness_instance(req.k, req.delta);
    file.metadata = make_metadata("tightness-k" + std::to_string(req.k), g,
                                  {{"k", req.k}, {"delta", req.delta}});
  } else if (g == "kl-counterexample") {
    file.payload = kl_counterexample(req.w1, req.eps);
    file.metadata = make_metadata("kl-counterexample", g,
                                  {{"w1", req.w1}, {"eps", req.eps}});
  } else if (g == "seqdep") {
    file.payload = seqdep_instance();
    file.metadata = make_metadata("seqdep", g);
  } else if (g == "random-coverage") {
    file.payload = random_coverage(req.seed, req.movies, req.types, req.max_patience);
    file.metadata = make_metadata(
        "random-coverage", g,
        {{"movies", req.movies}, {"types", req.types}, {"max_patience", req.max_patience}},
        req.seed);
  } else if (g == "random-calibration") {
    file.payload = random_calibration(req.seed, req.movies, req.genres, req.k);
    file.metadata = make_metadata(
        "random-calibration", g,
        {{"movies", req.movies}, {"genres", req.genres}, {"k", req.k}}, req.seed);
  } else {
    throw InputError("unknown generator '" + g + "'");
  }
  return file;
}

inline RunReport cmd_generate(const GenerateRequest& req) {
  detail::Stopwatch clock;
  const InstanceFile file = generate_instance(req);
  write_instance_file(req.output_path, file);
  RunReport report;
  report.doc["command"] = "generate";
  report.doc["generator"] = req.generator;
  report.doc["output"] = req.output_path;
  report.doc["kind"] = to_string(file.kind());
  report.doc["instance"] = file.metadata;
  report.table = "wrote " + std::string(to_string(file.kind())) + " instance '" +
                 file.metadata["name"].get<std::string>() + "' to " + req.output_path + "\n";
  detail::finish(report, clock);
  return report;
}

}  // namespace ordsub

#endif  // ORDSUB_COMMANDS_HPP_
