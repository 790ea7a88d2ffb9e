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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ordsub/commands.hpp"

namespace {

ordsub::LogBase parse_log_base(const std::string& s) {
  if (s == "natural" || s == "e") return ordsub::LogBase::kNatural;
  if (s == "2" || s == "base2") return ordsub::LogBase::kTwo;
  throw ordsub::InputError("unknown log base '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy and exhaustive maximization of ordered-submodular sequence functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ordsub::kVersion);

  std::string format = "table";
  unsigned threads = 1;
  std::uint64_t budget = ordsub::kDefaultEvaluationBudget;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "structured"}))
      ->capture_default_str();
  app.add_option("--threads", threads, "Oracle worker threads")->capture_default_str();
  app.add_option("--budget", budget, "Oracle / checker evaluation cap")->capture_default_str();
  app.add_option("--tolerance", tolerance, "Comparison tolerance");
  app.add_option("--seed", seed, "Seed for random generators");

  // solve
  ordsub::SolveRequest solve;
  std::string solve_log = "natural";
  auto* solve_cmd = app.add_subcommand("solve", "Run greedy (and optionally the oracle)");
  solve_cmd->add_option("instance", solve.instance_path, "Instance file")->required();
  solve_cmd->add_option("-o,--objective", solve.objective,
                        "coverage | hellinger | power:<a> | fdiv:hellinger | "
                        "fdiv:alpha:<a> | g1g2:power:<a> | kl | constant:<c>")
      ->required();
  solve_cmd->add_option("-k", solve.k, "List length")->required();
  solve_cmd->add_flag("--oracle", solve.oracle, "Also compute the exact optimum");
  solve_cmd->add_flag("--repeats", solve.allow_repeats, "Allow repeated elements");
  solve_cmd->add_flag("--variable-length", solve.variable_length,
                      "Sweep lengths 1..k with renormalized weights");
  solve_cmd->add_option("--log-base", solve_log, "Log base of the kl objective (natural | 2)");

  // verify
  ordsub::VerifyRequest verify;
  std::string verify_log = "natural";
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustively check ordered submodularity");
  verify_cmd->add_option("instance", verify.instance_path, "Instance file")->required();
  verify_cmd->add_option("-o,--objective", verify.objective, "Objective selector")->required();
  verify_cmd->add_option("--max-len", verify.max_total_len, "Largest |A| + 1 + |B|")
      ->capture_default_str();
  verify_cmd->add_flag("--repeats", verify.allow_repeats, "Allow repeated elements");
  verify_cmd->add_option("--witnesses", verify.max_witnesses, "Violations to print")
      ->capture_default_str();
  verify_cmd->add_option("--log-base", verify_log, "Log base of the kl objective");

  // reproduce
  ordsub::ReproduceRequest reproduce;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Recompute a published example");
  reproduce_cmd->add_option("target", reproduce.target, "a1-table | a2-example | tightness:<k>")
      ->required();
  reproduce_cmd->add_option("--delta", reproduce.delta, "Tightness perturbation")
      ->capture_default_str();

  // generate
  ordsub::GenerateRequest generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write an instance file");
  generate_cmd
      ->add_option("generator", generate.generator,
                   "tightness | kl-counterexample | seqdep | random-coverage | "
                   "random-calibration")
      ->required();
  generate_cmd->add_option("--out", generate.output_path, "Output path")->required();
  generate_cmd->add_option("-k", generate.k, "List length / tightness size")->capture_default_str();
  generate_cmd->add_option("--delta", generate.delta)->capture_default_str();
  generate_cmd->add_option("--w1", generate.w1)->capture_default_str();
  generate_cmd->add_option("--eps", generate.eps)->capture_default_str();
  generate_cmd->add_option("--movies", generate.movies)->capture_default_str();
  generate_cmd->add_option("--types", generate.types)->capture_default_str();
  generate_cmd->add_option("--genres", generate.genres)->capture_default_str();
  generate_cmd->add_option("--max-patience", generate.max_patience)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    ordsub::RunReport report;
    if (*solve_cmd) {
      solve.threads = threads;
      solve.budget = budget;
      solve.log_base = parse_log_base(solve_log);
      report = ordsub::cmd_solve(solve);
    } else if (*verify_cmd) {
      verify.budget = budget;
      if (tolerance) verify.tolerance = *tolerance;
      verify.log_base = parse_log_base(verify_log);
      report = ordsub::cmd_verify(verify);
    } else if (*reproduce_cmd) {
      reproduce.tolerance = tolerance;
      reproduce.threads = threads;
      report = ordsub::cmd_reproduce(reproduce);
    } else {
      if (seed) generate.seed = *seed;
      report = ordsub::cmd_generate(generate);
    }
    if (format == "structured") {
      std::cout << ordsub::dump_json(report.doc) << "\n";
    } else {
      std::cout << report.table;
    }
    return report.exit_code;
  } catch (const ordsub::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ordsub::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const ordsub::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
