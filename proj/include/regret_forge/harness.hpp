// Copyright 2026 The regret_forge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment driver: YAML configs, seeded runs and CSV logs.

#ifndef REGRET_FORGE_HARNESS_HPP_
#define REGRET_FORGE_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regret_forge/deep_solvers.hpp"
#include "regret_forge/game_tree.hpp"
#include "regret_forge/policy.hpp"
#include "regret_forge/rule_agents.hpp"

namespace regret_forge::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader =
    "game,algo,seed,iteration,episodes,exploitability,wall_time_s";

// Deep algorithm names are the DeepVariant names; anything else is parsed as
// a tabular update rule.
bool is_deep_algorithm(std::string_view algo);

// RunConfig for `algo` on `game` from YAML text. Unset keys keep the
// published defaults; unknown keys and out-of-range values throw
// ConfigError.
RunConfig parse_run_config(std::string_view yaml, std::string_view algo,
                           const GameId& game);
RunConfig load_run_config(const std::filesystem::path& path,
                          std::string_view algo, const GameId& game);

struct CsvRow {
  std::string game;
  std::string algo;
  std::uint64_t seed = 0;
  int iteration = 0;
  std::int64_t episodes = 0;
  double exploitability = 0.0;
  double wall_time_s = 0.0;
};

std::string format_row(const CsvRow& row);

// Appends whole lines to a CSV file, one flushed write per row. Safe to
// share between threads.
class CsvWriter {
 public:
  // Truncates `path` and writes the header.
  explicit CsvWriter(const std::filesystem::path& path);
  void append(const CsvRow& row);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mu_;
};

struct RunSpec {
  GameId game;
  std::string algo;
  std::vector<std::uint64_t> seeds = {0};
  int iterations = 1000;  // tabular only; deep runs read the config
  bool geometric = true;  // evaluate at t = 1, 2, 4, ... and T
  RunConfig deep;         // deep only
};

struct ExperimentSpec {
  std::filesystem::path output = "results";
  std::vector<RunSpec> runs;
  bool wall_time = true;
};

ExperimentSpec parse_experiment(std::string_view yaml,
                                const std::filesystem::path& base_dir = ".");
ExperimentSpec load_experiment(const std::filesystem::path& path);

// REGRET_FORGE_OUT when set, else `fallback`.
std::filesystem::path output_root(const std::filesystem::path& fallback);

// File stems used for a (game, algo) CSV and a seed's policy checkpoint.
std::string run_stem(const GameId& game, std::string_view algo);

// Tabular solve with geometric checkpoints; writes the average policy to
// `policy_path` (skipped when empty). Returns the final exploitability.
double run_tabular(const GameId& game, std::string_view algo, int iterations,
                   std::uint64_t seed, CsvWriter& csv,
                   const std::filesystem::path& policy_path, bool wall_time,
                   bool geometric = true);

// Neural solve; saves ψ to `network_path` (skipped when empty).
double run_deep(const RunConfig& config, std::string_view algo, CsvWriter& csv,
                const std::filesystem::path& network_path, bool wall_time);

// Runs every (run, seed) pair on up to `jobs` threads. Returns the CSV
// paths, one per (game, algo).
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  int jobs);

// Tabular text policy, or a ψ checkpoint evaluated on every infoset.
TabularPolicy load_any_policy(const GameTree& tree,
                              const std::filesystem::path& path);

// Head-to-head seat from `policy:FILE` or `rule:STYLE`.
PlayPolicy make_player(const GameTree& tree, std::string_view spec);

// `a,b,mean,ci,n` without a trailing newline.
std::string format_match(std::string_view a, std::string_view b,
                         const MatchResult& result);

}  // namespace regret_forge::harness

#endif  // REGRET_FORGE_HARNESS_HPP_
