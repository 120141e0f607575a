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

// Command line driver: stats, tabular, deep, eval, h2h and run.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "regret_forge/exploitability.hpp"
#include "regret_forge/game.hpp"
#include "regret_forge/game_tree.hpp"
#include "regret_forge/harness.hpp"
#include "regret_forge/rule_agents.hpp"

namespace rf = regret_forge;
namespace hx = regret_forge::harness;

namespace {

std::filesystem::path out_dir(const std::string& flag) {
  return flag.empty() ? hx::output_root("results")
                      : std::filesystem::path(flag);
}

void print_value(const char* label, double v) {
  std::printf("%s %.10g\n", label, v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regret_forge: tabular and neural CFR experiments"};
  app.require_subcommand(1);

  std::string game_name;
  std::string algo;
  std::string out;
  std::uint64_t seed = 0;
  bool no_wall_time = false;

  auto* stats = app.add_subcommand("stats", "Print game size statistics");
  stats->add_option("--game", game_name, "Game id, e.g. leduc")->required();

  int iters = 1000;
  std::string schedule = "geometric";
  auto* tabular = app.add_subcommand("tabular", "Run a tabular CFR variant");
  tabular->add_option("--game", game_name)->required();
  tabular->add_option("--algo", algo, "cfr | cfr+ | linear | dcfr | dcfr+ | pcfr+ | pdcfr+[:k=v,..]")
      ->required();
  tabular->add_option("--iters", iters)->check(CLI::PositiveNumber);
  tabular->add_option("--seed", seed, "Recorded in the CSV only");
  tabular->add_option("--eval", schedule)
      ->check(CLI::IsMember({"geometric", "final"}));

  std::string config_path;
  int deep_iters = 0;
  int traversals = 0;
  auto* deep = app.add_subcommand("deep", "Run a neural CFR variant");
  deep->add_option("--game", game_name)->required();
  deep->add_option("--algo", algo)->required();
  deep->add_option("--config", config_path, "YAML run config")
      ->check(CLI::ExistingFile);
  deep->add_option("--seed", seed);
  deep->add_option("--iters", deep_iters, "Override iterations")
      ->check(CLI::PositiveNumber);
  deep->add_option("--traversals", traversals, "Override traversals")
      ->check(CLI::PositiveNumber);

  for (auto* sub : {tabular, deep}) {
    sub->add_option("--out", out, "Output directory (default $REGRET_FORGE_OUT or results)");
    sub->add_flag("--no-wall-time", no_wall_time, "Record zero wall time");
  }

  std::string policy_path;
  auto* eval = app.add_subcommand("eval", "Exploitability of a policy file");
  eval->add_option("--game", game_name)->required();
  eval->add_option("--policy", policy_path)->required()->check(CLI::ExistingFile);

  std::string a_spec;
  std::string b_spec;
  std::int64_t hands = 20000;
  bool header = false;
  auto* h2h = app.add_subcommand("h2h", "Head-to-head match");
  h2h->add_option("--game", game_name)->required();
  h2h->add_option("--a", a_spec, "policy:FILE or rule:STYLE")->required();
  h2h->add_option("--b", b_spec, "policy:FILE or rule:STYLE")->required();
  h2h->add_option("--n", hands)->check(CLI::PositiveNumber);
  h2h->add_option("--seed", seed);
  h2h->add_flag("--header", header, "Print the column names first");

  std::string spec_path;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Run an experiment spec");
  run->add_option("--spec", spec_path)->required()->check(CLI::ExistingFile);
  run->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  run->add_flag("--no-wall-time", no_wall_time, "Record zero wall time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) {
      const auto game = rf::new_game(rf::GameId::parse(game_name));
      const auto s = rf::enumerate_stats(*game);
      std::printf("game,histories,infosets,terminals,depth,max_infoset_size\n");
      std::printf("%s,%lld,%lld,%lld,%d,%d\n", game->name().c_str(),
                  static_cast<long long>(s.num_histories),
                  static_cast<long long>(s.num_infosets),
                  static_cast<long long>(s.num_terminals), s.depth,
                  s.max_infoset_size);
    } else if (*tabular) {
      const auto id = rf::GameId::parse(game_name);
      const auto dir = out_dir(out);
      const auto stem = hx::run_stem(id, algo);
      hx::CsvWriter csv(dir / (stem + ".csv"));
      const double e = hx::run_tabular(
          id, algo, iters, seed, csv,
          dir / (stem + "__seed" + std::to_string(seed) + ".policy"),
          !no_wall_time, schedule == "geometric");
      print_value("exploitability", e);
    } else if (*deep) {
      const auto id = rf::GameId::parse(game_name);
      rf::RunConfig cfg = config_path.empty()
                              ? hx::parse_run_config("", algo, id)
                              : hx::load_run_config(config_path, algo, id);
      cfg.seed = seed;
      if (deep_iters > 0) cfg.iterations = deep_iters;
      if (traversals > 0) cfg.traversals = traversals;
      const auto dir = out_dir(out);
      const auto stem = hx::run_stem(id, algo);
      hx::CsvWriter csv(dir / (stem + ".csv"));
      const double e = hx::run_deep(
          cfg, algo, csv, dir / (stem + "__seed" + std::to_string(seed) + ".mlp"),
          !no_wall_time);
      print_value("exploitability", e);
    } else if (*eval) {
      const rf::GameTree tree(rf::new_game(rf::GameId::parse(game_name)));
      print_value("exploitability",
                  rf::exploitability(tree, hx::load_any_policy(tree, policy_path)));
    } else if (*h2h) {
      const rf::GameTree tree(rf::new_game(rf::GameId::parse(game_name)));
      const auto a = hx::make_player(tree, a_spec);
      const auto b = hx::make_player(tree, b_spec);
      const auto result = rf::head2head(tree.game(), a, b, hands, seed);
      if (header) std::printf("a,b,mean,ci,n\n");
      std::printf("%s\n", hx::format_match(a_spec, b_spec, result).c_str());
    } else if (*run) {
      auto spec = hx::load_experiment(spec_path);
      if (no_wall_time) spec.wall_time = false;
      for (const auto& path : hx::run_experiment(spec, jobs)) {
        std::printf("%s\n", path.string().c_str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
