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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "regret_forge/cfr.hpp"
#include "regret_forge/deep_solvers.hpp"
#include "regret_forge/exploitability.hpp"
#include "regret_forge/game_tree.hpp"
#include "regret_forge/harness.hpp"
#include "regret_forge/rule_agents.hpp"

namespace py = pybind11;
namespace rf = regret_forge;

namespace {

using PolicyDict = std::map<std::string, std::vector<double>>;
using LogRow = std::tuple<int, std::int64_t, double, double>;

std::shared_ptr<const rf::GameTree> tree_of(const std::string& game) {
  return std::make_shared<const rf::GameTree>(
      rf::new_game(rf::GameId::parse(game)));
}

rf::TabularPolicy to_policy(const PolicyDict& dict) {
  rf::TabularPolicy policy;
  for (const auto& [key, probs] : dict) policy.set(key, probs);
  return policy;
}

PolicyDict to_dict(const rf::TabularPolicy& policy) {
  return PolicyDict(policy.table().begin(), policy.table().end());
}

rf::PlayPolicy player(const rf::GameTree& tree,
                      const std::variant<std::string, PolicyDict>& spec) {
  if (const auto* text = std::get_if<std::string>(&spec)) {
    return rf::harness::make_player(tree, *text);
  }
  return rf::table_player(to_policy(std::get<PolicyDict>(spec)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tabular and neural CFR solvers for two-player zero-sum games";

  py::register_exception<rf::GameError>(m, "GameError", PyExc_ValueError);
  py::register_exception<rf::harness::ConfigError>(m, "ConfigError",
                                                   PyExc_ValueError);
  py::register_exception<rf::BufferError>(m, "BufferError",
                                          PyExc_RuntimeError);

  m.attr("CSV_HEADER") = std::string(rf::harness::kCsvHeader);

  py::class_<rf::GameStats>(m, "GameStats")
      .def_readonly("num_histories", &rf::GameStats::num_histories)
      .def_readonly("num_infosets", &rf::GameStats::num_infosets)
      .def_readonly("num_terminals", &rf::GameStats::num_terminals)
      .def_readonly("depth", &rf::GameStats::depth)
      .def_readonly("max_infoset_size", &rf::GameStats::max_infoset_size)
      .def("__repr__", [](const rf::GameStats& s) {
        return "GameStats(histories=" + std::to_string(s.num_histories) +
               ", infosets=" + std::to_string(s.num_infosets) +
               ", terminals=" + std::to_string(s.num_terminals) +
               ", depth=" + std::to_string(s.depth) +
               ", max_infoset_size=" + std::to_string(s.max_infoset_size) +
               ")";
      });

  m.def(
      "game_stats",
      [](const std::string& game) {
        return rf::enumerate_stats(*rf::new_game(rf::GameId::parse(game)));
      },
      py::arg("game"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "infosets",
      [](const std::string& game) {
        const auto tree = tree_of(game);
        std::vector<std::pair<std::string, int>> out;
        for (const auto& set : tree->infosets()) {
          out.emplace_back(set.id.key, set.num_actions());
        }
        return out;
      },
      py::arg("game"), "Infoset keys with their action counts.");

  m.def(
      "regret_matching",
      [](const std::vector<double>& r) { return rf::regret_matching(r); },
      py::arg("regrets"));
  m.def("discount_multiplier", &rf::discount_multiplier, py::arg("t"),
        py::arg("exponent"));

  m.def(
      "solve_tabular",
      [](const std::string& game, const std::string& algo, int iterations) {
        const auto rule = rf::RegretUpdateRule::parse(algo);
        const auto checkpoints = rf::checkpoint_iterations(iterations, true);
        rf::CfrRun run;
        {
          py::gil_scoped_release release;
          run = rf::run_cfr(tree_of(game), rule, iterations, [&](int t) {
            return std::binary_search(checkpoints.begin(), checkpoints.end(),
                                      t);
          });
        }
        std::vector<std::pair<int, double>> log;
        for (const auto& e : run.log) log.emplace_back(e.iteration, e.exploitability);
        return std::make_pair(to_dict(run.average), log);
      },
      py::arg("game"), py::arg("algo"), py::arg("iterations"),
      "Average policy and (iteration, exploitability) at t = 1, 2, 4, ..., T.");

  m.def(
      "exploitability",
      [](const std::string& game, const PolicyDict& policy) {
        return rf::exploitability(*tree_of(game), to_policy(policy));
      },
      py::arg("game"), py::arg("policy"),
      "Mean best-response gain; missing infosets play uniformly.");

  m.def(
      "load_policy",
      [](const std::string& game, const std::filesystem::path& path) {
        return to_dict(rf::harness::load_any_policy(*tree_of(game), path));
      },
      py::arg("game"), py::arg("path"));

  py::class_<rf::RunConfig>(m, "RunConfig")
      .def_property_readonly("game",
                             [](const rf::RunConfig& c) { return c.game.to_string(); })
      .def_property_readonly(
          "algo",
          [](const rf::RunConfig& c) { return std::string(c.variant.name()); })
      .def_property(
          "alpha", [](const rf::RunConfig& c) { return c.variant.alpha; },
          [](rf::RunConfig& c, double v) { c.variant.alpha = v; })
      .def_property(
          "gamma", [](const rf::RunConfig& c) { return c.variant.gamma; },
          [](rf::RunConfig& c, double v) { c.variant.gamma = v; })
      .def_readwrite("iterations", &rf::RunConfig::iterations)
      .def_readwrite("traversals", &rf::RunConfig::traversals)
      .def_readwrite("epsilon", &rf::RunConfig::epsilon)
      .def_readwrite("learning_rate", &rf::RunConfig::learning_rate)
      .def_readwrite("num_layers", &rf::RunConfig::num_layers)
      .def_readwrite("num_hiddens", &rf::RunConfig::num_hiddens)
      .def_readwrite("seed", &rf::RunConfig::seed);

  m.def(
      "parse_run_config",
      [](const std::string& text, const std::string& algo,
         const std::string& game) {
        return rf::harness::parse_run_config(text, algo,
                                             rf::GameId::parse(game));
      },
      py::arg("text"), py::arg("algo"), py::arg("game"));
  m.def(
      "load_run_config",
      [](const std::filesystem::path& path, const std::string& algo,
         const std::string& game) {
        return rf::harness::load_run_config(path, algo,
                                            rf::GameId::parse(game));
      },
      py::arg("path"), py::arg("algo"), py::arg("game"));

  m.def(
      "run_deep",
      [](const rf::RunConfig& config, bool wall_clock) {
        rf::RunResult result;
        std::shared_ptr<const rf::GameTree> tree;
        {
          py::gil_scoped_release release;
          config.validate();
          result = rf::run(config, {}, wall_clock);
          tree = tree_of(config.game.to_string());
        }
        std::vector<LogRow> log;
        for (const auto& r : result.log.rows) {
          log.emplace_back(r.iteration, r.episodes, r.exploitability,
                           r.wall_time_s);
        }
        return std::make_pair(
            to_dict(rf::policy_from_network(*tree, result.average_policy)),
            log);
      },
      py::arg("config"), py::arg("wall_clock") = false,
      "Average policy and (iteration, episodes, exploitability, wall_time_s) "
      "rows.");

  m.def(
      "win_rate",
      [](const std::string& key) {
        const auto tree = tree_of("leduc");
        const int id = tree->find_infoset(key);
        if (id < 0) throw rf::GameError("unknown Leduc infoset '" + key + "'");
        return rf::win_rate(tree->game(), tree->infoset(id).id);
      },
      py::arg("infoset_key"));

  m.def(
      "head2head",
      [](const std::string& game,
         const std::variant<std::string, PolicyDict>& a,
         const std::variant<std::string, PolicyDict>& b, std::int64_t n,
         std::uint64_t seed) {
        const auto tree = tree_of(game);
        const auto pa = player(*tree, a);
        const auto pb = player(*tree, b);
        py::gil_scoped_release release;
        const auto r = rf::head2head(tree->game(), pa, pb, n, seed);
        return std::make_tuple(r.mean, r.half_width, r.hands);
      },
      py::arg("game"), py::arg("a"), py::arg("b"), py::arg("n"),
      py::arg("seed") = 0,
      "Players are policy dicts or 'policy:FILE' / 'rule:STYLE' strings. "
      "Returns (mean, half_width, hands) for a.");

  m.def(
      "run_experiment",
      [](const std::filesystem::path& spec_path, int jobs, bool wall_time) {
        auto spec = rf::harness::load_experiment(spec_path);
        if (!wall_time) spec.wall_time = false;
        py::gil_scoped_release release;
        return rf::harness::run_experiment(spec, jobs);
      },
      py::arg("spec"), py::arg("jobs") = 1, py::arg("wall_time") = true,
      "Runs a YAML experiment spec and returns the CSV paths.");
}
