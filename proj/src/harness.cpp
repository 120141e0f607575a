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

#include "regret_forge/harness.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "regret_forge/cfr.hpp"
#include "regret_forge/exploitability.hpp"

namespace regret_forge::harness {
namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) {
    throw ConfigError("'" + (path.empty() ? std::string("<root>") : path) +
                      "' must be a mapping");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ConfigError("'" + path + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + path + "' has an invalid value '" +
                      node.Scalar() + "'");
  }
}

long long positive_int(const YAML::Node& node, const std::string& path) {
  const auto v = scalar<long long>(node, path);
  if (v < 1) {
    throw ConfigError("'" + path + "' must be positive, got " +
                      std::to_string(v));
  }
  return v;
}

double positive_real(const YAML::Node& node, const std::string& path) {
  const auto v = scalar<double>(node, path);
  if (!(v > 0.0)) throw ConfigError("'" + path + "' must be positive");
  return v;
}

double nonnegative_real(const YAML::Node& node, const std::string& path) {
  const auto v = scalar<double>(node, path);
  if (!(v >= 0.0)) throw ConfigError("'" + path + "' must be nonnegative");
  return v;
}

bool eval_schedule(const YAML::Node& node, const std::string& path) {
  const auto v = scalar<std::string>(node, path);
  if (v == "geometric") return true;
  if (v == "final") return false;
  throw ConfigError("'" + path + "' must be geometric or final, got '" + v +
                    "'");
}

[[noreturn]] void unknown_key(const std::string& path) {
  throw ConfigError("unknown config key '" + path + "'");
}

void apply_training(const YAML::Node& node, const std::string& path,
                    NetworkTraining& out) {
  require_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto where = join(path, key);
    if (key == "train_steps") {
      out.steps = static_cast<int>(positive_int(kv.second, where));
    } else if (key == "batch_size") {
      out.batch_size = static_cast<int>(positive_int(kv.second, where));
    } else {
      unknown_key(where);
    }
  }
}

void apply_networks(const YAML::Node& node, const std::string& path,
                    RunConfig& cfg) {
  require_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto where = join(path, key);
    if (key == "num_layers") {
      cfg.num_layers = static_cast<int>(positive_int(kv.second, where));
    } else if (key == "num_hiddens") {
      cfg.num_hiddens = static_cast<int>(positive_int(kv.second, where));
    } else if (key == "advantage") {
      apply_training(kv.second, where, cfg.advantage);
    } else if (key == "policy") {
      apply_training(kv.second, where, cfg.policy);
    } else if (key == "value") {
      apply_training(kv.second, where, cfg.value);
    } else {
      unknown_key(where);
    }
  }
}

void apply_buffers(const YAML::Node& node, const std::string& path,
                   RunConfig& cfg) {
  require_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto where = join(path, key);
    const auto size = static_cast<std::size_t>(positive_int(kv.second, where));
    if (key == "advantage") {
      cfg.advantage_buffer_size = size;
    } else if (key == "policy") {
      cfg.policy_buffer_size = size;
    } else if (key == "value") {
      cfg.value_buffer_size = size;
    } else {
      unknown_key(where);
    }
  }
}

// Applies a run-config mapping on top of `cfg`.
void apply_run_config(const YAML::Node& node, const std::string& path,
                      std::string_view algo, RunConfig& cfg) {
  if (!node || node.IsNull()) return;
  require_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const auto where = join(path, key);
    const YAML::Node& v = kv.second;
    if (key == "game") {
      const auto name = scalar<std::string>(v, where);
      GameId id;
      try {
        id = GameId::parse(name);
      } catch (const std::exception& e) {
        throw ConfigError("'" + where + "': " + e.what());
      }
      if (!(id == cfg.game)) {
        throw ConfigError("config is for game " + id.to_string() +
                          ", not " + cfg.game.to_string());
      }
    } else if (key == "algo") {
      const auto name = scalar<std::string>(v, where);
      if (name != algo) {
        throw ConfigError("config is for algo " + name + ", not " +
                          std::string(algo));
      }
    } else if (key == "iterations") {
      cfg.iterations = static_cast<int>(positive_int(v, where));
    } else if (key == "traversals") {
      cfg.traversals = static_cast<int>(positive_int(v, where));
    } else if (key == "epsilon") {
      const auto e = scalar<double>(v, where);
      if (!(e > 0.0 && e <= 1.0)) {
        throw ConfigError("'" + where + "' must be in (0, 1], got " +
                          v.Scalar());
      }
      cfg.epsilon = e;
    } else if (key == "learning_rate") {
      cfg.learning_rate = positive_real(v, where);
    } else if (key == "alpha") {
      cfg.variant.alpha = nonnegative_real(v, where);
    } else if (key == "gamma") {
      cfg.variant.gamma = nonnegative_real(v, where);
    } else if (key == "seed") {
      cfg.seed = scalar<std::uint64_t>(v, where);
    } else if (key == "eval_schedule") {
      cfg.geometric_checkpoints = eval_schedule(v, where);
    } else if (key == "buffers") {
      apply_buffers(v, where, cfg);
    } else if (key == "networks") {
      apply_networks(v, where, cfg);
    } else {
      unknown_key(where);
    }
  }
}

RunConfig default_run_config(std::string_view algo, const GameId& game) {
  RunConfig cfg;
  cfg.game = game;
  try {
    cfg.variant = DeepVariant::parse(algo);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

void check_valid(const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

YAML::Node parse_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
}

YAML::Node load_yaml(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_yaml(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// RFC 4180 quoting for fields holding a comma, quote or newline.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

bool is_deep_algorithm(std::string_view algo) {
  try {
    DeepVariant::parse(algo);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

RunConfig parse_run_config(std::string_view yaml, std::string_view algo,
                           const GameId& game) {
  RunConfig cfg = default_run_config(algo, game);
  apply_run_config(parse_yaml(yaml), "", algo, cfg);
  check_valid(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path,
                          std::string_view algo, const GameId& game) {
  RunConfig cfg = default_run_config(algo, game);
  try {
    apply_run_config(load_yaml(path), "", algo, cfg);
    check_valid(cfg);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ConfigError(path.string() + ": " + what);
  }
  return cfg;
}

std::string format_row(const CsvRow& row) {
  char numbers[96];
  std::snprintf(numbers, sizeof(numbers), "%.10g,%.3f", row.exploitability,
                row.wall_time_s);
  return csv_field(row.game) + "," + csv_field(row.algo) + "," +
         std::to_string(row.seed) + "," +
         std::to_string(row.iteration) + "," + std::to_string(row.episodes) +
         "," + numbers;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create " +
                               path.parent_path().string() + ": " +
                               ec.message());
    }
  }
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + path.string());
  out_ << kCsvHeader << '\n' << std::flush;
}

void CsvWriter::append(const CsvRow& row) {
  if (!(row.exploitability >= 0.0)) {
    throw std::runtime_error("negative or NaN exploitability in " +
                             path_.string());
  }
  const std::string line = format_row(row) + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw std::runtime_error("write failed for " + path_.string());
}

ExperimentSpec parse_experiment(std::string_view yaml,
                                const std::filesystem::path& base_dir) {
  const YAML::Node root = parse_yaml(yaml);
  ExperimentSpec spec;
  if (!root || root.IsNull()) throw ConfigError("experiment has no runs");
  require_map(root, "");
  bool geometric = true;
  YAML::Node runs;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key == "output") {
      spec.output = scalar<std::string>(kv.second, key);
    } else if (key == "wall_time") {
      spec.wall_time = scalar<bool>(kv.second, key);
    } else if (key == "eval_schedule") {
      geometric = eval_schedule(kv.second, key);
    } else if (key == "runs") {
      runs = kv.second;
    } else {
      unknown_key(key);
    }
  }
  if (!runs || !runs.IsSequence() || runs.size() == 0) {
    throw ConfigError("'runs' must be a nonempty list");
  }
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::string at = "runs[" + std::to_string(r) + "]";
    const YAML::Node node = runs[r];
    require_map(node, at);
    if (!node["game"] || !node["algo"]) {
      throw ConfigError(at + " needs 'game' and 'algo'");
    }
    RunSpec run;
    try {
      run.game = GameId::parse(scalar<std::string>(node["game"], at + ".game"));
    } catch (const GameError& e) {
      throw ConfigError(at + ".game: " + e.what());
    }
    run.algo = scalar<std::string>(node["algo"], at + ".algo");
    const bool deep = is_deep_algorithm(run.algo);
    if (!deep) {
      try {
        RegretUpdateRule::parse(run.algo).validate();
      } catch (const std::exception& e) {
        throw ConfigError(at + ".algo: " + e.what());
      }
    }
    run.geometric = geometric;
    run.deep = deep ? default_run_config(run.algo, run.game) : RunConfig{};
    run.deep.geometric_checkpoints = geometric;
    bool has_iterations = false;
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      const auto where = at + "." + key;
      if (key == "game" || key == "algo") continue;
      if (key == "seeds") {
        if (!kv.second.IsSequence() || kv.second.size() == 0) {
          throw ConfigError("'" + where + "' must be a nonempty list");
        }
        run.seeds.clear();
        std::set<std::uint64_t> seen;
        for (std::size_t s = 0; s < kv.second.size(); ++s) {
          const auto seed = scalar<std::uint64_t>(
              kv.second[s], where + "[" + std::to_string(s) + "]");
          if (!seen.insert(seed).second) {
            throw ConfigError("'" + where + "' repeats seed " +
                              std::to_string(seed));
          }
          run.seeds.push_back(seed);
        }
      } else if (key == "iterations") {
        run.iterations = static_cast<int>(positive_int(kv.second, where));
        has_iterations = true;
      } else if (key == "config") {
        if (!deep) {
          throw ConfigError("'" + where + "' applies to deep algorithms only");
        }
        if (kv.second.IsScalar()) {
          const std::filesystem::path file =
              base_dir / scalar<std::string>(kv.second, where);
          try {
            apply_run_config(load_yaml(file), "", run.algo, run.deep);
          } catch (const ConfigError& e) {
            throw ConfigError(where + " (" + file.string() + "): " + e.what());
          }
        } else {
          apply_run_config(kv.second, where, run.algo, run.deep);
        }
      } else {
        unknown_key(where);
      }
    }
    if (deep) {
      if (has_iterations) run.deep.iterations = run.iterations;
      try {
        check_valid(run.deep);
      } catch (const ConfigError& e) {
        throw ConfigError(at + ": " + e.what());
      }
    }
    spec.runs.push_back(std::move(run));
  }
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_experiment(text.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::filesystem::path output_root(const std::filesystem::path& fallback) {
  const char* env = std::getenv("REGRET_FORGE_OUT");
  if (env != nullptr && *env != '\0') return env;
  return fallback;
}

std::string run_stem(const GameId& game, std::string_view algo) {
  std::string stem = game.to_string() + "__" + std::string(algo);
  for (char& c : stem) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) ||
                      c == '_' || c == '-' || c == '+' || c == '.';
    if (!keep) c = '_';
  }
  return stem;
}

double run_tabular(const GameId& game, std::string_view algo, int iterations,
                   std::uint64_t seed, CsvWriter& csv,
                   const std::filesystem::path& policy_path, bool wall_time,
                   bool geometric) {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  auto tree = std::make_shared<const GameTree>(new_game(game));
  CfrSolver solver(tree, RegretUpdateRule::parse(algo));
  const auto checkpoints = checkpoint_iterations(iterations, geometric);
  std::size_t next = 0;
  double last = 0.0;
  while (solver.iteration() < iterations) {
    solver.iterate();
    if (next < checkpoints.size() && solver.iteration() == checkpoints[next]) {
      ++next;
      const auto avg = solver.average_flat();
      last = exploitability(*tree, avg);
      CsvRow row;
      row.game = game.to_string();
      row.algo = std::string(algo);
      row.seed = seed;
      row.iteration = solver.iteration();
      row.episodes = solver.iteration();
      row.exploitability = last;
      row.wall_time_s = wall_time ? seconds_since(start) : 0.0;
      csv.append(row);
    }
  }
  if (!policy_path.empty()) solver.average_policy().save(policy_path.string());
  return last;
}

double run_deep(const RunConfig& config, std::string_view algo, CsvWriter& csv,
                const std::filesystem::path& network_path, bool wall_time) {
  double last = 0.0;
  const auto on_row = [&](const RunLogRow& r) {
    CsvRow row;
    row.game = config.game.to_string();
    row.algo = std::string(algo);
    row.seed = config.seed;
    row.iteration = r.iteration;
    row.episodes = r.episodes;
    row.exploitability = r.exploitability;
    row.wall_time_s = r.wall_time_s;
    last = r.exploitability;
    csv.append(row);
  };
  const RunResult result = run(config, on_row, wall_time);
  if (!network_path.empty()) {
    result.average_policy.save(network_path.string(), kFeatureEncodingVersion);
  }
  return last;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  int jobs) {
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  const std::filesystem::path root = output_root(spec.output);

  struct Task {
    const RunSpec* run;
    std::uint64_t seed;
    CsvWriter* csv;
  };
  std::vector<std::unique_ptr<CsvWriter>> writers;
  std::vector<std::filesystem::path> paths;
  std::vector<std::string> stems;
  std::vector<Task> tasks;
  for (const auto& run : spec.runs) {
    const std::string stem = run_stem(run.game, run.algo);
    auto it = std::find(stems.begin(), stems.end(), stem);
    CsvWriter* csv;
    if (it == stems.end()) {
      stems.push_back(stem);
      paths.push_back(root / (stem + ".csv"));
      writers.push_back(std::make_unique<CsvWriter>(paths.back()));
      csv = writers.back().get();
    } else {
      csv = writers[static_cast<std::size_t>(it - stems.begin())].get();
    }
    for (auto seed : run.seeds) tasks.push_back({&run, seed, csv});
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::string error;
  const auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error.empty()) return;
      }
      const Task& task = tasks[k];
      const RunSpec& run = *task.run;
      const std::string seed_stem = run_stem(run.game, run.algo) + "__seed" +
                                    std::to_string(task.seed);
      try {
        if (is_deep_algorithm(run.algo)) {
          RunConfig cfg = run.deep;
          cfg.seed = task.seed;
          run_deep(cfg, run.algo, *task.csv, root / (seed_stem + ".mlp"),
                   spec.wall_time);
        } else {
          run_tabular(run.game, run.algo, run.iterations, task.seed, *task.csv,
                      root / (seed_stem + ".policy"), spec.wall_time,
                      run.geometric);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (error.empty()) {
          error = run.game.to_string() + "/" + run.algo + "/seed " +
                  std::to_string(task.seed) + ": " + e.what();
        }
      }
    }
  };
  const int threads =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                             tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!error.empty()) throw std::runtime_error(error);
  return paths;
}

TabularPolicy load_any_policy(const GameTree& tree,
                              const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open policy " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  in.close();
  if (std::string_view(magic, 4) == "RMLP") {
    const Mlp net = Mlp::load(path.string(), kFeatureEncodingVersion);
    return policy_from_network(tree, net);
  }
  return TabularPolicy::load(path.string());
}

PlayPolicy make_player(const GameTree& tree, std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("player '" + std::string(spec) +
                      "' must be policy:FILE or rule:STYLE");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string arg(spec.substr(colon + 1));
  if (kind == "policy") return table_player(load_any_policy(tree, arg));
  if (kind == "rule") {
    return rule_player(tree.game_ptr(), AgentStyle::parse(arg));
  }
  throw ConfigError("unknown player kind '" + std::string(kind) + "'");
}

std::string format_match(std::string_view a, std::string_view b,
                         const MatchResult& result) {
  char numbers[64];
  std::snprintf(numbers, sizeof(numbers), "%.6f,%.6f", result.mean,
                result.half_width);
  return csv_field(std::string(a)) + "," + csv_field(std::string(b)) + "," +
         numbers + "," +
         std::to_string(result.hands);
}

}  // namespace regret_forge::harness
