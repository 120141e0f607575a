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

// Model-free neural CFR: VR-DeepDCFR+, VR-DeepPDCFR+ and their ablations.

#ifndef REGRET_FORGE_DEEP_SOLVERS_HPP_
#define REGRET_FORGE_DEEP_SOLVERS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regret_forge/buffers.hpp"
#include "regret_forge/game.hpp"
#include "regret_forge/game_tree.hpp"
#include "regret_forge/nn.hpp"
#include "regret_forge/policy.hpp"

namespace regret_forge {

enum class DeepVariantKind {
  kVrDeepDcfrPlus,
  kVrDeepPdcfrPlus,
  kVrDeepCfr,
  kVrDeepLinearCfr,
  kDeepPdcfrPlusNoBaseline,
};

struct DeepVariant {
  DeepVariantKind kind = DeepVariantKind::kVrDeepPdcfrPlus;
  double alpha = 2.3;
  double gamma = 2.0;
  bool uses_prediction = true;
  bool uses_baseline = true;
  DiscountKind discount = DiscountKind::kDcfrPlus;
  bool clipped = true;

  static DeepVariant defaults(DeepVariantKind kind);
  // vr_deep_dcfr_plus | vr_deep_pdcfr_plus | vr_deep_cfr |
  // vr_deep_linear_cfr | deep_pdcfr_plus_no_baseline.
  static DeepVariant parse(std::string_view name);
  std::string_view name() const;
};

struct NetworkTraining {
  int steps = 750;
  int batch_size = 2048;
};

struct RunConfig {
  GameId game;
  DeepVariant variant;
  int iterations = 100;
  int traversals = 10000;  // per player per iteration
  double epsilon = 0.6;
  double learning_rate = 0.001;
  std::size_t advantage_buffer_size = 1000000;
  std::size_t policy_buffer_size = 1000000;
  std::size_t value_buffer_size = 1000000;
  NetworkTraining advantage{750, 2048};
  NetworkTraining policy{5000, 2048};
  NetworkTraining value{10000, 2048};
  int num_layers = 3;
  int num_hiddens = 64;
  std::uint64_t seed = 0;
  // Evaluate at t = 1, 2, 4, ... and T; otherwise only at T.
  bool geometric_checkpoints = true;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct RunLogRow {
  int iteration = 0;
  std::int64_t episodes = 0;
  double exploitability = 0.0;
  double wall_time_s = 0.0;
};

struct RunLog {
  std::vector<RunLogRow> rows;
};

// σ^t(I) from network rows restricted to the legal actions. `theta` holds
// R(I, ·|θ^{t-1}); `phi` holds r(I, ·|φ^{t-1}) and is ignored by
// non-predictive variants. σ^1 is uniform.
std::vector<double> deep_strategy(const DeepVariant& variant,
                                  std::span<const double> theta,
                                  std::span<const double> phi, int t);

// û + Σ σ'(a') Q(h', a'), or û at a terminal successor.
double q_training_target(const TransitionSample& sample,
                         std::span<const double> next_strategy,
                         std::span<const double> next_q);

// Iterations at which a run is evaluated.
std::vector<int> checkpoint_iterations(int total, bool geometric);

// Average policy of ψ over every infoset of the tree.
TabularPolicy policy_from_network(const GameTree& tree, const Mlp& net);

class DeepSolver {
 public:
  explicit DeepSolver(RunConfig config);
  // Solves `game` instead of the one named by config.game.
  DeepSolver(RunConfig config, std::shared_ptr<const Game> game);

  const RunConfig& config() const { return config_; }
  const GameTree& tree() const { return *tree_; }
  int iteration() const { return t_; }
  std::int64_t episodes() const { return episodes_; }

  // Runs iteration t + 1: data collection and advantage/value training for
  // both players.
  void iterate();

  // σ^{t+1}(I) from the current networks.
  std::vector<double> current_strategy(const InfoSetId& info) const;

  // Trains a fresh ψ on the strategy buffer with horizon `total`.
  Mlp train_average_policy(int total) const;

  const Mlp& advantage_network(Player p) const { return theta_[static_cast<std::size_t>(p)]; }
  const Mlp& value_network() const { return omega_; }
  std::size_t policy_buffer_size() const { return strategies_.size(); }
  std::size_t value_buffer_size() const { return transitions_.size(); }
  std::size_t advantage_buffer_size(Player p) const {
    return advantages_[static_cast<std::size_t>(p)].size();
  }

 private:
  class Model;

  void collect(Player traverser, const Model& model);
  void train_advantages(Player p, int t, const Mlp& frozen_theta);
  void train_instantaneous(Player p, int t);
  void train_value(int t);
  MlpSpec spec(int input) const;
  std::uint64_t stream(std::uint64_t tag, std::uint64_t a, std::uint64_t b = 0) const;

  RunConfig config_;
  std::shared_ptr<const Game> game_;
  std::unique_ptr<GameTree> tree_;
  int t_ = 0;
  std::int64_t episodes_ = 0;
  int num_actions_ = 0;
  std::array<Mlp, kNumPlayers> theta_;
  std::array<Mlp, kNumPlayers> phi_;
  std::vector<Adam> theta_opt_;
  Mlp omega_;
  std::vector<Adam> omega_opt_;  // empty without a baseline
  std::vector<PerIterationBuffer<AdvantageSample>> advantages_;
  ReservoirBuffer<StrategySample> strategies_;
  CircularBuffer<TransitionSample> transitions_;
  Rng reservoir_rng_;
};

struct RunResult {
  Mlp average_policy;
  RunLog log;
};

// Full training run. `on_row` sees each log row as it is produced.
// `wall_clock` false records zero wall time.
RunResult run(const RunConfig& config,
              const std::function<void(const RunLogRow&)>& on_row = {},
              bool wall_clock = true);
RunResult run(const RunConfig& config, std::shared_ptr<const Game> game,
              const std::function<void(const RunLogRow&)>& on_row = {},
              bool wall_clock = true);

}  // namespace regret_forge

#endif  // REGRET_FORGE_DEEP_SOLVERS_HPP_
