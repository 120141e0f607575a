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

#include "regret_forge/deep_solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "regret_forge/cfr.hpp"
#include "regret_forge/exploitability.hpp"
#include "regret_forge/traversal.hpp"

namespace regret_forge {
namespace {

enum StreamTag : std::uint64_t {
  kTraversalStream = 1,
  kThetaInit,
  kThetaBatches,
  kPhiInit,
  kPhiBatches,
  kOmegaInit,
  kOmegaBatches,
  kPsiInit,
  kPsiBatches,
  kReservoirStream,
};

struct VariantInfo {
  DeepVariantKind kind;
  std::string_view name;
};

constexpr VariantInfo kVariants[] = {
    {DeepVariantKind::kVrDeepDcfrPlus, "vr_deep_dcfr_plus"},
    {DeepVariantKind::kVrDeepPdcfrPlus, "vr_deep_pdcfr_plus"},
    {DeepVariantKind::kVrDeepCfr, "vr_deep_cfr"},
    {DeepVariantKind::kVrDeepLinearCfr, "vr_deep_linear_cfr"},
    {DeepVariantKind::kDeepPdcfrPlusNoBaseline, "deep_pdcfr_plus_no_baseline"},
};

std::vector<double> head(const Matrix& out, Eigen::Index row, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) v[static_cast<std::size_t>(a)] = out(row, a);
  return v;
}

Matrix stack(const std::vector<const FeatureVector*>& rows, int width) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < width; ++c) m(static_cast<Eigen::Index>(r), c) = (*rows[r])[static_cast<std::size_t>(c)];
  }
  return m;
}

void require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("invalid run config: ") + field);
}

}  // namespace

DeepVariant DeepVariant::defaults(DeepVariantKind kind) {
  DeepVariant v;
  v.kind = kind;
  switch (kind) {
    case DeepVariantKind::kVrDeepDcfrPlus:
      v.alpha = 2.0;
      v.uses_prediction = false;
      break;
    case DeepVariantKind::kVrDeepPdcfrPlus:
      break;
    case DeepVariantKind::kVrDeepCfr:
      v.alpha = 0.0;
      v.gamma = 0.0;
      v.uses_prediction = false;
      v.discount = DiscountKind::kNone;
      v.clipped = false;
      break;
    case DeepVariantKind::kVrDeepLinearCfr:
      v.alpha = 0.0;
      v.gamma = 1.0;
      v.uses_prediction = false;
      v.discount = DiscountKind::kLinear;
      v.clipped = false;
      break;
    case DeepVariantKind::kDeepPdcfrPlusNoBaseline:
      v.uses_baseline = false;
      break;
  }
  return v;
}

DeepVariant DeepVariant::parse(std::string_view name) {
  for (const auto& info : kVariants) {
    if (info.name == name) return defaults(info.kind);
  }
  throw std::invalid_argument("unknown deep algorithm '" + std::string(name) + "'");
}

std::string_view DeepVariant::name() const {
  for (const auto& info : kVariants) {
    if (info.kind == kind) return info.name;
  }
  return "unknown";
}

void RunConfig::validate() const {
  require(iterations >= 1, "iterations");
  require(traversals >= 1, "traversals");
  require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon");
  require(std::isfinite(learning_rate) && learning_rate > 0.0, "learning_rate");
  require(advantage_buffer_size > 0, "advantage_buffer_size");
  require(policy_buffer_size > 0, "policy_buffer_size");
  require(value_buffer_size > 0, "value_buffer_size");
  for (const auto* n : {&advantage, &policy, &value}) {
    require(n->steps >= 1 && n->batch_size >= 1, "train steps / batch size");
  }
  require(num_layers >= 1, "num_layers");
  require(num_hiddens >= 1, "num_hiddens");
  require(std::isfinite(variant.alpha) && variant.alpha >= 0.0, "alpha");
  require(std::isfinite(variant.gamma) && variant.gamma >= 0.0, "gamma");
}

std::vector<double> deep_strategy(const DeepVariant& variant,
                                  std::span<const double> theta,
                                  std::span<const double> phi, int t) {
  if (theta.empty()) throw std::invalid_argument("empty advantage row");
  if (t <= 1) return std::vector<double>(theta.size(), 1.0 / static_cast<double>(theta.size()));
  if (!variant.uses_prediction) return regret_matching_argmax(theta);
  if (phi.size() != theta.size()) throw std::invalid_argument("prediction row length differs");
  const double d = discount_multiplier(t, variant.alpha);
  std::vector<double> predicted(theta.size());
  for (std::size_t a = 0; a < theta.size(); ++a) {
    predicted[a] = std::max(theta[a], 0.0) * d + phi[a];
  }
  return regret_matching_argmax(predicted);
}

double q_training_target(const TransitionSample& sample,
                         std::span<const double> next_strategy,
                         std::span<const double> next_q) {
  if (sample.terminal) return make_target_q(sample.utility, 0.0, true);
  if (next_strategy.size() != next_q.size()) {
    throw std::invalid_argument("successor strategy and Q rows differ in length");
  }
  double v = 0.0;
  for (std::size_t a = 0; a < next_q.size(); ++a) v += next_strategy[a] * next_q[a];
  return make_target_q(sample.utility, v, false);
}

std::vector<int> checkpoint_iterations(int total, bool geometric) {
  std::vector<int> out;
  if (geometric) {
    for (int t = 1; t < total; t *= 2) out.push_back(t);
  }
  out.push_back(total);
  return out;
}

TabularPolicy policy_from_network(const GameTree& tree, const Mlp& net) {
  const Game& game = tree.game();
  return extract_policy(tree, [&](const InfoSetId& info, int n) {
    const auto out = net.forward(game.encode_infoset(info));
    return std::vector<double>(out.begin(), out.begin() + n);
  });
}

// σ^t from frozen advantage networks and Q from the live value network, with
// per-iteration caches.
class DeepSolver::Model final : public TraversalModel {
 public:
  Model(const DeepSolver& solver, const std::array<Mlp, kNumPlayers>& theta,
        const std::array<Mlp, kNumPlayers>& phi, int t)
      : solver_(solver), theta_(theta), phi_(phi), t_(t) {}

  std::vector<double> strategy(const InfoSetId& info, int n) const override {
    auto it = strategies_.find(info.key);
    if (it != strategies_.end()) return it->second;
    std::vector<double> sigma;
    if (t_ == 1) {
      sigma.assign(static_cast<std::size_t>(n), 1.0 / n);
    } else {
      const auto features = solver_.game_->encode_infoset(info);
      const auto p = static_cast<std::size_t>(info.owner);
      const auto theta = theta_[p].forward(features);
      std::vector<double> phi;
      if (solver_.config_.variant.uses_prediction) {
        const auto out = phi_[p].forward(features);
        phi.assign(out.begin(), out.begin() + n);
      }
      sigma = deep_strategy(solver_.config_.variant,
                            std::span<const double>(theta).first(static_cast<std::size_t>(n)),
                            phi, t_);
    }
    return strategies_.emplace(info.key, std::move(sigma)).first->second;
  }

  std::vector<double> baseline(const History& h, int n) const override {
    std::vector<Action> key(h.actions().begin(), h.actions().end());
    auto it = baselines_.find(key);
    if (it != baselines_.end()) return it->second;
    const auto out = solver_.omega_.forward(solver_.game_->encode_history(h));
    std::vector<double> q(out.begin(), out.begin() + n);
    return baselines_.emplace(std::move(key), std::move(q)).first->second;
  }

  void reset_baselines() { baselines_.clear(); }

 private:
  const DeepSolver& solver_;
  const std::array<Mlp, kNumPlayers>& theta_;
  const std::array<Mlp, kNumPlayers>& phi_;
  int t_;
  mutable std::unordered_map<std::string, std::vector<double>> strategies_;
  mutable std::map<std::vector<Action>, std::vector<double>> baselines_;
};

DeepSolver::DeepSolver(RunConfig config)
    : DeepSolver(config, new_game(config.game)) {}

DeepSolver::DeepSolver(RunConfig config, std::shared_ptr<const Game> game)
    : config_(std::move(config)),
      game_(std::move(game)),
      strategies_(1),
      transitions_(1) {
  config_.validate();
  if (!game_) throw std::invalid_argument("deep solver needs a game");
  tree_ = std::make_unique<GameTree>(game_);
  num_actions_ = game_->max_num_actions();
  strategies_ = ReservoirBuffer<StrategySample>(config_.policy_buffer_size);
  transitions_ = CircularBuffer<TransitionSample>(config_.value_buffer_size);
  reservoir_rng_ = Rng(stream(kReservoirStream, 0));
  const int infoset_width = game_->infoset_feature_size();
  for (int p = 0; p < kNumPlayers; ++p) {
    theta_[static_cast<std::size_t>(p)] = Mlp(spec(infoset_width), stream(kThetaInit, static_cast<std::uint64_t>(p)));
    phi_[static_cast<std::size_t>(p)] = Mlp(spec(infoset_width), stream(kPhiInit, 0, static_cast<std::uint64_t>(p)));
    theta_opt_.emplace_back(theta_[static_cast<std::size_t>(p)], AdamConfig{config_.learning_rate});
    advantages_.emplace_back(config_.advantage_buffer_size);
  }
  omega_ = Mlp(spec(game_->history_feature_size()), stream(kOmegaInit, 0));
  if (config_.variant.uses_baseline) {
    omega_opt_.emplace_back(omega_, AdamConfig{config_.learning_rate});
  }
}

MlpSpec DeepSolver::spec(int input) const {
  return MlpSpec{input, std::vector<int>(static_cast<std::size_t>(config_.num_layers), config_.num_hiddens),
                 num_actions_};
}

std::uint64_t DeepSolver::stream(std::uint64_t tag, std::uint64_t a, std::uint64_t b) const {
  std::seed_seq seq{static_cast<std::uint32_t>(config_.seed),
                    static_cast<std::uint32_t>(config_.seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(b)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

void DeepSolver::iterate() {
  const int t = ++t_;
  // σ^t is fixed for the whole iteration.
  const std::array<Mlp, kNumPlayers> frozen_theta = theta_;
  const std::array<Mlp, kNumPlayers> frozen_phi = phi_;
  Model model(*this, frozen_theta, frozen_phi, t);
  for (auto& buffer : advantages_) buffer.clear();
  for (Player i = 0; i < kNumPlayers; ++i) {
    model.reset_baselines();
    collect(i, model);
    train_advantages(i, t, frozen_theta[static_cast<std::size_t>(i)]);
    if (config_.variant.uses_prediction) train_instantaneous(i, t);
    if (config_.variant.uses_baseline) train_value(t);
  }
  episodes_ += 2 * static_cast<std::int64_t>(config_.traversals);
}

void DeepSolver::collect(Player traverser, const Model& model) {
  Rng rng(stream(kTraversalStream, static_cast<std::uint64_t>(t_), static_cast<std::uint64_t>(traverser)));
  TraversalOptions options;
  options.traverser = traverser;
  options.iteration = t_;
  options.epsilon = config_.epsilon;
  options.use_baseline = config_.variant.uses_baseline;
  auto& advantages = advantages_[static_cast<std::size_t>(traverser)];
  for (int k = 0; k < config_.traversals; ++k) {
    SamplingPicker picker(rng);
    auto result = traverse(*game_, model, options, picker);
    for (auto& s : result.advantages) advantages.insert(std::move(s));
    for (auto& s : result.strategies) strategies_.insert(std::move(s), reservoir_rng_);
    if (config_.variant.uses_baseline) {
      for (auto& s : result.transitions) transitions_.insert(std::move(s));
    }
  }
}

void DeepSolver::train_advantages(Player p, int t, const Mlp& frozen_theta) {
  const auto& buffer = advantages_[static_cast<std::size_t>(p)];
  if (buffer.empty()) return;
  const int width = game_->infoset_feature_size();
  // Bootstrapped targets use θ^{t-1}, so they are fixed for the phase.
  std::vector<const FeatureVector*> rows;
  for (const auto& s : buffer.items()) rows.push_back(&s.features);
  const Matrix prev = frozen_theta.forward(stack(rows, width));
  std::vector<std::vector<double>> targets(buffer.size());
  for (std::size_t k = 0; k < buffer.size(); ++k) {
    const auto& s = buffer[k];
    targets[k] = make_target_bootstrap_cumulative(
        head(prev, static_cast<Eigen::Index>(k), s.action_count()), s.advantages, t,
        config_.variant.alpha, config_.variant.discount, config_.variant.clipped);
  }
  LossSpec spec{LossKind::kBootstrapCumulative};
  Rng rng(stream(kThetaBatches, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(p)));
  auto& net = theta_[static_cast<std::size_t>(p)];
  train(net, theta_opt_[static_cast<std::size_t>(p)], config_.advantage.steps, [&](int, Batch& batch) {
    const auto idx = sample_indices(buffer.size(), static_cast<std::size_t>(config_.advantage.batch_size), rng);
    resize_batch(batch, spec, static_cast<int>(idx.size()), width, num_actions_);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      set_row(batch, spec, static_cast<int>(r), buffer[idx[r]].features, targets[idx[r]]);
    }
  });
}

void DeepSolver::train_instantaneous(Player p, int t) {
  const auto& buffer = advantages_[static_cast<std::size_t>(p)];
  auto& net = phi_[static_cast<std::size_t>(p)];
  net = Mlp(spec(game_->infoset_feature_size()), stream(kPhiInit, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(p)));
  if (buffer.empty()) return;
  const int width = game_->infoset_feature_size();
  LossSpec spec{LossKind::kInstantaneous};
  Adam opt(net, AdamConfig{config_.learning_rate});
  Rng rng(stream(kPhiBatches, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(p)));
  train(net, opt, config_.advantage.steps, [&](int, Batch& batch) {
    const auto idx = sample_indices(buffer.size(), static_cast<std::size_t>(config_.advantage.batch_size), rng);
    resize_batch(batch, spec, static_cast<int>(idx.size()), width, num_actions_);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const auto& s = buffer[idx[r]];
      set_row(batch, spec, static_cast<int>(r), s.features, s.advantages);
    }
  });
}

void DeepSolver::train_value(int t) {
  if (transitions_.size() == 0) return;
  const Mlp target_net = omega_;
  const int history_width = game_->history_feature_size();
  const int infoset_width = game_->infoset_feature_size();
  const bool predictive = config_.variant.uses_prediction;
  LossSpec spec{LossKind::kQTd};
  Rng rng(stream(kOmegaBatches, static_cast<std::uint64_t>(t), transitions_.seen()));
  train(omega_, omega_opt_.front(), config_.value.steps, [&](int, Batch& batch) {
    const auto idx = sample_indices(transitions_.size(), static_cast<std::size_t>(config_.value.batch_size), rng);
    std::vector<const TransitionSample*> samples;
    for (std::size_t k : idx) samples.push_back(&transitions_[k]);
    // Successor rows grouped per acting player for batched inference.
    std::array<std::vector<std::size_t>, kNumPlayers> by_player;
    std::vector<const FeatureVector*> next_histories;
    std::vector<std::size_t> live;
    for (std::size_t r = 0; r < samples.size(); ++r) {
      if (samples[r]->terminal) continue;
      live.push_back(r);
      next_histories.push_back(&samples[r]->next_history);
      by_player[static_cast<std::size_t>(samples[r]->next_player)].push_back(r);
    }
    std::vector<double> successor(samples.size(), 0.0);
    if (!live.empty()) {
      const Matrix q = target_net.forward(stack(next_histories, history_width));
      std::vector<Eigen::Index> q_row(samples.size(), 0);
      for (std::size_t k = 0; k < live.size(); ++k) q_row[live[k]] = static_cast<Eigen::Index>(k);
      for (Player p = 0; p < kNumPlayers; ++p) {
        const auto& members = by_player[static_cast<std::size_t>(p)];
        if (members.empty()) continue;
        std::vector<const FeatureVector*> feats;
        for (std::size_t r : members) feats.push_back(&samples[r]->next_infoset_features);
        const Matrix in = stack(feats, infoset_width);
        const Matrix theta = theta_[static_cast<std::size_t>(p)].forward(in);
        Matrix phi;
        if (predictive) phi = phi_[static_cast<std::size_t>(p)].forward(in);
        for (std::size_t k = 0; k < members.size(); ++k) {
          const auto& s = *samples[members[k]];
          const int n = s.next_num_actions;
          const auto row = static_cast<Eigen::Index>(k);
          const auto sigma = deep_strategy(config_.variant, head(theta, row, n),
                                           predictive ? head(phi, row, n) : std::vector<double>{},
                                           t + 1);
          successor[members[k]] = q_training_target(s, sigma, head(q, q_row[members[k]], n));
        }
      }
    }
    resize_batch(batch, spec, static_cast<int>(samples.size()), history_width, num_actions_);
    for (std::size_t r = 0; r < samples.size(); ++r) {
      const auto& s = *samples[r];
      const double y = s.terminal ? q_training_target(s, {}, {}) : successor[r];
      set_row(batch, spec, static_cast<int>(r), s.history, std::span<const double>(&y, 1), s.action);
    }
  });
}

std::vector<double> DeepSolver::current_strategy(const InfoSetId& info) const {
  const int n = game_->num_actions(info);
  const auto features = game_->encode_infoset(info);
  const auto p = static_cast<std::size_t>(info.owner);
  const auto theta = theta_[p].forward(features);
  std::vector<double> phi;
  if (config_.variant.uses_prediction) {
    const auto out = phi_[p].forward(features);
    phi.assign(out.begin(), out.begin() + n);
  }
  return deep_strategy(config_.variant,
                       std::span<const double>(theta).first(static_cast<std::size_t>(n)), phi,
                       t_ + 1);
}

Mlp DeepSolver::train_average_policy(int total) const {
  if (strategies_.size() == 0) throw std::runtime_error("strategy buffer is empty");
  const int width = game_->infoset_feature_size();
  Mlp net(spec(width), stream(kPsiInit, static_cast<std::uint64_t>(total)));
  Adam opt(net, AdamConfig{config_.learning_rate});
  LossSpec spec;
  spec.kind = LossKind::kWeightedStrategy;
  spec.gamma = config_.variant.gamma;
  spec.total_iterations = total;
  Rng rng(stream(kPsiBatches, static_cast<std::uint64_t>(total)));
  train(net, opt, config_.policy.steps, [&](int, Batch& batch) {
    const auto idx = sample_indices(strategies_.size(), static_cast<std::size_t>(config_.policy.batch_size), rng);
    resize_batch(batch, spec, static_cast<int>(idx.size()), width, num_actions_);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const auto& s = strategies_[idx[r]];
      set_row(batch, spec, static_cast<int>(r), s.features, s.strategy, 0, s.iteration);
    }
  });
  return net;
}

RunResult run(const RunConfig& config,
              const std::function<void(const RunLogRow&)>& on_row,
              bool wall_clock) {
  config.validate();
  return run(config, new_game(config.game), on_row, wall_clock);
}

RunResult run(const RunConfig& config, std::shared_ptr<const Game> game,
              const std::function<void(const RunLogRow&)>& on_row,
              bool wall_clock) {
  const auto start = std::chrono::steady_clock::now();
  DeepSolver solver(config, std::move(game));
  const auto checkpoints = checkpoint_iterations(config.iterations, config.geometric_checkpoints);
  RunResult result;
  for (int t = 1; t <= config.iterations; ++t) {
    solver.iterate();
    if (!std::binary_search(checkpoints.begin(), checkpoints.end(), t)) continue;
    Mlp psi = solver.train_average_policy(t);
    RunLogRow row;
    row.iteration = t;
    row.episodes = solver.episodes();
    row.exploitability = exploitability(solver.tree(), policy_from_network(solver.tree(), psi));
    if (wall_clock) {
      row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    result.log.rows.push_back(row);
    if (on_row) on_row(row);
    if (t == config.iterations) result.average_policy = std::move(psi);
  }
  return result;
}

}  // namespace regret_forge
