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

// Outcome-sampling traversal with baseline-adjusted values.

#ifndef REGRET_FORGE_TRAVERSAL_HPP_
#define REGRET_FORGE_TRAVERSAL_HPP_

#include <functional>
#include <span>
#include <vector>

#include "regret_forge/buffers.hpp"
#include "regret_forge/game.hpp"

namespace regret_forge {

// Frozen models consulted during a traversal.
class TraversalModel {
 public:
  virtual ~TraversalModel() = default;
  // σ(I), one entry per legal action.
  virtual std::vector<double> strategy(const InfoSetId& info,
                                       int num_actions) const = 0;
  // Q(h, ·) for player 0, one entry per legal action.
  virtual std::vector<double> baseline(const History& h,
                                       int num_actions) const = 0;
};

// Model built from two callables. A null baseline means Q ≡ 0.
class CallbackModel final : public TraversalModel {
 public:
  using StrategyFn = std::function<std::vector<double>(const InfoSetId&, int)>;
  using BaselineFn = std::function<std::vector<double>(const History&, int)>;

  explicit CallbackModel(StrategyFn strategy, BaselineFn baseline = nullptr)
      : strategy_(std::move(strategy)), baseline_(std::move(baseline)) {}

  std::vector<double> strategy(const InfoSetId& info,
                               int num_actions) const override {
    return strategy_(info, num_actions);
  }
  std::vector<double> baseline(const History& h,
                               int num_actions) const override {
    if (!baseline_) return std::vector<double>(static_cast<std::size_t>(num_actions), 0.0);
    return baseline_(h, num_actions);
  }

 private:
  StrategyFn strategy_;
  BaselineFn baseline_;
};

// Chooses the outcome at each chance and decision node.
class ActionPicker {
 public:
  virtual ~ActionPicker() = default;
  // Index into `actions`, drawn according to `probs`.
  virtual std::size_t pick(const History& h, std::span<const Action> actions,
                           std::span<const double> probs) = 0;
};

class SamplingPicker final : public ActionPicker {
 public:
  explicit SamplingPicker(Rng& rng) : rng_(rng) {}
  std::size_t pick(const History& h, std::span<const Action> actions,
                   std::span<const double> probs) override;

 private:
  Rng& rng_;
};

// Follows a fixed terminal action sequence.
class ReplayPicker final : public ActionPicker {
 public:
  explicit ReplayPicker(std::vector<Action> episode)
      : episode_(std::move(episode)) {}
  std::size_t pick(const History& h, std::span<const Action> actions,
                   std::span<const double> probs) override;

 private:
  std::vector<Action> episode_;
};

// ξ(I): ε-uniform mixture at the traverser, σ elsewhere.
std::vector<double> build_sampling_policy(std::span<const double> sigma,
                                          double epsilon, bool is_traverser);

// Per-action v̄: Q everywhere except the sampled entry, which is
// Q + (child − Q)/ξ. Throws std::invalid_argument when ξ_prob <= 0.
std::vector<double> baseline_adjusted_values(std::span<const double> q_row,
                                             std::size_t sampled,
                                             double child_value,
                                             double xi_prob);

// r̄(a) = v̄(a) − Σ σ(a')v̄(a').
std::vector<double> sampled_advantages(std::span<const double> values,
                                       std::span<const double> sigma);

struct TraversalOptions {
  Player traverser = 0;
  int iteration = 1;
  double epsilon = 0.6;
  bool use_baseline = true;  // false runs with Q ≡ 0
  bool record = true;        // emit samples
};

struct TraversalResult {
  double value = 0.0;  // traverser's v̄ at the first decision node
  std::vector<Action> episode;
  std::vector<AdvantageSample> advantages;
  std::vector<StrategySample> strategies;
  std::vector<TransitionSample> transitions;
};

// One episode from the root. Samples are emitted in post-order.
TraversalResult traverse(const Game& game, const TraversalModel& model,
                         const TraversalOptions& options, ActionPicker& picker);

// Same, from an arbitrary history; returns v̄ there and appends to `out`.
double traverse(const Game& game, const History& h, const TraversalModel& model,
                const TraversalOptions& options, ActionPicker& picker,
                TraversalResult& out);

// Per-episode estimators for the infoset I = info (owner is the traverser),
// using ξ built from the model's σ and `epsilon`. Both return 0 when the
// episode leaves I by an action other than `action` (an index). Throw
// GameError when no prefix of the episode lies in I.
double estimator_hat(const Game& game, const TraversalModel& model,
                     double epsilon, std::span<const Action> episode,
                     const InfoSetId& info, int action);
double estimator_check(const Game& game, const TraversalModel& model,
                       double epsilon, std::span<const Action> episode,
                       const InfoSetId& info, int action);

}  // namespace regret_forge

#endif  // REGRET_FORGE_TRAVERSAL_HPP_
