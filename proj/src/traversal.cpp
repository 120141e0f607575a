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

#include "regret_forge/traversal.hpp"

#include <stdexcept>
#include <string>

namespace regret_forge {
namespace {

History skip_chance(const Game& game, History h, ActionPicker& picker) {
  std::vector<Action> actions;
  std::vector<double> probs;
  while (h.is_chance()) {
    actions.clear();
    probs.clear();
    for (const auto& o : game.chance_outcomes(h)) {
      actions.push_back(o.action);
      probs.push_back(o.probability);
    }
    h = game.apply_action(h, actions[picker.pick(h, actions, probs)]);
  }
  return h;
}

std::vector<double> checked_strategy(const TraversalModel& model,
                                     const InfoSetId& info, int n) {
  auto sigma = model.strategy(info, n);
  if (static_cast<int>(sigma.size()) != n) {
    throw GameError("model strategy for " + info.key + " has wrong length");
  }
  return sigma;
}

}  // namespace

std::size_t SamplingPicker::pick(const History&, std::span<const Action> actions,
                                 std::span<const double> probs) {
  if (actions.empty() || actions.size() != probs.size()) {
    throw GameError("sampling over an empty or mismatched distribution");
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng_);
  std::size_t last = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    last = k;
    x -= probs[k];
    if (x < 0.0) return k;
  }
  return last;
}

std::size_t ReplayPicker::pick(const History& h, std::span<const Action> actions,
                               std::span<const double>) {
  if (h.size() >= episode_.size()) throw GameError("replayed episode too short");
  const Action want = episode_[h.size()];
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (actions[k] == want) return k;
  }
  throw GameError("replayed action " + std::to_string(want) + " is not legal");
}

std::vector<double> build_sampling_policy(std::span<const double> sigma,
                                          double epsilon, bool is_traverser) {
  std::vector<double> xi(sigma.begin(), sigma.end());
  if (!is_traverser) return xi;
  const double uniform = 1.0 / static_cast<double>(sigma.size());
  for (double& p : xi) p = epsilon * uniform + (1.0 - epsilon) * p;
  return xi;
}

std::vector<double> baseline_adjusted_values(std::span<const double> q_row,
                                             std::size_t sampled,
                                             double child_value,
                                             double xi_prob) {
  if (!(xi_prob > 0.0)) {
    throw std::invalid_argument("sampled action has zero sampling probability");
  }
  if (sampled >= q_row.size()) throw std::invalid_argument("sampled index out of range");
  std::vector<double> v(q_row.begin(), q_row.end());
  v[sampled] += (child_value - q_row[sampled]) / xi_prob;
  return v;
}

std::vector<double> sampled_advantages(std::span<const double> values,
                                       std::span<const double> sigma) {
  if (values.size() != sigma.size()) {
    throw std::invalid_argument("value and strategy rows differ in length");
  }
  double mean = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) mean += sigma[a] * values[a];
  std::vector<double> r(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) r[a] = values[a] - mean;
  return r;
}

double traverse(const Game& game, const History& start,
                const TraversalModel& model, const TraversalOptions& options,
                ActionPicker& picker, TraversalResult& out) {
  const History h = skip_chance(game, start, picker);
  const Player i = options.traverser;
  if (h.is_terminal()) {
    out.episode.assign(h.actions().begin(), h.actions().end());
    return game.normalize_utility(game.utility(h, i));
  }

  const Player p = h.current_player();
  const auto legal = game.legal_actions(h);
  const int n = static_cast<int>(legal.size());
  const InfoSetId info = game.infoset_key(h, p);
  const auto sigma = checked_strategy(model, info, n);
  const auto xi = build_sampling_policy(sigma, options.epsilon, p == i);
  const std::size_t sampled = picker.pick(h, legal, xi);

  const History next = skip_chance(game, game.apply_action(h, legal[sampled]), picker);
  const double child = traverse(game, next, model, options, picker, out);

  std::vector<double> q(static_cast<std::size_t>(n), 0.0);
  if (options.use_baseline) {
    q = model.baseline(h, n);
    if (static_cast<int>(q.size()) != n) throw GameError("baseline row has wrong length");
    if (i == 1) {
      for (double& x : q) x = -x;
    }
  }
  const auto values = baseline_adjusted_values(q, sampled, child, xi[sampled]);
  double node_value = 0.0;
  for (int a = 0; a < n; ++a) {
    node_value += sigma[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(a)];
  }

  if (options.record) {
    if (p == i) {
      AdvantageSample s;
      s.infoset = info;
      s.features = game.encode_infoset(info);
      s.advantages = sampled_advantages(values, sigma);
      out.advantages.push_back(std::move(s));
    } else {
      StrategySample s;
      s.infoset = info;
      s.features = game.encode_infoset(info);
      s.iteration = options.iteration;
      s.strategy = sigma;
      out.strategies.push_back(std::move(s));
    }
    TransitionSample tr;
    tr.iteration = options.iteration;
    tr.history = game.encode_history(h);
    tr.action = static_cast<int>(sampled);
    tr.num_actions = n;
    tr.terminal = next.is_terminal();
    if (tr.terminal) {
      tr.utility = game.normalize_utility(game.utility(next, 0));
      tr.next_infoset.owner = kTerminalPlayer;
    } else {
      tr.next_player = next.current_player();
      tr.next_history = game.encode_history(next);
      tr.next_infoset = game.infoset_key(next, tr.next_player);
      tr.next_infoset_features = game.encode_infoset(tr.next_infoset);
      tr.next_num_actions = static_cast<int>(game.legal_actions(next).size());
    }
    out.transitions.push_back(std::move(tr));
  }
  return node_value;
}

TraversalResult traverse(const Game& game, const TraversalModel& model,
                         const TraversalOptions& options, ActionPicker& picker) {
  if (options.traverser < 0 || options.traverser >= kNumPlayers) {
    throw GameError("traverser must be player 0 or 1");
  }
  if (!(options.epsilon >= 0.0 && options.epsilon <= 1.0)) {
    throw GameError("exploration must lie in [0, 1]");
  }
  TraversalResult out;
  out.value = traverse(game, game.root(), model, options, picker, out);
  return out;
}

namespace {

// v̌(I, a | z) and π_i^ξ(z[I]) for one episode.
struct EpisodeWeights {
  double check = 0.0;
  double own_reach = 1.0;
};

EpisodeWeights episode_weights(const Game& game, const TraversalModel& model,
                               double epsilon, std::span<const Action> episode,
                               const InfoSetId& info, int action) {
  const Player i = info.owner;
  History h = game.root();
  EpisodeWeights w;
  bool found = false;
  bool on_action = false;
  double ratio = 1.0;  // Π σ/ξ strictly below z[I]a
  for (std::size_t k = 0; k < episode.size(); ++k) {
    if (h.is_terminal()) throw GameError("episode continues past a terminal");
    if (h.is_decision()) {
      const Player p = h.current_player();
      const auto legal = game.legal_actions(h);
      const int n = static_cast<int>(legal.size());
      const InfoSetId here = game.infoset_key(h, p);
      const auto sigma = checked_strategy(model, here, n);
      const auto xi = build_sampling_policy(sigma, epsilon, p == i);
      std::size_t taken = legal.size();
      for (std::size_t a = 0; a < legal.size(); ++a) {
        if (legal[a] == episode[k]) taken = a;
      }
      if (taken == legal.size()) throw GameError("episode action is not legal");
      if (!found && p == i && here == info) {
        found = true;
        if (static_cast<int>(taken) != action) return EpisodeWeights{0.0, w.own_reach};
        on_action = true;
        ratio /= xi[taken];
      } else if (found) {
        ratio *= sigma[taken] / xi[taken];
      } else if (p == i) {
        w.own_reach *= xi[taken];
      }
    }
    h = game.apply_action(h, episode[k]);
  }
  if (!h.is_terminal()) throw GameError("episode does not end at a terminal");
  if (!found) throw GameError("episode does not pass through " + info.key);
  if (on_action) w.check = ratio * game.normalize_utility(game.utility(h, i));
  return w;
}

}  // namespace

double estimator_check(const Game& game, const TraversalModel& model,
                       double epsilon, std::span<const Action> episode,
                       const InfoSetId& info, int action) {
  return episode_weights(game, model, epsilon, episode, info, action).check;
}

double estimator_hat(const Game& game, const TraversalModel& model,
                     double epsilon, std::span<const Action> episode,
                     const InfoSetId& info, int action) {
  const auto w = episode_weights(game, model, epsilon, episode, info, action);
  return w.check / w.own_reach;
}

}  // namespace regret_forge
