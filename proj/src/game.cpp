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

#include "regret_forge/game.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "regret_forge/games.hpp"

namespace regret_forge {

namespace {

int parse_size(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw GameError("bad size parameter in game '" + std::string(whole) +
                    "'");
  }
  return value;
}

}  // namespace

GameId GameId::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const bool has_size = colon != std::string_view::npos;
  auto require_size = [&](GameKind kind, int lo, int hi) {
    if (!has_size) {
      throw GameError("game '" + std::string(text) + "' needs a size, e.g. " +
                      std::string(name) + ":" + std::to_string(lo));
    }
    const int x = parse_size(text.substr(colon + 1), text);
    if (x < lo || x > hi) {
      throw GameError("unsupported size " + std::to_string(x) +
                      " for game '" + std::string(name) + "' (expected " +
                      std::to_string(lo) + ".." + std::to_string(hi) + ")");
    }
    return GameId{kind, x};
  };
  if (name == "kuhn" || name == "leduc") {
    if (has_size) {
      throw GameError("game '" + std::string(name) + "' takes no size");
    }
    return GameId{name == "kuhn" ? GameKind::kKuhn : GameKind::kLeduc, 0};
  }
  if (name == "liars_dice") return require_size(GameKind::kLiarsDice, 5, 6);
  if (name == "goofspiel_imp") {
    return require_size(GameKind::kGoofspielImp, 5, 6);
  }
  if (name == "battleship") return require_size(GameKind::kBattleship, 2, 3);
  throw GameError("unknown game '" + std::string(text) + "'");
}

std::string GameId::to_string() const {
  switch (kind) {
    case GameKind::kKuhn:
      return "kuhn";
    case GameKind::kLeduc:
      return "leduc";
    case GameKind::kLiarsDice:
      return "liars_dice:" + std::to_string(size);
    case GameKind::kGoofspielImp:
      return "goofspiel_imp:" + std::to_string(size);
    case GameKind::kBattleship:
      return "battleship:" + std::to_string(size);
  }
  return "?";
}

History Game::root() const {
  History h;
  h.player_ = player_at(h.actions_);
  return h;
}

History Game::apply_action(const History& h, Action a) const {
  if (h.is_terminal()) throw GameError("apply_action on a terminal history");
  const auto legal = legal_actions(h);
  if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
    throw GameError("illegal action " + std::to_string(a) + " in " + name());
  }
  History child;
  child.actions_.reserve(h.actions_.size() + 1);
  child.actions_ = h.actions_;
  child.actions_.push_back(a);
  child.player_ = player_at(child.actions_);
  return child;
}

History Game::replay(std::span<const Action> actions) const {
  History h = root();
  for (Action a : actions) h = apply_action(h, a);
  return h;
}

std::vector<Action> Game::legal_actions(const History& h) const {
  if (h.is_terminal()) {
    throw GameError("legal_actions on a terminal history");
  }
  if (h.is_chance()) {
    std::vector<Action> out;
    for (const auto& o : chance_outcomes_at(h.actions_)) out.push_back(o.action);
    return out;
  }
  return legal_actions_at(h.actions_);
}

std::vector<ChanceOutcome> Game::chance_outcomes(const History& h) const {
  if (!h.is_chance()) throw GameError("chance_outcomes on a non-chance node");
  return chance_outcomes_at(h.actions_);
}

std::vector<ChanceOutcome> Game::chance_outcomes_at(
    std::span<const Action>) const {
  throw GameError(name() + " has no chance nodes");
}

double Game::utility(const History& z, Player i) const {
  if (!z.is_terminal()) throw GameError("utility on a non-terminal history");
  if (i != 0 && i != 1) throw GameError("bad player index");
  const double u0 = terminal_value_at(z.actions_);
  return i == 0 ? u0 : -u0;
}

InfoSetId Game::infoset_key(const History& h, Player i) const {
  if (!h.is_decision()) {
    throw GameError("infoset_key on a chance or terminal node");
  }
  if (h.current_player() != i) {
    throw GameError("infoset_key for a player not to act");
  }
  return InfoSetId{i, infoset_key_at(h.actions_, i)};
}

double Game::max_abs_utility() const {
  std::call_once(max_utility_once_, [this] {
    double best = 0.0;
    for_each_history(*this, [&](const History& h) {
      if (h.is_terminal()) {
        best = std::max(best, std::abs(terminal_value_at(h.actions())));
      }
      return true;
    });
    if (best == 0.0) best = 1.0;
    max_abs_utility_ = best;
  });
  return max_abs_utility_;
}

FeatureVector Game::encode_infoset(const InfoSetId& info) const {
  FeatureVector out(static_cast<std::size_t>(infoset_feature_size()), 0.0f);
  encode_infoset_into(info, out);
  return out;
}

FeatureVector Game::encode_history(const History& h) const {
  if (h.is_chance()) throw GameError("encode_history on a chance node");
  FeatureVector out(static_cast<std::size_t>(history_feature_size()), 0.0f);
  encode_history_into(h.actions_, out);
  return out;
}

std::string Game::action_to_string(const History&, Action a) const {
  return std::to_string(a);
}

std::shared_ptr<const Game> new_game(const GameId& id) {
  switch (id.kind) {
    case GameKind::kKuhn:
      return std::make_shared<KuhnGame>();
    case GameKind::kLeduc:
      return std::make_shared<LeducGame>();
    case GameKind::kLiarsDice:
      return std::make_shared<LiarsDiceGame>(id.size);
    case GameKind::kGoofspielImp:
      return std::make_shared<GoofspielImpGame>(id.size);
    case GameKind::kBattleship:
      return std::make_shared<BattleshipGame>(id.size);
  }
  throw GameError("unknown game kind");
}

std::shared_ptr<const Game> new_game(std::string_view text) {
  return new_game(GameId::parse(text));
}

namespace {

void walk(const Game& game, const History& h,
          const std::function<bool(const History&)>& visit) {
  if (!visit(h) || h.is_terminal()) return;
  for (Action a : game.legal_actions(h)) {
    walk(game, game.apply_action(h, a), visit);
  }
}

}  // namespace

void for_each_history(const Game& game,
                      const std::function<bool(const History&)>& visit) {
  walk(game, game.root(), visit);
}

GameStats enumerate_stats(const Game& game) {
  GameStats stats;
  std::unordered_map<std::string, int> infoset_sizes;
  for_each_history(game, [&](const History& h) {
    ++stats.num_histories;
    stats.depth = std::max(stats.depth, static_cast<int>(h.size()) + 1);
    if (h.is_terminal()) {
      ++stats.num_terminals;
    } else if (h.is_decision()) {
      ++infoset_sizes[game.infoset_key(h, h.current_player()).key];
    }
    return true;
  });
  stats.num_infosets = static_cast<std::int64_t>(infoset_sizes.size());
  for (const auto& [key, count] : infoset_sizes) {
    stats.max_infoset_size = std::max(stats.max_infoset_size, count);
  }
  return stats;
}

}  // namespace regret_forge
