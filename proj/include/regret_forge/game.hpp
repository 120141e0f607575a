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

#ifndef REGRET_FORGE_GAME_HPP_
#define REGRET_FORGE_GAME_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace regret_forge {

using Action = int;
using Player = int;

inline constexpr Player kChancePlayer = -1;
inline constexpr Player kTerminalPlayer = -2;
inline constexpr int kNumPlayers = 2;

// Bumped whenever an infoset or history encoding changes layout. Written into
// network checkpoints so stale parameters are rejected on load.
inline constexpr std::uint32_t kFeatureEncodingVersion = 1;

// Dense network input. Every entry is in [0, 1].
using FeatureVector = std::vector<float>;

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GameKind { kKuhn, kLeduc, kLiarsDice, kGoofspielImp, kBattleship };

struct GameId {
  GameKind kind = GameKind::kKuhn;
  int size = 0;  // x for liars_dice / goofspiel_imp / battleship, else 0

  // Accepts `kuhn | leduc | liars_dice:<x> | goofspiel_imp:<x> |
  // battleship:<x>`.
  static GameId parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const GameId&, const GameId&) = default;
};

struct GameStats {
  std::int64_t num_histories = 0;
  std::int64_t num_infosets = 0;
  std::int64_t num_terminals = 0;
  int depth = 0;  // nodes on the longest root-to-leaf path
  int max_infoset_size = 0;

  friend bool operator==(const GameStats&, const GameStats&) = default;
};

// Canonical identity of an information set. `key` is a printable string of
// the owner's observations and already embeds the owner, so keys are unique
// across both players.
struct InfoSetId {
  Player owner = 0;
  std::string key;

  friend bool operator==(const InfoSetId&, const InfoSetId&) = default;
};

struct ChanceOutcome {
  Action action;
  double probability;
};

class Game;

// A position in the game tree: the full action sequence from the root,
// chance outcomes included. Values are immutable once built; use
// Game::apply_action to step.
class History {
 public:
  std::span<const Action> actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  Player current_player() const { return player_; }
  bool is_terminal() const { return player_ == kTerminalPlayer; }
  bool is_chance() const { return player_ == kChancePlayer; }
  bool is_decision() const { return player_ >= 0; }

  friend bool operator==(const History& a, const History& b) {
    return a.actions_ == b.actions_;
  }

 private:
  friend class Game;
  std::vector<Action> actions_;
  Player player_ = kChancePlayer;
};

class Game {
 public:
  explicit Game(GameId id) : id_(id) {}
  virtual ~Game() = default;
  Game(const Game&) = delete;
  Game& operator=(const Game&) = delete;

  const GameId& id() const { return id_; }
  std::string name() const { return id_.to_string(); }

  History root() const;
  History apply_action(const History& h, Action a) const;
  // Builds a history by replaying `actions` from the root, validating each
  // step.
  History replay(std::span<const Action> actions) const;

  std::vector<Action> legal_actions(const History& h) const;
  std::vector<ChanceOutcome> chance_outcomes(const History& h) const;
  double utility(const History& z, Player i) const;
  InfoSetId infoset_key(const History& h, Player i) const;

  // Maximum |u_i(z)| over all terminals and players, by enumeration on first
  // use and cached afterwards.
  double max_abs_utility() const;
  double normalize_utility(double u) const { return u / max_abs_utility(); }

  FeatureVector encode_infoset(const InfoSetId& info) const;
  FeatureVector encode_history(const History& h) const;
  virtual int infoset_feature_size() const = 0;
  virtual int history_feature_size() const = 0;
  virtual int max_num_actions() const = 0;
  // Number of legal actions at any history of `info`.
  virtual int num_actions(const InfoSetId& info) const = 0;

  virtual std::string action_to_string(const History& h, Action a) const;

 protected:
  virtual Player player_at(std::span<const Action> h) const = 0;
  virtual std::vector<Action> legal_actions_at(
      std::span<const Action> h) const = 0;
  virtual std::vector<ChanceOutcome> chance_outcomes_at(
      std::span<const Action> h) const;
  // Raw (unnormalized) utility of player 0 at a terminal.
  virtual double terminal_value_at(std::span<const Action> z) const = 0;
  virtual std::string infoset_key_at(std::span<const Action> h,
                                     Player i) const = 0;
  virtual void encode_infoset_into(const InfoSetId& info,
                                   std::span<float> out) const = 0;
  virtual void encode_history_into(std::span<const Action> h,
                                   std::span<float> out) const = 0;

 private:
  GameId id_;
  mutable std::once_flag max_utility_once_;
  mutable double max_abs_utility_ = 0.0;
};

// Errors with GameError on an unknown game or unsupported size.
std::shared_ptr<const Game> new_game(const GameId& id);
std::shared_ptr<const Game> new_game(std::string_view text);

// Exact sizes by depth-first enumeration of every history.
GameStats enumerate_stats(const Game& game);

// Depth-first walk over every history. `visit` returns false to skip the
// subtree below a node.
void for_each_history(const Game& game,
                      const std::function<bool(const History&)>& visit);

}  // namespace regret_forge

template <>
struct std::hash<regret_forge::InfoSetId> {
  std::size_t operator()(const regret_forge::InfoSetId& id) const noexcept {
    return std::hash<std::string>{}(id.key);
  }
};

#endif  // REGRET_FORGE_GAME_HPP_
