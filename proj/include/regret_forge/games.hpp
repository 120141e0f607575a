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

// The eight benchmark games. Action ids are phase-local small integers in a
// fixed canonical order so seeded runs reproduce:
//   kuhn           chance: card 0..2 (J, Q, K); decisions: 0 pass, 1 bet
//   leduc          chance: card 0..5 (Js Jh Qs Qh Ks Kh);
//                  decisions: 0 fold, 1 call/check, 2 raise/bet
//   liars_dice:x   chance: face 0..x-1; decisions: bid b = (q-1)*x + (f-1)
//                  for quantity q in {1,2}, face f in 1..x; 2x calls liar
//   goofspiel_imp  decisions: card value - 1
//   battleship     placement phase: placement index; shooting: cell index

#ifndef REGRET_FORGE_GAMES_HPP_
#define REGRET_FORGE_GAMES_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "regret_forge/game.hpp"

namespace regret_forge {

class KuhnGame final : public Game {
 public:
  static constexpr int kNumCards = 3;
  static constexpr Action kPass = 0;
  static constexpr Action kBet = 1;

  KuhnGame() : Game(GameId{GameKind::kKuhn, 0}) {}

  int infoset_feature_size() const override;
  int history_feature_size() const override;
  int max_num_actions() const override { return 2; }
  int num_actions(const InfoSetId&) const override { return 2; }
  std::string action_to_string(const History& h, Action a) const override;

 protected:
  Player player_at(std::span<const Action> h) const override;
  std::vector<Action> legal_actions_at(
      std::span<const Action> h) const override;
  std::vector<ChanceOutcome> chance_outcomes_at(
      std::span<const Action> h) const override;
  double terminal_value_at(std::span<const Action> z) const override;
  std::string infoset_key_at(std::span<const Action> h,
                             Player i) const override;
  void encode_infoset_into(const InfoSetId& info,
                           std::span<float> out) const override;
  void encode_history_into(std::span<const Action> h,
                           std::span<float> out) const override;
};

class LeducGame final : public Game {
 public:
  static constexpr int kNumCards = 6;
  static constexpr int kNumRanks = 3;
  static constexpr Action kFold = 0;
  static constexpr Action kCall = 1;
  static constexpr Action kRaise = 2;
  static constexpr int kMaxRaisesPerRound = 2;
  static constexpr int kMaxActionsPerRound = 4;

  static constexpr int rank_of(int card) { return card / 2; }
  static std::string card_name(int card);

  // Observations decoded from an infoset key.
  struct View {
    Player owner = 0;
    int private_card = -1;
    int public_card = -1;  // -1 before the flop
    std::array<std::string, 2> rounds;  // 'f' / 'c' / 'r' per action
  };
  static View parse_infoset(const InfoSetId& info);

  LeducGame() : Game(GameId{GameKind::kLeduc, 0}) {}

  int infoset_feature_size() const override;
  int history_feature_size() const override;
  int max_num_actions() const override { return 3; }
  int num_actions(const InfoSetId& info) const override;
  std::string action_to_string(const History& h, Action a) const override;

 protected:
  Player player_at(std::span<const Action> h) const override;
  std::vector<Action> legal_actions_at(
      std::span<const Action> h) const override;
  std::vector<ChanceOutcome> chance_outcomes_at(
      std::span<const Action> h) const override;
  double terminal_value_at(std::span<const Action> z) const override;
  std::string infoset_key_at(std::span<const Action> h,
                             Player i) const override;
  void encode_infoset_into(const InfoSetId& info,
                           std::span<float> out) const override;
  void encode_history_into(std::span<const Action> h,
                           std::span<float> out) const override;
};

class LiarsDiceGame final : public Game {
 public:
  explicit LiarsDiceGame(int faces);

  int faces() const { return faces_; }
  int num_bids() const { return 2 * faces_; }
  Action liar_action() const { return 2 * faces_; }

  int infoset_feature_size() const override;
  int history_feature_size() const override;
  int max_num_actions() const override { return 2 * faces_ + 1; }
  int num_actions(const InfoSetId& info) const override;
  std::string action_to_string(const History& h, Action a) const override;

 protected:
  Player player_at(std::span<const Action> h) const override;
  std::vector<Action> legal_actions_at(
      std::span<const Action> h) const override;
  std::vector<ChanceOutcome> chance_outcomes_at(
      std::span<const Action> h) const override;
  double terminal_value_at(std::span<const Action> z) const override;
  std::string infoset_key_at(std::span<const Action> h,
                             Player i) const override;
  void encode_infoset_into(const InfoSetId& info,
                           std::span<float> out) const override;
  void encode_history_into(std::span<const Action> h,
                           std::span<float> out) const override;

 private:
  int faces_;
};

class GoofspielImpGame final : public Game {
 public:
  explicit GoofspielImpGame(int cards);

  int cards() const { return cards_; }

  int infoset_feature_size() const override;
  int history_feature_size() const override;
  int max_num_actions() const override { return cards_; }
  int num_actions(const InfoSetId& info) const override;
  std::string action_to_string(const History& h, Action a) const override;

 protected:
  Player player_at(std::span<const Action> h) const override;
  std::vector<Action> legal_actions_at(
      std::span<const Action> h) const override;
  double terminal_value_at(std::span<const Action> z) const override;
  std::string infoset_key_at(std::span<const Action> h,
                             Player i) const override;
  void encode_infoset_into(const InfoSetId& info,
                           std::span<float> out) const override;
  void encode_history_into(std::span<const Action> h,
                           std::span<float> out) const override;

 private:
  int cards_;
};

class BattleshipGame final : public Game {
 public:
  static constexpr int kShotsPerPlayer = 3;
  static constexpr double kShipValue = 2.0;

  explicit BattleshipGame(int width);

  int width() const { return width_; }
  int num_cells() const { return 2 * width_; }
  int num_placements() const { return static_cast<int>(placements_.size()); }
  const std::array<int, 2>& placement_cells(int p) const {
    return placements_.at(p);
  }

  int infoset_feature_size() const override;
  int history_feature_size() const override;
  int max_num_actions() const override;
  int num_actions(const InfoSetId& info) const override;
  std::string action_to_string(const History& h, Action a) const override;

 protected:
  Player player_at(std::span<const Action> h) const override;
  std::vector<Action> legal_actions_at(
      std::span<const Action> h) const override;
  double terminal_value_at(std::span<const Action> z) const override;
  std::string infoset_key_at(std::span<const Action> h,
                             Player i) const override;
  void encode_infoset_into(const InfoSetId& info,
                           std::span<float> out) const override;
  void encode_history_into(std::span<const Action> h,
                           std::span<float> out) const override;

 private:
  bool sunk(std::span<const Action> h, Player shooter) const;

  int width_;
  std::vector<std::array<int, 2>> placements_;
};

}  // namespace regret_forge

#endif  // REGRET_FORGE_GAMES_HPP_
