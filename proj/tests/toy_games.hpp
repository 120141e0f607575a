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

#ifndef REGRET_FORGE_TESTS_TOY_GAMES_HPP_
#define REGRET_FORGE_TESTS_TOY_GAMES_HPP_

#include <string>
#include <vector>

#include "regret_forge/game.hpp"

namespace regret_forge::testing_games {

// Simultaneous 2x2 zero-sum game played sequentially: player 1 does not see
// player 0's choice. Payoff to player 0 is [[3, -1], [-1, 1]], so each
// player's unique equilibrium plays action 0 with probability 1/3.
class BiasedPennies final : public Game {
 public:
  BiasedPennies() : Game(GameId{GameKind::kKuhn, 0}) {}

  int infoset_feature_size() const override { return 2; }
  int history_feature_size() const override { return 3; }
  int max_num_actions() const override { return 2; }
  int num_actions(const InfoSetId&) const override { return 2; }

 protected:
  Player player_at(std::span<const Action> h) const override {
    return h.size() < 2 ? static_cast<Player>(h.size()) : kTerminalPlayer;
  }
  std::vector<Action> legal_actions_at(std::span<const Action>) const override {
    return {0, 1};
  }
  double terminal_value_at(std::span<const Action> z) const override {
    static constexpr double kPayoff[2][2] = {{3, -1}, {-1, 1}};
    return kPayoff[z[0]][z[1]];
  }
  std::string infoset_key_at(std::span<const Action>, Player i) const override {
    return std::to_string(i) + ":";
  }
  void encode_infoset_into(const InfoSetId& info, std::span<float> out) const override {
    out[static_cast<std::size_t>(info.owner)] = 1.0f;
  }
  void encode_history_into(std::span<const Action> h, std::span<float> out) const override {
    if (h.empty()) {
      out[0] = 1.0f;
    } else {
      out[1 + static_cast<std::size_t>(h[0])] = 1.0f;
    }
  }
};

}  // namespace regret_forge::testing_games

#endif  // REGRET_FORGE_TESTS_TOY_GAMES_HPP_
