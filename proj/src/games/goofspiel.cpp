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

// Sealed-bid Goofspiel with a fixed descending point deck. Each round is two
// sequential moves (player 0 then player 1) and player 1 does not see the
// pending bid. Only win / lose / tie of each round is revealed. The last
// round is forced, so the game ends after x - 1 rounds of choices.

#include <array>
#include <numeric>

#include "games/key_util.hpp"
#include "regret_forge/games.hpp"

namespace regret_forge {

namespace {

char outcome_char(Action own, Action other) {
  if (own > other) return 'w';
  if (own < other) return 'l';
  return 't';
}

int outcome_index(char c) {
  switch (c) {
    case 'w':
      return 0;
    case 'l':
      return 1;
    case 't':
      return 2;
  }
  throw GameError(std::string("bad Goofspiel outcome '") + c + "'");
}

}  // namespace

GoofspielImpGame::GoofspielImpGame(int cards)
    : Game(GameId{GameKind::kGoofspielImp, cards}), cards_(cards) {
  if (cards < 2 || cards > 9) throw GameError("goofspiel_imp size out of range");
}

int GoofspielImpGame::infoset_feature_size() const {
  return (cards_ - 1) * cards_ + (cards_ - 1) * 3 + 2;
}
int GoofspielImpGame::history_feature_size() const {
  return 2 * (cards_ - 1) * cards_ + 2;
}

Player GoofspielImpGame::player_at(std::span<const Action> h) const {
  if (h.size() >= static_cast<std::size_t>(2 * (cards_ - 1))) {
    return kTerminalPlayer;
  }
  return static_cast<Player>(h.size() % 2);
}

std::vector<Action> GoofspielImpGame::legal_actions_at(
    std::span<const Action> h) const {
  const Player p = player_at(h);
  std::vector<bool> used(static_cast<std::size_t>(cards_), false);
  for (std::size_t k = static_cast<std::size_t>(p); k < h.size(); k += 2) {
    used[static_cast<std::size_t>(h[k])] = true;
  }
  std::vector<Action> out;
  for (Action c = 0; c < cards_; ++c) {
    if (!used[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  return out;
}

double GoofspielImpGame::terminal_value_at(std::span<const Action> z) const {
  // Remaining card of each player is played in the final round.
  const int full = cards_ * (cards_ - 1) / 2;
  std::array<int, 2> last = {full, full};
  int points0 = 0;
  int points1 = 0;
  auto score = [&](int round, Action b0, Action b1) {
    const int prize = cards_ - round;
    if (b0 > b1) points0 += prize;
    if (b1 > b0) points1 += prize;
  };
  const int rounds = static_cast<int>(z.size()) / 2;
  for (int r = 0; r < rounds; ++r) {
    const Action b0 = z[static_cast<std::size_t>(2 * r)];
    const Action b1 = z[static_cast<std::size_t>(2 * r + 1)];
    last[0] -= b0;
    last[1] -= b1;
    score(r, b0, b1);
  }
  score(rounds, last[0], last[1]);
  if (points0 == points1) return 0.0;
  return points0 > points1 ? 1.0 : -1.0;
}

std::string GoofspielImpGame::infoset_key_at(std::span<const Action> h,
                                             Player i) const {
  const std::size_t rounds = h.size() / 2;
  std::string key;
  key += static_cast<char>('0' + i);
  key += ':';
  for (std::size_t r = 0; r < rounds; ++r) {
    key += static_cast<char>('1' + h[2 * r + static_cast<std::size_t>(i)]);
  }
  key += ':';
  for (std::size_t r = 0; r < rounds; ++r) {
    const Action own = h[2 * r + static_cast<std::size_t>(i)];
    const Action other = h[2 * r + 1 - static_cast<std::size_t>(i)];
    key += outcome_char(own, other);
  }
  return key;
}

int GoofspielImpGame::num_actions(const InfoSetId& info) const {
  const auto parts = detail::split_key(info, 3);
  return cards_ - static_cast<int>(parts[1].size());
}

void GoofspielImpGame::encode_infoset_into(const InfoSetId& info,
                                           std::span<float> out) const {
  const auto parts = detail::split_key(info, 3);
  if (parts[1].size() != parts[2].size() ||
      parts[1].size() >= static_cast<std::size_t>(cards_)) {
    throw GameError("malformed Goofspiel infoset key '" + info.key + "'");
  }
  const int outcome_base = (cards_ - 1) * cards_;
  for (std::size_t r = 0; r < parts[1].size(); ++r) {
    const int card = parts[1][r] - '1';
    if (card < 0 || card >= cards_) {
      throw GameError("malformed Goofspiel infoset key '" + info.key + "'");
    }
    detail::one_hot(out, static_cast<int>(r) * cards_, card);
    detail::one_hot(out, outcome_base + 3 * static_cast<int>(r),
                    outcome_index(parts[2][r]));
  }
  detail::owner_bits(out, info.owner);
}

void GoofspielImpGame::encode_history_into(std::span<const Action> h,
                                           std::span<float> out) const {
  const int block = (cards_ - 1) * cards_;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const int player = static_cast<int>(k % 2);
    const int round = static_cast<int>(k / 2);
    detail::one_hot(out, player * block + round * cards_, h[k]);
  }
  const Player p = player_at(h);
  if (p >= 0) detail::owner_bits(out, p);
}

std::string GoofspielImpGame::action_to_string(const History&,
                                               Action a) const {
  return "bid " + std::to_string(a + 1);
}

}  // namespace regret_forge
