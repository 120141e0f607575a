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

#include <charconv>

#include "games/key_util.hpp"
#include "regret_forge/games.hpp"

namespace regret_forge {

namespace {

int parse_int(std::string_view s, const InfoSetId& info) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw GameError("malformed Liar's Dice infoset key '" + info.key + "'");
  }
  return v;
}

}  // namespace

LiarsDiceGame::LiarsDiceGame(int faces)
    : Game(GameId{GameKind::kLiarsDice, faces}), faces_(faces) {
  if (faces < 2) throw GameError("liars_dice needs at least two faces");
}

int LiarsDiceGame::infoset_feature_size() const { return 3 * faces_ + 2; }
int LiarsDiceGame::history_feature_size() const { return 4 * faces_ + 2; }

Player LiarsDiceGame::player_at(std::span<const Action> h) const {
  if (h.size() < 2) return kChancePlayer;
  if (h.size() > 2 && h.back() == liar_action()) return kTerminalPlayer;
  return static_cast<Player>((h.size() - 2) % 2);
}

std::vector<Action> LiarsDiceGame::legal_actions_at(
    std::span<const Action> h) const {
  const Action first = h.size() > 2 ? h.back() + 1 : 0;
  std::vector<Action> out;
  for (Action b = first; b < num_bids(); ++b) out.push_back(b);
  if (h.size() > 2) out.push_back(liar_action());
  return out;
}

std::vector<ChanceOutcome> LiarsDiceGame::chance_outcomes_at(
    std::span<const Action>) const {
  std::vector<ChanceOutcome> out;
  for (int f = 0; f < faces_; ++f) out.push_back({f, 1.0 / faces_});
  return out;
}

double LiarsDiceGame::terminal_value_at(std::span<const Action> z) const {
  const Action bid = z[z.size() - 2];
  const int quantity = bid / faces_ + 1;
  const int face = bid % faces_ + 1;
  int count = 0;
  for (int k = 0; k < 2; ++k) {
    const int value = z[static_cast<std::size_t>(k)] + 1;
    // The highest face is wild.
    if (value == face || value == faces_) ++count;
  }
  const Player caller = static_cast<Player>((z.size() - 1 - 2) % 2);
  const Player bidder = 1 - caller;
  const Player winner = count >= quantity ? bidder : caller;
  return winner == 0 ? 1.0 : -1.0;
}

std::string LiarsDiceGame::infoset_key_at(std::span<const Action> h,
                                          Player i) const {
  std::string key;
  key += static_cast<char>('0' + i);
  key += ':';
  key += std::to_string(h[static_cast<std::size_t>(i)] + 1);
  key += ':';
  for (std::size_t k = 2; k < h.size(); ++k) {
    if (k > 2) key += ',';
    key += std::to_string(h[k] / faces_ + 1);
    key += '-';
    key += std::to_string(h[k] % faces_ + 1);
  }
  return key;
}

int LiarsDiceGame::num_actions(const InfoSetId& info) const {
  const auto parts = detail::split_key(info, 3);
  const auto bids = detail::split(parts[2], ',');
  if (bids.empty()) return num_bids();
  const auto qf = detail::split(bids.back(), '-');
  if (qf.size() != 2) throw GameError("malformed infoset key " + info.key);
  const int last = (parse_int(qf[0], info) - 1) * faces_ +
                   parse_int(qf[1], info) - 1;
  return num_bids() - last - 1 + 1;
}

void LiarsDiceGame::encode_infoset_into(const InfoSetId& info,
                                        std::span<float> out) const {
  const auto parts = detail::split_key(info, 3);
  const int die = parse_int(parts[1], info);
  if (die < 1 || die > faces_) throw GameError("bad die in " + info.key);
  detail::one_hot(out, 0, die - 1);
  for (const auto bid : detail::split(parts[2], ',')) {
    const auto qf = detail::split(bid, '-');
    if (qf.size() != 2) throw GameError("malformed infoset key " + info.key);
    const int b = (parse_int(qf[0], info) - 1) * faces_ +
                  parse_int(qf[1], info) - 1;
    if (b < 0 || b >= num_bids()) throw GameError("bad bid in " + info.key);
    detail::one_hot(out, faces_, b);
  }
  detail::owner_bits(out, info.owner);
}

void LiarsDiceGame::encode_history_into(std::span<const Action> h,
                                        std::span<float> out) const {
  if (h.size() >= 1) detail::one_hot(out, 0, h[0]);
  if (h.size() >= 2) detail::one_hot(out, faces_, h[1]);
  for (std::size_t k = 2; k < h.size(); ++k) {
    if (h[k] < num_bids()) detail::one_hot(out, 2 * faces_, h[k]);
  }
  const Player p = player_at(h);
  if (p >= 0) detail::owner_bits(out, p);
}

std::string LiarsDiceGame::action_to_string(const History& h, Action a) const {
  if (h.is_chance()) return "roll " + std::to_string(a + 1);
  if (a == liar_action()) return "liar";
  return std::to_string(a / faces_ + 1) + "-" + std::to_string(a % faces_ + 1);
}

}  // namespace regret_forge
