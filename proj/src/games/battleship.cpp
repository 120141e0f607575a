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

// One 1x2 ship per player on a 2 x width grid. Placements are sequential
// hidden moves; shots alternate starting with player 0, a cell can be shot
// only once by the same player, and the game stops as soon as a ship sinks
// or both players have fired three times.

#include <algorithm>
#include <charconv>

#include "games/key_util.hpp"
#include "regret_forge/games.hpp"

namespace regret_forge {

namespace {

int parse_int(std::string_view s, const InfoSetId& info) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw GameError("malformed Battleship infoset key '" + info.key + "'");
  }
  return v;
}

}  // namespace

BattleshipGame::BattleshipGame(int width)
    : Game(GameId{GameKind::kBattleship, width}), width_(width) {
  if (width < 2) throw GameError("battleship width must be at least 2");
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c + 1 < width; ++c) {
      placements_.push_back({r * width + c, r * width + c + 1});
    }
  }
  for (int c = 0; c < width; ++c) placements_.push_back({c, width + c});
}

int BattleshipGame::max_num_actions() const {
  return std::max(num_placements(), num_cells());
}

int BattleshipGame::infoset_feature_size() const {
  return num_placements() + kShotsPerPlayer * (num_cells() + 1) +
         kShotsPerPlayer * num_cells() + 2;
}

int BattleshipGame::history_feature_size() const {
  return 2 * num_placements() + 2 * kShotsPerPlayer * num_cells() + 2;
}

bool BattleshipGame::sunk(std::span<const Action> h, Player shooter) const {
  if (h.size() < 2) return false;
  const auto& ship = placements_[static_cast<std::size_t>(h[1 - shooter])];
  int hits = 0;
  for (std::size_t k = 2 + static_cast<std::size_t>(shooter); k < h.size();
       k += 2) {
    if (h[k] == ship[0] || h[k] == ship[1]) ++hits;
  }
  return hits == 2;
}

Player BattleshipGame::player_at(std::span<const Action> h) const {
  if (h.size() < 2) return static_cast<Player>(h.size());
  if (sunk(h, 0) || sunk(h, 1) ||
      h.size() == static_cast<std::size_t>(2 + 2 * kShotsPerPlayer)) {
    return kTerminalPlayer;
  }
  return static_cast<Player>((h.size() - 2) % 2);
}

std::vector<Action> BattleshipGame::legal_actions_at(
    std::span<const Action> h) const {
  std::vector<Action> out;
  if (h.size() < 2) {
    for (Action p = 0; p < num_placements(); ++p) out.push_back(p);
    return out;
  }
  const Player shooter = static_cast<Player>((h.size() - 2) % 2);
  std::vector<bool> shot(static_cast<std::size_t>(num_cells()), false);
  for (std::size_t k = 2 + static_cast<std::size_t>(shooter); k < h.size();
       k += 2) {
    shot[static_cast<std::size_t>(h[k])] = true;
  }
  for (Action c = 0; c < num_cells(); ++c) {
    if (!shot[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  return out;
}

double BattleshipGame::terminal_value_at(std::span<const Action> z) const {
  double u0 = 0.0;
  if (sunk(z, 0)) u0 += kShipValue;
  if (sunk(z, 1)) u0 -= kShipValue;
  return u0;
}

std::string BattleshipGame::infoset_key_at(std::span<const Action> h,
                                           Player i) const {
  const auto idx = static_cast<std::size_t>(i);
  std::string key;
  key += static_cast<char>('0' + i);
  key += ':';
  if (h.size() > idx) {
    key += std::to_string(h[idx]);
  } else {
    key += '-';
  }
  key += ':';
  if (h.size() >= 2) {
    const auto& enemy = placements_[static_cast<std::size_t>(h[1 - idx])];
    bool first = true;
    for (std::size_t k = 2 + idx; k < h.size(); k += 2) {
      if (!first) key += ',';
      first = false;
      key += std::to_string(h[k]);
      key += (h[k] == enemy[0] || h[k] == enemy[1]) ? 'h' : 'm';
    }
  }
  key += ':';
  bool first = true;
  for (std::size_t k = 3 - idx; k < h.size(); k += 2) {
    if (!first) key += ',';
    first = false;
    key += std::to_string(h[k]);
  }
  return key;
}

int BattleshipGame::num_actions(const InfoSetId& info) const {
  const auto parts = detail::split_key(info, 4);
  if (parts[1] == "-") return num_placements();
  return num_cells() - static_cast<int>(detail::split(parts[2], ',').size());
}

void BattleshipGame::encode_infoset_into(const InfoSetId& info,
                                         std::span<float> out) const {
  const auto parts = detail::split_key(info, 4);
  const int cells = num_cells();
  if (parts[1] != "-") {
    const int p = parse_int(parts[1], info);
    if (p < 0 || p >= num_placements()) {
      throw GameError("bad placement in " + info.key);
    }
    detail::one_hot(out, 0, p);
  }
  const int own_base = num_placements();
  const auto own = detail::split(parts[2], ',');
  for (std::size_t k = 0; k < own.size() && k < kShotsPerPlayer; ++k) {
    const auto& s = own[k];
    if (s.size() < 2) throw GameError("malformed infoset key " + info.key);
    const int cell = parse_int(s.substr(0, s.size() - 1), info);
    const int slot = own_base + static_cast<int>(k) * (cells + 1);
    detail::one_hot(out, slot, cell);
    if (s.back() == 'h') detail::one_hot(out, slot, cells);
  }
  const int opp_base = own_base + kShotsPerPlayer * (cells + 1);
  const auto opp = detail::split(parts[3], ',');
  for (std::size_t k = 0; k < opp.size() && k < kShotsPerPlayer; ++k) {
    detail::one_hot(out, opp_base + static_cast<int>(k) * cells,
                    parse_int(opp[k], info));
  }
  detail::owner_bits(out, info.owner);
}

void BattleshipGame::encode_history_into(std::span<const Action> h,
                                         std::span<float> out) const {
  if (h.size() >= 1) detail::one_hot(out, 0, h[0]);
  if (h.size() >= 2) detail::one_hot(out, num_placements(), h[1]);
  const int base = 2 * num_placements();
  for (std::size_t k = 2; k < h.size(); ++k) {
    detail::one_hot(out, base + static_cast<int>(k - 2) * num_cells(), h[k]);
  }
  const Player p = player_at(h);
  if (p >= 0) detail::owner_bits(out, p);
}

std::string BattleshipGame::action_to_string(const History& h,
                                             Action a) const {
  if (h.size() < 2) {
    const auto& cells = placements_.at(static_cast<std::size_t>(a));
    return "place " + std::to_string(cells[0]) + "+" + std::to_string(cells[1]);
  }
  return "shoot " + std::to_string(a);
}

}  // namespace regret_forge
