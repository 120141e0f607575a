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

#include "games/key_util.hpp"
#include "regret_forge/games.hpp"

namespace regret_forge {

namespace {

constexpr char kCardChars[] = {'J', 'Q', 'K'};
constexpr int kMaxBets = 3;

int card_index(char c) {
  for (int i = 0; i < KuhnGame::kNumCards; ++i) {
    if (kCardChars[i] == c) return i;
  }
  throw GameError(std::string("bad Kuhn card '") + c + "'");
}

// Betting sequence after the two deal actions.
std::span<const Action> betting(std::span<const Action> h) {
  return h.size() <= 2 ? std::span<const Action>{} : h.subspan(2);
}

bool is_terminal_sequence(std::span<const Action> s) {
  using K = KuhnGame;
  if (s.size() == 2) {
    // pp, bp, bb end; pb continues.
    return !(s[0] == K::kPass && s[1] == K::kBet);
  }
  return s.size() == 3;
}

}  // namespace

int KuhnGame::infoset_feature_size() const { return kNumCards + 2 * kMaxBets + 2; }
int KuhnGame::history_feature_size() const {
  return 2 * kNumCards + 2 * kMaxBets + 2;
}

Player KuhnGame::player_at(std::span<const Action> h) const {
  if (h.size() < 2) return kChancePlayer;
  const auto s = betting(h);
  if (is_terminal_sequence(s)) return kTerminalPlayer;
  return static_cast<Player>(s.size() % 2);
}

std::vector<Action> KuhnGame::legal_actions_at(std::span<const Action>) const {
  return {kPass, kBet};
}

std::vector<ChanceOutcome> KuhnGame::chance_outcomes_at(
    std::span<const Action> h) const {
  std::vector<ChanceOutcome> out;
  if (h.empty()) {
    for (int c = 0; c < kNumCards; ++c) out.push_back({c, 1.0 / kNumCards});
  } else {
    for (int c = 0; c < kNumCards; ++c) {
      if (c != h[0]) out.push_back({c, 1.0 / (kNumCards - 1)});
    }
  }
  return out;
}

double KuhnGame::terminal_value_at(std::span<const Action> z) const {
  const auto s = betting(z);
  const double showdown = z[0] > z[1] ? 1.0 : -1.0;
  if (s.size() == 2) {
    if (s[0] == kPass) return showdown;  // pp
    return s[1] == kPass ? 1.0 : 2.0 * showdown;  // bp / bb
  }
  // pbp / pbb
  return s[2] == kPass ? -1.0 : 2.0 * showdown;
}

std::string KuhnGame::infoset_key_at(std::span<const Action> h,
                                     Player i) const {
  std::string key;
  key += static_cast<char>('0' + i);
  key += ':';
  key += kCardChars[h[static_cast<std::size_t>(i)]];
  key += ':';
  for (Action a : betting(h)) key += a == kPass ? 'p' : 'b';
  return key;
}

void KuhnGame::encode_infoset_into(const InfoSetId& info,
                                   std::span<float> out) const {
  const auto parts = detail::split_key(info, 3);
  if (parts[1].size() != 1 || parts[2].size() >= kMaxBets) {
    throw GameError("malformed Kuhn infoset key '" + info.key + "'");
  }
  detail::one_hot(out, 0, card_index(parts[1][0]));
  for (std::size_t k = 0; k < parts[2].size(); ++k) {
    detail::one_hot(out, kNumCards + 2 * static_cast<int>(k),
                    parts[2][k] == 'p' ? 0 : 1);
  }
  detail::owner_bits(out, info.owner);
}

void KuhnGame::encode_history_into(std::span<const Action> h,
                                   std::span<float> out) const {
  if (h.size() >= 1) detail::one_hot(out, 0, h[0]);
  if (h.size() >= 2) detail::one_hot(out, kNumCards, h[1]);
  const auto s = betting(h);
  for (std::size_t k = 0; k < s.size(); ++k) {
    detail::one_hot(out, 2 * kNumCards + 2 * static_cast<int>(k), s[k]);
  }
  const Player p = player_at(h);
  if (p >= 0) detail::owner_bits(out, p);
}

std::string KuhnGame::action_to_string(const History& h, Action a) const {
  if (h.is_chance()) return std::string(1, kCardChars[a]);
  return a == kPass ? "pass" : "bet";
}

}  // namespace regret_forge
