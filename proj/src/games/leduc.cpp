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

#include <algorithm>
#include <array>

#include "games/key_util.hpp"
#include "regret_forge/games.hpp"

namespace regret_forge {

namespace {

using L = LeducGame;

constexpr int kRaiseAmount[2] = {2, 4};
constexpr int kSlots = 2 * L::kMaxActionsPerRound;

struct LeducState {
  std::array<int, 2> cards = {-1, -1};
  int public_card = -1;
  int round = 0;
  std::array<std::string, 2> seq;
  std::array<int, 2> contrib = {1, 1};
  int raises = 0;
  Player to_act = kChancePlayer;
  int folder = -1;
  bool terminal = false;

  int stake() const { return std::max(contrib[0], contrib[1]); }
};

// Rebuilds the betting state from the action sequence. Betting starts with
// player 0 in both rounds; a call that is not the first action of a round
// closes it.
LeducState decode(std::span<const Action> h) {
  LeducState st;
  if (h.size() < 2) {
    for (std::size_t k = 0; k < h.size(); ++k) st.cards[k] = h[k];
    return st;
  }
  st.cards = {h[0], h[1]};
  st.to_act = 0;
  bool awaiting_public = false;
  for (std::size_t k = 2; k < h.size(); ++k) {
    const Action a = h[k];
    if (awaiting_public) {
      st.public_card = a;
      awaiting_public = false;
      st.round = 1;
      st.raises = 0;
      st.to_act = 0;
      continue;
    }
    const Player p = st.to_act;
    auto& s = st.seq[static_cast<std::size_t>(st.round)];
    if (a == L::kFold) {
      s += 'f';
      st.folder = p;
      st.terminal = true;
    } else if (a == L::kCall) {
      st.contrib[static_cast<std::size_t>(p)] = st.stake();
      s += 'c';
      if (s.size() >= 2) {
        if (st.round == 0) {
          awaiting_public = true;
        } else {
          st.terminal = true;
        }
      } else {
        st.to_act = 1 - p;
      }
    } else {
      st.contrib[static_cast<std::size_t>(p)] =
          st.stake() + kRaiseAmount[st.round];
      s += 'r';
      ++st.raises;
      st.to_act = 1 - p;
    }
  }
  if (st.terminal) {
    st.to_act = kTerminalPlayer;
  } else if (awaiting_public) {
    st.to_act = kChancePlayer;
  }
  return st;
}

// Legal betting actions given the current round's sequence.
std::vector<Action> legal_for_round(std::string_view s) {
  const bool facing = !s.empty() && s.back() == 'r';
  const auto raises = std::count(s.begin(), s.end(), 'r');
  std::vector<Action> out;
  if (facing) out.push_back(L::kFold);
  out.push_back(L::kCall);
  if (raises < L::kMaxRaisesPerRound) out.push_back(L::kRaise);
  return out;
}

int card_from_name(std::string_view name) {
  for (int c = 0; c < L::kNumCards; ++c) {
    if (L::card_name(c) == name) return c;
  }
  throw GameError("bad Leduc card '" + std::string(name) + "'");
}

int action_from_char(char c) {
  switch (c) {
    case 'f':
      return L::kFold;
    case 'c':
      return L::kCall;
    case 'r':
      return L::kRaise;
  }
  throw GameError(std::string("bad Leduc action '") + c + "'");
}

}  // namespace

std::string LeducGame::card_name(int card) {
  static constexpr char kRanks[] = {'J', 'Q', 'K'};
  static constexpr char kSuits[] = {'s', 'h'};
  return {kRanks[card / 2], kSuits[card % 2]};
}

LeducGame::View LeducGame::parse_infoset(const InfoSetId& info) {
  const auto parts = detail::split_key(info, 4);
  View v;
  v.owner = info.owner;
  v.private_card = card_from_name(parts[1]);
  v.public_card = parts[2] == "-" ? -1 : card_from_name(parts[2]);
  const auto rounds = detail::split(parts[3], '/');
  if (rounds.size() != 2) {
    throw GameError("malformed Leduc infoset key '" + info.key + "'");
  }
  v.rounds = {std::string(rounds[0]), std::string(rounds[1])};
  return v;
}

int LeducGame::infoset_feature_size() const {
  return 2 * kNumCards + 3 * kSlots + 2;
}
int LeducGame::history_feature_size() const {
  return 3 * kNumCards + 3 * kSlots + 2;
}

int LeducGame::num_actions(const InfoSetId& info) const {
  const View v = parse_infoset(info);
  return static_cast<int>(
      legal_for_round(v.rounds[v.public_card < 0 ? 0 : 1]).size());
}

Player LeducGame::player_at(std::span<const Action> h) const {
  return decode(h).to_act;
}

std::vector<Action> LeducGame::legal_actions_at(
    std::span<const Action> h) const {
  const LeducState st = decode(h);
  return legal_for_round(st.seq[static_cast<std::size_t>(st.round)]);
}

std::vector<ChanceOutcome> LeducGame::chance_outcomes_at(
    std::span<const Action> h) const {
  std::vector<bool> used(kNumCards, false);
  int dealt = 0;
  if (h.size() >= 1) used[static_cast<std::size_t>(h[0])] = true, ++dealt;
  if (h.size() >= 2) used[static_cast<std::size_t>(h[1])] = true, ++dealt;
  std::vector<ChanceOutcome> out;
  const double p = 1.0 / (kNumCards - dealt);
  for (int c = 0; c < kNumCards; ++c) {
    if (!used[static_cast<std::size_t>(c)]) out.push_back({c, p});
  }
  return out;
}

double LeducGame::terminal_value_at(std::span<const Action> z) const {
  const LeducState st = decode(z);
  if (st.folder == 0) return -st.contrib[0];
  if (st.folder == 1) return st.contrib[1];
  const int pub = rank_of(st.public_card);
  const int r0 = rank_of(st.cards[0]);
  const int r1 = rank_of(st.cards[1]);
  int winner = -1;
  if (r0 == pub) {
    winner = 0;
  } else if (r1 == pub) {
    winner = 1;
  } else if (r0 != r1) {
    winner = r0 > r1 ? 0 : 1;
  }
  if (winner < 0) return 0.0;
  return winner == 0 ? st.contrib[1] : -st.contrib[0];
}

std::string LeducGame::infoset_key_at(std::span<const Action> h,
                                      Player i) const {
  const LeducState st = decode(h);
  std::string key;
  key += static_cast<char>('0' + i);
  key += ':';
  key += card_name(st.cards[static_cast<std::size_t>(i)]);
  key += ':';
  key += st.public_card < 0 ? "-" : card_name(st.public_card);
  key += ':';
  key += st.seq[0];
  key += '/';
  key += st.seq[1];
  return key;
}

void LeducGame::encode_infoset_into(const InfoSetId& info,
                                    std::span<float> out) const {
  const View v = parse_infoset(info);
  detail::one_hot(out, 0, v.private_card);
  if (v.public_card >= 0) detail::one_hot(out, kNumCards, v.public_card);
  for (int r = 0; r < 2; ++r) {
    const auto& s = v.rounds[static_cast<std::size_t>(r)];
    for (std::size_t k = 0; k < s.size() && k < kMaxActionsPerRound; ++k) {
      const int slot = r * kMaxActionsPerRound + static_cast<int>(k);
      detail::one_hot(out, 2 * kNumCards + 3 * slot, action_from_char(s[k]));
    }
  }
  detail::owner_bits(out, info.owner);
}

void LeducGame::encode_history_into(std::span<const Action> h,
                                    std::span<float> out) const {
  const LeducState st = decode(h);
  if (st.cards[0] >= 0) detail::one_hot(out, 0, st.cards[0]);
  if (st.cards[1] >= 0) detail::one_hot(out, kNumCards, st.cards[1]);
  if (st.public_card >= 0) detail::one_hot(out, 2 * kNumCards, st.public_card);
  for (int r = 0; r < 2; ++r) {
    const auto& s = st.seq[static_cast<std::size_t>(r)];
    for (std::size_t k = 0; k < s.size() && k < kMaxActionsPerRound; ++k) {
      const int slot = r * kMaxActionsPerRound + static_cast<int>(k);
      detail::one_hot(out, 3 * kNumCards + 3 * slot, action_from_char(s[k]));
    }
  }
  if (st.to_act >= 0) detail::owner_bits(out, st.to_act);
}

std::string LeducGame::action_to_string(const History& h, Action a) const {
  if (h.is_chance()) return card_name(a);
  switch (a) {
    case kFold:
      return "fold";
    case kCall:
      return "call";
    default:
      return "raise";
  }
}

}  // namespace regret_forge
