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

#include "regret_forge/rule_agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "regret_forge/games.hpp"

namespace regret_forge {
namespace {

using L = LeducGame;

int index_of(std::span<const Action> legal, Action a) {
  const auto it = std::find(legal.begin(), legal.end(), a);
  return it == legal.end() ? -1 : static_cast<int>(it - legal.begin());
}

double showdown(int mine, int theirs, int board) {
  const int r = L::rank_of(mine);
  const int o = L::rank_of(theirs);
  const int b = L::rank_of(board);
  if (r == b) return 1.0;
  if (o == b) return 0.0;
  if (r == o) return 0.5;
  return r > o ? 1.0 : 0.0;
}

std::size_t draw(std::span<const double> probs, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng);
  std::size_t last = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    last = k;
    x -= probs[k];
    if (x < 0.0) return k;
  }
  return last;
}

}  // namespace

const std::vector<AgentStyle>& AgentStyle::all() {
  static const std::vector<AgentStyle> kStyles = {
      {"candid_statistician", 0.6, 0.3, 0.0},
      {"loose_aggressive", 0.3, 0.2, 0.75},
      {"loose_passive", 1.01, 0.15, 0.0},
      {"tight_passive", 0.9, 0.5, 0.0},
      {"tight_aggressive", 0.65, 0.4, 0.1},
  };
  return kStyles;
}

AgentStyle AgentStyle::parse(std::string_view name) {
  for (const auto& s : all()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown rule agent '" + std::string(name) + "'");
}

double win_rate(const Game& game, const InfoSetId& info) {
  if (game.id().kind != GameKind::kLeduc) throw GameError("win rate needs Leduc poker");
  const auto view = L::parse_infoset(info);
  double total = 0.0;
  int count = 0;
  for (int o = 0; o < L::kNumCards; ++o) {
    if (o == view.private_card || o == view.public_card) continue;
    if (view.public_card >= 0) {
      total += showdown(view.private_card, o, view.public_card);
      ++count;
      continue;
    }
    for (int b = 0; b < L::kNumCards; ++b) {
      if (b == view.private_card || b == o) continue;
      total += showdown(view.private_card, o, b);
      ++count;
    }
  }
  return total / count;
}

std::vector<double> rule_distribution(const Game& game, const AgentStyle& style,
                                      const InfoSetId& info,
                                      std::span<const Action> legal) {
  const double w = win_rate(game, info);
  std::vector<double> probs(legal.size(), 0.0);
  const int raise = index_of(legal, L::kRaise);
  const int call = index_of(legal, L::kCall);
  const int fold = index_of(legal, L::kFold);
  const int aggressive = raise >= 0 ? raise : call;
  if (w >= style.raise_above) {
    probs[static_cast<std::size_t>(aggressive)] = 1.0;
  } else if (w <= style.fold_below) {
    const int give_up = fold >= 0 ? fold : call;
    probs[static_cast<std::size_t>(aggressive)] += style.bluff_prob;
    probs[static_cast<std::size_t>(give_up)] += 1.0 - style.bluff_prob;
  } else {
    probs[static_cast<std::size_t>(call)] = 1.0;
  }
  return probs;
}

Action act(const Game& game, const AgentStyle& style, const InfoSetId& info,
           std::span<const Action> legal, Rng& rng) {
  const auto probs = rule_distribution(game, style, info, legal);
  return legal[draw(probs, rng)];
}

PlayPolicy table_player(TabularPolicy policy) {
  return [policy = std::move(policy)](const InfoSetId& info, std::span<const Action> legal) {
    const auto* row = policy.find(info.key);
    if (row == nullptr) throw GameError("policy has no entry for infoset " + info.key);
    if (row->size() != legal.size()) {
      throw GameError("policy row for " + info.key + " has the wrong length");
    }
    return *row;
  };
}

PlayPolicy rule_player(std::shared_ptr<const Game> game, AgentStyle style) {
  if (!game || game->id().kind != GameKind::kLeduc) {
    throw GameError("rule agents play Leduc poker only");
  }
  return [game = std::move(game), style = std::move(style)](
             const InfoSetId& info, std::span<const Action> legal) {
    return rule_distribution(*game, style, info, legal);
  };
}

MatchResult head2head(const Game& game, const PlayPolicy& a, const PlayPolicy& b,
                      std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("head-to-head needs at least one hand");
  Rng rng(seed);
  double sum = 0.0;
  double sq = 0.0;
  std::vector<Action> actions;
  std::vector<double> probs;
  for (std::int64_t hand = 0; hand < n; ++hand) {
    const Player seat_a = static_cast<Player>(hand % 2);
    History h = game.root();
    while (!h.is_terminal()) {
      actions.clear();
      probs.clear();
      if (h.is_chance()) {
        for (const auto& o : game.chance_outcomes(h)) {
          actions.push_back(o.action);
          probs.push_back(o.probability);
        }
      } else {
        actions = game.legal_actions(h);
        const Player p = h.current_player();
        const InfoSetId info = game.infoset_key(h, p);
        probs = (p == seat_a ? a : b)(info, actions);
      }
      h = game.apply_action(h, actions[draw(probs, rng)]);
    }
    const double r = game.normalize_utility(game.utility(h, seat_a));
    sum += r;
    sq += r * r;
  }
  MatchResult out;
  out.hands = n;
  const double dn = static_cast<double>(n);
  out.mean = sum / dn;
  if (n > 1) {
    const double var = std::max(0.0, (sq - dn * out.mean * out.mean) / (dn - 1.0));
    out.half_width = 1.96 * std::sqrt(var / dn);
  } else {
    out.half_width = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace regret_forge
