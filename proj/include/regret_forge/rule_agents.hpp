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

#ifndef REGRET_FORGE_RULE_AGENTS_HPP_
#define REGRET_FORGE_RULE_AGENTS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regret_forge/buffers.hpp"
#include "regret_forge/game.hpp"
#include "regret_forge/policy.hpp"

namespace regret_forge {

// Threshold player for Leduc poker driven by the showdown win rate.
struct AgentStyle {
  std::string name;
  double raise_above = 1.0;  // raise when win rate >= this
  double fold_below = 0.0;   // fold (or check) when win rate <= this
  double bluff_prob = 0.0;   // raise anyway when at or below fold_below

  // candid_statistician | loose_aggressive | loose_passive | tight_passive |
  // tight_aggressive.
  static AgentStyle parse(std::string_view name);
  static const std::vector<AgentStyle>& all();
};

// Probability of winning at showdown from infoset `info` of Leduc, with the
// opponent's card and any undealt public card uniform over the remaining
// deck. Ties count one half. Throws GameError for other games.
double win_rate(const Game& game, const InfoSetId& info);

// Action distribution of `style` over `legal` at `info`.
std::vector<double> rule_distribution(const Game& game, const AgentStyle& style,
                                      const InfoSetId& info,
                                      std::span<const Action> legal);
Action act(const Game& game, const AgentStyle& style, const InfoSetId& info,
           std::span<const Action> legal, Rng& rng);

// Distribution over the legal actions at an infoset.
using PlayPolicy =
    std::function<std::vector<double>(const InfoSetId&, std::span<const Action> legal)>;

// Throws GameError for an infoset missing from the table.
PlayPolicy table_player(TabularPolicy policy);
PlayPolicy rule_player(std::shared_ptr<const Game> game, AgentStyle style);

struct MatchResult {
  double mean = 0.0;        // normalized reward per hand for player a
  double half_width = 0.0;  // 1.96 * sample stdev / sqrt(n)
  std::int64_t hands = 0;
};

// Plays n hands, a taking seat 0 on even hands and seat 1 on odd ones.
// Throws std::invalid_argument when n < 1.
MatchResult head2head(const Game& game, const PlayPolicy& a, const PlayPolicy& b,
                      std::int64_t n, std::uint64_t seed);

}  // namespace regret_forge

#endif  // REGRET_FORGE_RULE_AGENTS_HPP_
