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

#ifndef REGRET_FORGE_EXPLOITABILITY_HPP_
#define REGRET_FORGE_EXPLOITABILITY_HPP_

#include <functional>
#include <span>
#include <vector>

#include "regret_forge/game_tree.hpp"
#include "regret_forge/policy.hpp"

namespace regret_forge {

// All values are in normalized utility units. Flat policies follow the
// GameTree layout; entries of player i are ignored when computing player
// i's best response.

// Exact counterfactual quantities of player i under a profile.
struct CounterfactualValues {
  Player player = 0;
  std::vector<double> action_values;   // flat: v(I, a)
  std::vector<double> infoset_values;  // per infoset: v(I)
  std::vector<double> opponent_reach;  // per infoset: sum of pi_{-i}(h)
  std::vector<double> own_reach;       // per infoset: pi_i(I)
};

CounterfactualValues counterfactual_values(const GameTree& tree,
                                           std::span<const double> policy,
                                           Player i);

double expected_value(const GameTree& tree, std::span<const double> policy,
                      Player i);

double best_response_value(const GameTree& tree,
                           std::span<const double> policy, Player i);

// Pure best response of player i as a flat vector (one-hot rows for player
// i, the input rows elsewhere).
std::vector<double> best_response(const GameTree& tree,
                                  std::span<const double> policy, Player i);

// Mean over players of the best-response gain.
double exploitability(const GameTree& tree, std::span<const double> policy);
double exploitability(const GameTree& tree, const TabularPolicy& policy);

// Queries a source once per infoset. Rows are renormalized; a NaN, a
// negative total, or a wrong-length row throws GameError.
using PolicySource =
    std::function<std::vector<double>(const InfoSetId&, int num_actions)>;
TabularPolicy extract_policy(const GameTree& tree, const PolicySource& source);

}  // namespace regret_forge

#endif  // REGRET_FORGE_EXPLOITABILITY_HPP_
