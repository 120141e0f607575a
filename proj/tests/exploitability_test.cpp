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

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles/naive_eval.hpp"
#include "regret_forge/exploitability.hpp"
#include "regret_forge/game_tree.hpp"
#include "regret_forge/policy.hpp"

namespace regret_forge {
namespace {

std::shared_ptr<const GameTree> tree_of(const char* name) {
  return std::make_shared<const GameTree>(new_game(name));
}

TabularPolicy to_policy(const oracle::Strategy& s) {
  TabularPolicy p;
  for (const auto& [key, probs] : s) p.set(key, probs);
  return p;
}

TEST(GameTree, MatchesEnumeratedSizes) {
  for (const char* name : {"kuhn", "leduc", "battleship:2"}) {
    const auto tree = tree_of(name);
    const GameStats stats = enumerate_stats(tree->game());
    EXPECT_EQ(static_cast<std::int64_t>(tree->nodes().size()),
              stats.num_histories);
    EXPECT_EQ(tree->num_infosets(), stats.num_infosets);
    std::size_t largest = 0;
    for (const auto& set : tree->infosets()) {
      largest = std::max(largest, set.nodes.size());
      EXPECT_EQ(tree->find_infoset(set.id.key),
                &set - tree->infosets().data());
    }
    EXPECT_EQ(static_cast<int>(largest), stats.max_infoset_size);
  }
  EXPECT_EQ(tree_of("kuhn")->find_infoset("0:X:"), -1);
}

TEST(BestResponse, KuhnMatchesPureStrategyEnumeration) {
  const auto tree = tree_of("kuhn");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = trial == 0 ? oracle::Strategy{}
                              : oracle::random_strategy(tree->game(), rng,
                                                        trial % 3 == 0 ? 0.3 : 0);
    const auto flat = to_flat(*tree, to_policy(s));
    for (Player i : {0, 1}) {
      EXPECT_NEAR(best_response_value(*tree, flat, i),
                  oracle::pure_best_response(tree->game(), s, i), 1e-10)
          << "trial " << trial << " player " << i;
    }
  }
}

TEST(BestResponse, UniformKuhnBeatsGameValue) {
  const auto tree = tree_of("kuhn");
  const auto flat = tree->uniform_flat();
  const double game_value = -1.0 / 36.0;  // -1/18 chips, normalized by 2
  EXPECT_GT(best_response_value(*tree, flat, 0), game_value);
  EXPECT_GT(best_response_value(*tree, flat, 1), -game_value);
  const double e = exploitability(*tree, flat);
  const double reference =
      0.5 * (oracle::pure_best_response(tree->game(), {}, 0) +
             oracle::pure_best_response(tree->game(), {}, 1));
  EXPECT_NEAR(e, reference, 1e-12);
  EXPECT_GT(e, 0.0);
  EXPECT_EQ(e, exploitability(*tree, tree->uniform_flat()));
}

TEST(BestResponse, EquilibriumFamilyHasZeroExploitability) {
  const auto tree = tree_of("kuhn");
  for (double alpha : {0.0, 0.1, 1.0 / 3.0}) {
    const auto s = oracle::kuhn_equilibrium(alpha);
    const auto flat = to_flat(*tree, to_policy(s));
    EXPECT_NEAR(best_response_value(*tree, flat, 0), -1.0 / 36.0, 1e-12);
    EXPECT_NEAR(best_response_value(*tree, flat, 1), 1.0 / 36.0, 1e-12);
    EXPECT_NEAR(exploitability(*tree, flat), 0.0, 1e-12);
    EXPECT_NEAR(expected_value(*tree, flat, 0), -1.0 / 36.0, 1e-12);
  }
}

TEST(BestResponse, PureResponseRealizesItsValue) {
  std::mt19937_64 rng(5);
  for (const char* name : {"kuhn", "leduc"}) {
    const auto tree = tree_of(name);
    for (int trial = 0; trial < 5; ++trial) {
      const auto flat =
          to_flat(*tree, to_policy(oracle::random_strategy(tree->game(), rng)));
      for (Player i : {0, 1}) {
        const auto br = best_response(*tree, flat, i);
        EXPECT_NEAR(expected_value(*tree, br, i),
                    best_response_value(*tree, flat, i), 1e-10);
      }
    }
  }
}

class RandomProfiles : public ::testing::TestWithParam<const char*> {};

TEST_P(RandomProfiles, BestResponseDominatesAndExploitabilityNonnegative) {
  const auto tree = tree_of(GetParam());
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 100; ++trial) {
    const auto flat = to_flat(
        *tree, to_policy(oracle::random_strategy(tree->game(), rng,
                                                 trial % 2 ? 0.25 : 0.0)));
    for (Player i : {0, 1}) {
      EXPECT_GE(best_response_value(*tree, flat, i),
                expected_value(*tree, flat, i) - 1e-12);
    }
    EXPECT_GE(exploitability(*tree, flat), -1e-9);
    EXPECT_NEAR(expected_value(*tree, flat, 0) + expected_value(*tree, flat, 1),
                0.0, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Games, RandomProfiles,
                         ::testing::Values("kuhn", "leduc"));

TEST(CounterfactualValues, MatchNaiveSumOverHistories) {
  std::mt19937_64 rng(3);
  for (const char* name : {"kuhn", "leduc"}) {
    const auto tree = tree_of(name);
    const auto s = oracle::random_strategy(tree->game(), rng, 0.2);
    const auto flat = to_flat(*tree, to_policy(s));
    for (Player i : {0, 1}) {
      const auto expected =
          oracle::counterfactual_action_values(tree->game(), s, i);
      const auto cfv = counterfactual_values(*tree, flat, i);
      for (const auto& set : tree->infosets()) {
        if (set.id.owner != i) continue;
        const auto& values = expected.at(set.id.key);
        const auto k = static_cast<std::size_t>(&set - tree->infosets().data());
        double mixed = 0.0;
        for (int a = 0; a < set.num_actions(); ++a) {
          const auto slot = static_cast<std::size_t>(set.offset + a);
          EXPECT_NEAR(cfv.action_values[slot],
                      values[static_cast<std::size_t>(a)], 1e-12);
          mixed += flat[slot] * cfv.action_values[slot];
        }
        EXPECT_NEAR(mixed, cfv.infoset_values[k], 1e-10);
      }
    }
  }
}

TEST(ExtractPolicy, UniformSourceGivesUniformRows) {
  const auto tree = tree_of("kuhn");
  const auto policy = extract_policy(*tree, [](const InfoSetId&, int n) {
    return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
  });
  EXPECT_EQ(policy.size(), 12u);
  for (const auto& [key, probs] : policy.table()) {
    EXPECT_EQ(probs, (std::vector<double>{0.5, 0.5}));
  }
}

TEST(ExtractPolicy, RenormalizesAndRejectsNaN) {
  const auto tree = tree_of("kuhn");
  const auto policy = extract_policy(*tree, [](const InfoSetId&, int) {
    return std::vector<double>{3.0, -1e-7};
  });
  for (const auto& [key, probs] : policy.table()) {
    EXPECT_EQ(probs, (std::vector<double>{1.0, 0.0}));
  }
  EXPECT_THROW(extract_policy(*tree,
                              [](const InfoSetId&, int) {
                                return std::vector<double>{
                                    std::numeric_limits<double>::quiet_NaN(),
                                    1.0};
                              }),
               GameError);
  EXPECT_THROW(extract_policy(*tree,
                              [](const InfoSetId&, int) {
                                return std::vector<double>{1.0};
                              }),
               GameError);
}

TEST(TabularPolicy, ValidatesRows) {
  TabularPolicy p;
  EXPECT_THROW(p.set("k", {0.5, 0.6}), GameError);
  EXPECT_THROW(p.set("k", {1.5, -0.5}), GameError);
  EXPECT_THROW(p.set("k", {}), GameError);
  p.set("k", {0.25, 0.75});
  EXPECT_EQ(p.get("k", 2), (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(p.get("missing", 4), (std::vector<double>(4, 0.25)));
  EXPECT_THROW(p.get("k", 3), GameError);
}

TEST(TabularPolicy, TextRoundTrip) {
  const auto tree = tree_of("leduc");
  std::mt19937_64 rng(9);
  const auto policy = to_policy(oracle::random_strategy(tree->game(), rng));
  std::stringstream buffer;
  policy.write(buffer);
  const TabularPolicy back = TabularPolicy::read(buffer);
  EXPECT_EQ(back, policy);
  EXPECT_EQ(to_flat(*tree, back), to_flat(*tree, from_flat(*tree, to_flat(*tree, policy))));
  std::stringstream bad("0:J:\t0.5 x\n");
  EXPECT_THROW(TabularPolicy::read(bad), GameError);
  std::stringstream notab("0:J: 0.5 0.5\n");
  EXPECT_THROW(TabularPolicy::read(notab), GameError);
}

}  // namespace
}  // namespace regret_forge
