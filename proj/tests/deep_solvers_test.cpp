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

#include <gtest/gtest.h>

#include "regret_forge/deep_solvers.hpp"
#include "regret_forge/exploitability.hpp"
#include "toy_games.hpp"

namespace regret_forge {
namespace {

using V = std::vector<double>;

RunConfig tiny(const std::string& game, const std::string& algo) {
  RunConfig c;
  c.game = GameId::parse(game);
  c.variant = DeepVariant::parse(algo);
  c.iterations = 3;
  c.traversals = 40;
  c.advantage = {20, 32};
  c.value = {20, 32};
  c.policy = {30, 32};
  c.num_hiddens = 16;
  return c;
}

TEST(DeepVariant, DefaultsFollowPublishedSettings) {
  const auto dcfr = DeepVariant::parse("vr_deep_dcfr_plus");
  EXPECT_EQ(dcfr.alpha, 2.0);
  EXPECT_EQ(dcfr.gamma, 2.0);
  EXPECT_FALSE(dcfr.uses_prediction);
  EXPECT_TRUE(dcfr.uses_baseline);
  EXPECT_TRUE(dcfr.clipped);
  const auto pdcfr = DeepVariant::parse("vr_deep_pdcfr_plus");
  EXPECT_EQ(pdcfr.alpha, 2.3);
  EXPECT_EQ(pdcfr.gamma, 2.0);
  EXPECT_TRUE(pdcfr.uses_prediction);
  const auto ablation = DeepVariant::parse("deep_pdcfr_plus_no_baseline");
  EXPECT_TRUE(ablation.uses_prediction);
  EXPECT_FALSE(ablation.uses_baseline);
  EXPECT_EQ(DeepVariant::parse("vr_deep_cfr").discount, DiscountKind::kNone);
  EXPECT_EQ(DeepVariant::parse("vr_deep_linear_cfr").discount, DiscountKind::kLinear);
  for (const char* name : {"vr_deep_dcfr_plus", "vr_deep_pdcfr_plus", "vr_deep_cfr",
                           "vr_deep_linear_cfr", "deep_pdcfr_plus_no_baseline"}) {
    EXPECT_EQ(DeepVariant::parse(name).name(), name);
  }
  EXPECT_THROW(DeepVariant::parse("os_deep_cfr"), std::invalid_argument);
}

TEST(RunConfig, DefaultsFollowPublishedSettings) {
  const RunConfig c;
  EXPECT_EQ(c.traversals, 10000);
  EXPECT_EQ(c.epsilon, 0.6);
  EXPECT_EQ(c.learning_rate, 0.001);
  EXPECT_EQ(c.advantage.steps, 750);
  EXPECT_EQ(c.advantage.batch_size, 2048);
  EXPECT_EQ(c.policy.steps, 5000);
  EXPECT_EQ(c.value.steps, 10000);
  EXPECT_EQ(c.advantage_buffer_size, 1000000u);
  EXPECT_EQ(c.num_layers, 3);
  EXPECT_EQ(c.num_hiddens, 64);
  EXPECT_NO_THROW(c.validate());
}

TEST(RunConfig, RejectsOutOfRangeValues) {
  RunConfig c;
  c.epsilon = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.iterations = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.policy.batch_size = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.variant.alpha = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(DeepStrategy, WorkedExamples) {
  const auto dcfr = DeepVariant::parse("vr_deep_dcfr_plus");
  const auto pdcfr = DeepVariant::parse("vr_deep_pdcfr_plus");
  EXPECT_EQ(deep_strategy(dcfr, V{0, 0, 0}, {}, 1), (V{1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_EQ(deep_strategy(pdcfr, V{5, 0}, V{0, 0}, 1), (V{0.5, 0.5}));
  EXPECT_EQ(deep_strategy(dcfr, V{2, -1}, {}, 7), (V{1, 0}));
  // Discount at t = 2 is 1 / (1 + 1) for any alpha.
  EXPECT_EQ(deep_strategy(pdcfr, V{4, 0}, V{-1, 1}, 2), (V{0.5, 0.5}));
  EXPECT_EQ(deep_strategy(pdcfr, V{-4, -2}, V{-1, -3}, 5), (V{1, 0}));
}

TEST(QTargets, WorkedExamples) {
  TransitionSample terminal;
  terminal.terminal = true;
  terminal.utility = 1.0;
  EXPECT_EQ(q_training_target(terminal, {}, {}), 1.0);
  TransitionSample inner;
  EXPECT_EQ(q_training_target(inner, V{0.3, 0.7}, V{0, 0}), 0.0);
  EXPECT_EQ(q_training_target(inner, V{0.5, 0.5}, V{0.4, -0.4}), 0.0);
  EXPECT_NEAR(q_training_target(inner, V{1, 0}, V{0.25, -1}), 0.25, 1e-15);
}

TEST(Checkpoints, GeometricSchedule) {
  EXPECT_EQ(checkpoint_iterations(100, true), (std::vector<int>{1, 2, 4, 8, 16, 32, 64, 100}));
  EXPECT_EQ(checkpoint_iterations(8, true), (std::vector<int>{1, 2, 4, 8}));
  EXPECT_EQ(checkpoint_iterations(1, true), (std::vector<int>{1}));
  EXPECT_EQ(checkpoint_iterations(5, false), (std::vector<int>{5}));
}

TEST(DeepSolver, BufferDisciplineAndEpisodeAccounting) {
  auto c = tiny("leduc", "vr_deep_pdcfr_plus");
  c.policy_buffer_size = 50;
  c.value_buffer_size = 64;
  DeepSolver solver(c);
  for (int t = 1; t <= 3; ++t) {
    solver.iterate();
    EXPECT_EQ(solver.episodes(), 2 * c.traversals * t);
    EXPECT_LE(solver.policy_buffer_size(), 50u);
    EXPECT_EQ(solver.value_buffer_size(), 64u);
    // Only this iteration's samples: at most 4 traverser decisions an episode.
    for (Player p : {0, 1}) {
      EXPECT_GE(solver.advantage_buffer_size(p), static_cast<std::size_t>(c.traversals));
      EXPECT_LE(solver.advantage_buffer_size(p), static_cast<std::size_t>(4 * c.traversals));
    }
  }
}

TEST(DeepSolver, AdvantageBufferOverflowIsAnError) {
  auto c = tiny("kuhn", "vr_deep_dcfr_plus");
  c.advantage_buffer_size = 10;
  DeepSolver solver(c);
  EXPECT_THROW(solver.iterate(), BufferError);
}

TEST(DeepSolver, NoBaselineLeavesValueNetworkUntouched) {
  const auto c = tiny("kuhn", "deep_pdcfr_plus_no_baseline");
  DeepSolver solver(c);
  const auto before = solver.value_network().parameters();
  solver.iterate();
  solver.iterate();
  EXPECT_EQ(solver.value_network().parameters(), before);
  EXPECT_EQ(solver.value_buffer_size(), 0u);
}

TEST(DeepSolver, FirstIterationPlaysUniformly) {
  const auto c = tiny("leduc", "vr_deep_dcfr_plus");
  DeepSolver solver(c);
  // Before any training the networks output zeros.
  const InfoSetId info = solver.tree().infoset(0).id;
  const auto sigma = solver.current_strategy(info);
  for (double p : sigma) EXPECT_NEAR(p, 1.0 / sigma.size(), 1e-15);
}

TEST(DeepRun, SameSeedSameLog) {
  auto c = tiny("kuhn", "vr_deep_pdcfr_plus");
  c.iterations = 4;
  auto once = [&] {
    const auto r = run(c, {}, false);
    std::vector<V> rows;
    for (const auto& row : r.log.rows) {
      rows.push_back({double(row.iteration), double(row.episodes), row.exploitability,
                      row.wall_time_s});
    }
    rows.push_back(r.average_policy.parameters());
    return rows;
  };
  const auto a = once();
  EXPECT_EQ(a, once());
  EXPECT_EQ(a.size(), 4u);  // t = 1, 2, 4 plus the network
  c.seed = 1;
  EXPECT_NE(a, [&] {
    const auto r = run(c, {}, false);
    std::vector<V> rows;
    for (const auto& row : r.log.rows) {
      rows.push_back({double(row.iteration), double(row.episodes), row.exploitability,
                      row.wall_time_s});
    }
    rows.push_back(r.average_policy.parameters());
    return rows;
  }());
}

TEST(DeepRun, LogIsWellFormed) {
  auto c = tiny("kuhn", "vr_deep_linear_cfr");
  c.iterations = 5;
  std::vector<RunLogRow> streamed;
  const auto r = run(c, [&](const RunLogRow& row) { streamed.push_back(row); });
  ASSERT_EQ(r.log.rows.size(), 4u);
  ASSERT_EQ(streamed.size(), 4u);
  for (std::size_t k = 0; k < r.log.rows.size(); ++k) {
    const auto& row = r.log.rows[k];
    EXPECT_EQ(row.episodes, 2 * c.traversals * row.iteration);
    EXPECT_GE(row.exploitability, 0.0);
    EXPECT_GE(row.wall_time_s, 0.0);
    if (k > 0) {
      EXPECT_GT(row.episodes, r.log.rows[k - 1].episodes);
    }
  }
  EXPECT_EQ(r.log.rows.back().iteration, 5);
}

TEST(DeepRun, SingleIterationAverageIsNearUniform) {
  auto c = tiny("kuhn", "vr_deep_pdcfr_plus");
  c.iterations = 1;
  c.traversals = 200;
  c.policy = {500, 128};
  const auto r = run(c, {}, false);
  const GameTree tree(new_game("kuhn"));
  const auto policy = policy_from_network(tree, r.average_policy);
  for (const auto& [key, probs] : policy.table()) {
    for (double p : probs) EXPECT_NEAR(p, 0.5, 0.05) << key;
  }
}

TEST(DeepRun, ConvergesOnBiasedPennies) {
  auto c = tiny("kuhn", "vr_deep_pdcfr_plus");
  c.iterations = 200;
  c.traversals = 50;
  c.advantage = {30, 64};
  c.value = {30, 64};
  c.policy = {1000, 128};
  c.geometric_checkpoints = false;
  const auto game = std::make_shared<testing_games::BiasedPennies>();
  const auto r = run(c, game, {}, false);
  const GameTree tree(game);
  const auto policy = policy_from_network(tree, r.average_policy);
  for (const char* key : {"0:", "1:"}) {
    const auto row = policy.get(key, 2);
    EXPECT_NEAR(row[0], 1.0 / 3.0, 0.05) << key;
  }
}

}  // namespace
}  // namespace regret_forge
