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
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles/naive_eval.hpp"
#include "regret_forge/cfr.hpp"
#include "regret_forge/exploitability.hpp"

namespace regret_forge {
namespace {

using V = std::vector<double>;

RegretUpdateRule rule_of(CfrVariant v) { return RegretUpdateRule::defaults(v); }

std::shared_ptr<const GameTree> tree_of(const char* name) {
  return std::make_shared<const GameTree>(new_game(name));
}

const CfrVariant kAllVariants[] = {
    CfrVariant::kCfr,      CfrVariant::kCfrPlus,  CfrVariant::kLinearCfr,
    CfrVariant::kDcfr,     CfrVariant::kDcfrPlus, CfrVariant::kPcfrPlus,
    CfrVariant::kPdcfrPlus};

TEST(RegretMatching, WorkedExamples) {
  EXPECT_EQ(regret_matching(V{2, 1, 1}), (V{0.5, 0.25, 0.25}));
  EXPECT_EQ(regret_matching(V{-1, 0, -3}), (V{1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_EQ(regret_matching(V{3, -1}), (V{1, 0}));
  EXPECT_THROW(regret_matching(V{}), std::invalid_argument);
}

TEST(RegretMatching, ArgmaxWorkedExamples) {
  EXPECT_EQ(regret_matching_argmax(V{-1, -0.5, -3}), (V{0, 1, 0}));
  EXPECT_EQ(regret_matching_argmax(V{2, 2}), (V{0.5, 0.5}));
  EXPECT_EQ(regret_matching_argmax(V{-1, -1}), (V{1, 0}));
  EXPECT_EQ(regret_matching_argmax(V{0, 0, -1}), (V{1, 0, 0}));
}

TEST(RegretMatching, AlwaysADistribution) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 3.0);
  std::uniform_int_distribution<int> size(1, 9);
  for (int trial = 0; trial < 2000; ++trial) {
    V r(static_cast<std::size_t>(size(rng)));
    for (double& x : r) x = trial % 5 == 0 ? -std::abs(normal(rng)) : normal(rng);
    for (const V& p : {regret_matching(r), regret_matching_argmax(r)}) {
      double total = 0.0;
      for (double x : p) {
        EXPECT_GE(x, 0.0);
        total += x;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(RegretUpdate, WorkedExamples) {
  EXPECT_EQ(update_cumulative_regret(rule_of(CfrVariant::kDcfrPlus), 4, -1, 2),
            1.0);
  EXPECT_EQ(update_cumulative_regret(rule_of(CfrVariant::kCfrPlus), 0.5, -2, 7),
            0.0);
  EXPECT_EQ(update_cumulative_regret(rule_of(CfrVariant::kLinearCfr), 1, 2, 3),
            7.0);
  EXPECT_EQ(update_cumulative_regret(rule_of(CfrVariant::kCfr), -1, -2, 3),
            -3.0);
  EXPECT_EQ(update_cumulative_regret(rule_of(CfrVariant::kPcfrPlus), 4, -1, 2),
            3.0);
}

TEST(RegretUpdate, DcfrDiscountsBySign) {
  RegretUpdateRule rule = rule_of(CfrVariant::kDcfr);  // alpha 1.5, beta 0
  // t = 5: positive multiplier 4^1.5 / (4^1.5 + 1) = 8/9, negative 1/2.
  EXPECT_DOUBLE_EQ(update_cumulative_regret(rule, 9, 1, 5), 9);
  EXPECT_DOUBLE_EQ(update_cumulative_regret(rule, -4, 1, 5), -1);
  EXPECT_EQ(update_cumulative_regret(rule, 9, -20, 5), -12.0);
}

TEST(RegretUpdate, FirstIterationDiscardsAccumulator) {
  EXPECT_EQ(discount_multiplier(1, 2.0), 0.0);
  EXPECT_EQ(discount_multiplier(1, 0.0), 0.0);
  EXPECT_EQ(discount_multiplier(2, 0.0), 0.5);
  EXPECT_EQ(discount_multiplier(3, 1.0), 2.0 / 3.0);
  EXPECT_EQ(discount_multiplier(7, std::numeric_limits<double>::infinity()),
            1.0);
  EXPECT_EQ(update_cumulative_regret(rule_of(CfrVariant::kDcfrPlus), 100, 1, 1),
            1.0);
}

TEST(RegretUpdate, UndiscountedDcfrPlusIsCfrPlus) {
  RegretUpdateRule dcfr_plus = rule_of(CfrVariant::kDcfrPlus);
  dcfr_plus.alpha = std::numeric_limits<double>::infinity();
  const RegretUpdateRule cfr_plus = rule_of(CfrVariant::kCfrPlus);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double r_prev = std::abs(normal(rng));
    const double r_t = normal(rng);
    const int t = 1 + trial % 50;
    EXPECT_EQ(update_cumulative_regret(dcfr_plus, r_prev, r_t, t),
              update_cumulative_regret(cfr_plus, r_prev, r_t, t));
  }
}

TEST(RegretUpdate, RejectsIterationZero) {
  EXPECT_THROW(update_cumulative_regret(rule_of(CfrVariant::kCfr), 0, 0, 0),
               std::invalid_argument);
  EXPECT_THROW(
      update_cumulative_strategy(rule_of(CfrVariant::kCfr), 0, 0, 0),
      std::invalid_argument);
}

TEST(Prediction, WorkedExamples) {
  // t = 1 makes t^alpha / (t^alpha + 1) = 1/2 for every alpha.
  EXPECT_EQ(
      predicted_cumulative_regret(rule_of(CfrVariant::kPdcfrPlus), 2, -0.5, 1),
      0.5);
  EXPECT_EQ(
      predicted_cumulative_regret(rule_of(CfrVariant::kPcfrPlus), 1, -3, 4),
      0.0);
  EXPECT_EQ(
      predicted_cumulative_regret(rule_of(CfrVariant::kPcfrPlus), 1, 0.5, 4),
      1.5);
  EXPECT_THROW(
      predicted_cumulative_regret(rule_of(CfrVariant::kDcfr), 1, 1, 1),
      std::invalid_argument);
  RegretUpdateRule rule = rule_of(CfrVariant::kPdcfrPlus);
  rule.alpha = 1.0;
  // t = 3: 3 / 4 of the stored regret.
  EXPECT_EQ(predicted_cumulative_regret(rule, 8, 1, 3), 7.0);
}

TEST(StrategyUpdate, WorkedExamples) {
  for (CfrVariant v : {CfrVariant::kDcfr, CfrVariant::kDcfrPlus,
                       CfrVariant::kPcfrPlus, CfrVariant::kPdcfrPlus}) {
    EXPECT_EQ(update_cumulative_strategy(rule_of(v), 4, 1, 2), 2.0);
  }
  EXPECT_EQ(update_cumulative_strategy(rule_of(CfrVariant::kCfr), 0, 0.3, 9),
            0.3);
  EXPECT_EQ(update_cumulative_strategy(rule_of(CfrVariant::kCfrPlus), 1, 0.5, 4),
            3.0);
  EXPECT_EQ(
      update_cumulative_strategy(rule_of(CfrVariant::kLinearCfr), 1, 0.5, 4),
      3.0);
  EXPECT_THROW(
      update_cumulative_strategy(rule_of(CfrVariant::kCfr), 1, -0.1, 4),
      std::invalid_argument);
}

TEST(AverageStrategy, NormalizesRowsAndDefaultsToUniform) {
  const auto tree = tree_of("kuhn");
  V cumulative(static_cast<std::size_t>(tree->flat_size()), 0.0);
  cumulative[0] = 3;
  cumulative[1] = 1;
  const V avg = average_strategy(*tree, cumulative);
  EXPECT_EQ(avg[0], 0.75);
  EXPECT_EQ(avg[1], 0.25);
  EXPECT_EQ(avg[2], 0.5);
  EXPECT_EQ(avg[3], 0.5);
  TabularPolicy empty;
  EXPECT_EQ(empty.get("0:K:", 2), (V{0.5, 0.5}));
}

TEST(RuleGrammar, ParsesVariantsAndOverrides) {
  const auto dcfr = RegretUpdateRule::parse("dcfr");
  EXPECT_EQ(dcfr.variant, CfrVariant::kDcfr);
  EXPECT_EQ(dcfr.alpha, 1.5);
  EXPECT_EQ(dcfr.beta, 0.0);
  EXPECT_EQ(dcfr.gamma, 2.0);
  const auto custom = RegretUpdateRule::parse("pdcfr+:alpha=2.5,gamma=3");
  EXPECT_EQ(custom.variant, CfrVariant::kPdcfrPlus);
  EXPECT_EQ(custom.alpha, 2.5);
  EXPECT_EQ(custom.gamma, 3.0);
  EXPECT_EQ(RegretUpdateRule::parse("linear").variant, CfrVariant::kLinearCfr);
  EXPECT_EQ(RegretUpdateRule::parse("cfr+").variant, CfrVariant::kCfrPlus);
  EXPECT_EQ(RegretUpdateRule::parse("dcfr_plus").variant, CfrVariant::kDcfrPlus);
  for (CfrVariant v : kAllVariants) {
    const auto rule = rule_of(v);
    const auto back = RegretUpdateRule::parse(rule.to_string());
    EXPECT_EQ(back.variant, rule.variant);
    EXPECT_EQ(back.alpha, rule.alpha);
    EXPECT_EQ(back.beta, rule.beta);
    EXPECT_EQ(back.gamma, rule.gamma);
  }
  EXPECT_EQ(RegretUpdateRule::parse("dcfr").to_string(),
            "dcfr:alpha=1.5,beta=0,gamma=2");
}

TEST(RuleGrammar, RejectsBadInput) {
  EXPECT_THROW(RegretUpdateRule::parse("cfr++"), std::invalid_argument);
  EXPECT_THROW(RegretUpdateRule::parse("dcfr:alpha"), std::invalid_argument);
  EXPECT_THROW(RegretUpdateRule::parse("dcfr:delta=1"), std::invalid_argument);
  EXPECT_THROW(RegretUpdateRule::parse("dcfr:alpha=1x"), std::invalid_argument);
  EXPECT_THROW(RegretUpdateRule::parse("dcfr:alpha=inf"), std::invalid_argument);
  EXPECT_THROW(RegretUpdateRule::parse("dcfr:gamma=-1"), std::invalid_argument);
  RegretUpdateRule simultaneous = rule_of(CfrVariant::kCfrPlus);
  simultaneous.alternating = false;
  EXPECT_THROW(simultaneous.validate(), std::invalid_argument);
}

TEST(CfrSolver, FirstIterationAverageIsUniform) {
  const auto tree = tree_of("kuhn");
  for (CfrVariant v : kAllVariants) {
    const auto run = run_cfr(tree, rule_of(v), 1);
    ASSERT_EQ(run.average.size(), 12u);
    for (const auto& [key, probs] : run.average.table()) {
      EXPECT_EQ(probs, (V{0.5, 0.5})) << variant_name(v) << " " << key;
    }
    ASSERT_EQ(run.log.size(), 1u);
    EXPECT_NEAR(run.log[0].exploitability,
                exploitability(*tree, tree->uniform_flat()), 1e-15);
  }
}

TEST(CfrSolver, ClippedVariantsKeepRegretsNonnegative) {
  for (const char* game : {"kuhn", "leduc"}) {
    const auto tree = tree_of(game);
    for (CfrVariant v : kAllVariants) {
      CfrSolver solver(tree, rule_of(v));
      if (!solver.rule().clipped()) continue;
      for (int t = 0; t < (game[0] == 'k' ? 200 : 30); ++t) {
        solver.iterate();
        for (double r : solver.cumulative_regret()) ASSERT_GE(r, 0.0);
        for (double c : solver.cumulative_strategy()) ASSERT_GE(c, 0.0);
      }
    }
  }
}

TEST(CfrSolver, CounterfactualValuesAreConsistent) {
  const auto tree = tree_of("leduc");
  for (CfrVariant v : kAllVariants) {
    CfrSolver solver(tree, rule_of(v));
    for (int t = 0; t < 20; ++t) {
      solver.iterate();
      EXPECT_LT(solver.last_consistency_error(), 1e-10);
    }
  }
}

TEST(CfrSolver, ZeroPredictionReproducesCfrPlus) {
  const auto tree = tree_of("kuhn");
  CfrSolver plus(tree, rule_of(CfrVariant::kCfrPlus));
  CfrSolver predicted(tree, rule_of(CfrVariant::kPcfrPlus),
                      CfrSolver::Prediction::kZero);
  for (int t = 0; t < 500; ++t) {
    plus.iterate();
    predicted.iterate();
    const auto a = plus.current_strategy();
    const auto b = predicted.current_strategy();
    ASSERT_TRUE(std::equal(a.begin(), a.end(), b.begin())) << "iteration " << t;
  }
}

// Independent first-iteration oracle: with uniform play the instantaneous
// regret is v(I, a) - mean_a v(I, a) from the naive evaluator.
TEST(CfrSolver, FirstIterationRegretsMatchNaiveValues) {
  const auto tree = tree_of("kuhn");
  CfrSolver solver(tree, rule_of(CfrVariant::kCfr));
  solver.iterate();
  const auto player0 =
      oracle::counterfactual_action_values(tree->game(), {}, 0);
  for (const auto& set : tree->infosets()) {
    if (set.id.owner != 0) continue;
    const auto& values = player0.at(set.id.key);
    const double mean = 0.5 * (values[0] + values[1]);
    for (int a = 0; a < 2; ++a) {
      EXPECT_NEAR(solver.cumulative_regret()[static_cast<std::size_t>(set.offset + a)],
                  values[static_cast<std::size_t>(a)] - mean, 1e-12);
    }
  }
}

TEST(CfrSolver, AverageApproachesUniqueSecondPlayerEquilibrium) {
  const auto tree = tree_of("kuhn");
  const auto run = run_cfr(tree, rule_of(CfrVariant::kCfrPlus), 3000,
                           [](int t) { return t == 3000; });
  const auto reference = oracle::kuhn_equilibrium(0.0);
  for (const auto& [key, probs] : reference) {
    if (key[0] != '1') continue;
    const auto got = run.average.get(key, 2);
    EXPECT_NEAR(got[1], probs[1], 2e-2) << key;
  }
}

TEST(CfrSolver, KuhnConvergence) {
  const auto tree = tree_of("kuhn");
  EXPECT_LT(run_cfr(tree, rule_of(CfrVariant::kCfrPlus), 1000,
                    [](int t) { return t == 1000; })
                .log.back()
                .exploitability,
            1e-3);
}

TEST(CfrSolver, LeducPredictiveDiscountedConvergence) {
  const auto tree = tree_of("leduc");
  const auto run = run_cfr(tree, rule_of(CfrVariant::kPdcfrPlus), 2000,
                           [](int t) { return t == 2000; });
  EXPECT_LT(run.log.back().exploitability, 1e-2);
  EXPECT_NEAR(exploitability(*tree, run.average), run.log.back().exploitability,
              1e-12);
}

TEST(CfrSolver, MoreIterationsLessExploitable) {
  const auto tree = tree_of("kuhn");
  for (CfrVariant v : kAllVariants) {
    const auto run = run_cfr(tree, rule_of(v), 1000,
                             [](int t) { return t == 10 || t == 1000; });
    ASSERT_EQ(run.log.size(), 2u);
    EXPECT_LT(run.log[1].exploitability, run.log[0].exploitability)
        << variant_name(v);
  }
}

TEST(CfrSolver, SimultaneousUpdatesStillConverge) {
  const auto tree = tree_of("kuhn");
  RegretUpdateRule rule = rule_of(CfrVariant::kCfr);
  rule.alternating = false;
  const auto run =
      run_cfr(tree, rule, 2000, [](int t) { return t == 2000; });
  EXPECT_LT(run.log.back().exploitability, 1e-2);
}

}  // namespace
}  // namespace regret_forge
