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

#ifndef REGRET_FORGE_CFR_HPP_
#define REGRET_FORGE_CFR_HPP_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regret_forge/game_tree.hpp"
#include "regret_forge/policy.hpp"

namespace regret_forge {

enum class CfrVariant {
  kCfr,
  kCfrPlus,
  kLinearCfr,
  kDcfr,
  kDcfrPlus,
  kPcfrPlus,
  kPdcfrPlus,
};

struct RegretUpdateRule {
  CfrVariant variant = CfrVariant::kCfrPlus;
  double alpha = 0.0;  // positive-regret discount exponent
  double beta = 0.0;   // negative-regret discount exponent (dcfr)
  double gamma = 0.0;  // cumulative-strategy exponent
  bool alternating = true;

  // dcfr: 1.5/0/2, dcfr+: 2/-/2, pcfr+: -/-/2, pdcfr+: 2.3/-/2.
  static RegretUpdateRule defaults(CfrVariant variant);

  // `cfr | cfr+ | linear | dcfr | dcfr+ | pcfr+ | pdcfr+`, optionally
  // followed by `:alpha=..,beta=..,gamma=..`.
  static RegretUpdateRule parse(std::string_view text);
  std::string to_string() const;

  bool clipped() const;     // stored regrets are kept nonnegative
  bool predictive() const;  // pcfr+ / pdcfr+
  void validate() const;    // throws std::invalid_argument
};

std::string_view variant_name(CfrVariant variant);

// (t-1)^e / ((t-1)^e + 1) with 0^e = 0; an infinite exponent yields 1.
double discount_multiplier(int t, double exponent);

std::vector<double> regret_matching(std::span<const double> regrets);
// Point mass on the lowest-index maximum when no regret is positive.
std::vector<double> regret_matching_argmax(std::span<const double> regrets);

double update_cumulative_regret(const RegretUpdateRule& rule, double r_prev,
                                double r_t, int t);
double predicted_cumulative_regret(const RegretUpdateRule& rule, double r_t,
                                   double r_pred, int t);
double update_cumulative_strategy(const RegretUpdateRule& rule, double c_prev,
                                  double weight, int t);

// Row-normalizes cumulative strategy; all-zero rows become uniform.
std::vector<double> average_strategy(const GameTree& tree,
                                     std::span<const double> cumulative);

// Exact full-traversal solver. State is kept in GameTree flat layout.
class CfrSolver {
 public:
  enum class Prediction { kLastRegret, kZero };

  CfrSolver(std::shared_ptr<const GameTree> tree, RegretUpdateRule rule,
            Prediction prediction = Prediction::kLastRegret);

  void iterate();
  int iteration() const { return t_; }

  const GameTree& tree() const { return *tree_; }
  const RegretUpdateRule& rule() const { return rule_; }
  // Strategy the next iteration will play.
  std::span<const double> current_strategy() const { return strategy_; }
  std::span<const double> cumulative_regret() const { return regret_; }
  std::span<const double> cumulative_strategy() const { return cumulative_; }
  std::span<const double> last_instantaneous_regret() const { return last_; }
  // Largest |sum_a sigma(I,a) v(I,a) - v(I)| seen in the last iteration.
  double last_consistency_error() const { return consistency_error_; }

  std::vector<double> average_flat() const;
  TabularPolicy average_policy() const;
  TabularPolicy current_policy() const;

 private:
  void update_player(Player i, std::span<const double> profile);
  void refresh_strategy(const TreeInfoSet& set);

  std::shared_ptr<const GameTree> tree_;
  RegretUpdateRule rule_;
  Prediction prediction_;
  int t_ = 0;
  std::vector<double> strategy_;
  std::vector<double> regret_;
  std::vector<double> cumulative_;
  std::vector<double> last_;
  double consistency_error_ = 0.0;
};

struct CfrLogEntry {
  int iteration = 0;
  double exploitability = 0.0;
};

struct CfrRun {
  TabularPolicy average;
  std::vector<CfrLogEntry> log;
};

// Runs T iterations and logs exploitability of the average strategy at
// every iteration for which log_at returns true (all by default).
CfrRun run_cfr(std::shared_ptr<const GameTree> tree,
               const RegretUpdateRule& rule, int iterations,
               const std::function<bool(int)>& log_at = {});

}  // namespace regret_forge

#endif  // REGRET_FORGE_CFR_HPP_
