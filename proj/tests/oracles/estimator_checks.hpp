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

// Exact and empirical checks of the sampled-advantage estimators, shared by
// the unit tests and the acceptance binary.

#ifndef REGRET_FORGE_TESTS_ORACLES_ESTIMATOR_CHECKS_HPP_
#define REGRET_FORGE_TESTS_ORACLES_ESTIMATOR_CHECKS_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles/naive_eval.hpp"
#include "oracles/sampling_oracle.hpp"
#include "regret_forge/traversal.hpp"

namespace regret_forge::oracle {

using BaselineFn = CallbackModel::BaselineFn;

inline CallbackModel model_of(const Strategy& s, BaselineFn q = nullptr) {
  return CallbackModel(
      [s](const InfoSetId& info, int n) { return row(s, info.key, n); },
      std::move(q));
}

// Arbitrary but fixed Q values in [-1, 1], a pure function of (seed, h).
inline BaselineFn random_baseline(std::uint64_t seed) {
  return [seed](const History& h, int n) {
    std::vector<std::uint32_t> words = {static_cast<std::uint32_t>(seed)};
    for (Action a : h.actions()) words.push_back(static_cast<std::uint32_t>(a) + 1);
    std::seed_seq seq(words.begin(), words.end());
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> q(static_cast<std::size_t>(n));
    for (double& x : q) x = u(rng);
    return q;
  };
}

// Q(h, a) = expected u_0 after a under s.
inline BaselineFn exact_baseline(const Game& game, const Strategy& s) {
  auto cache = std::make_shared<std::map<std::vector<Action>, std::vector<double>>>();
  return [&game, s, cache](const History& h, int n) {
    std::vector<Action> key(h.actions().begin(), h.actions().end());
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    const auto legal = game.legal_actions(h);
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      q[static_cast<std::size_t>(a)] =
          value(game, s, 0, game.apply_action(h, legal[static_cast<std::size_t>(a)]));
    }
    cache->emplace(std::move(key), q);
    return q;
  };
}

// r(I, ·) = v(I, ·) − Σ σ v(I, ·) for every infoset of player i.
inline std::map<std::string, std::vector<double>> exact_regrets(
    const Game& game, const Strategy& s, Player i) {
  auto out = counterfactual_action_values(game, s, i);
  for (auto& [key, v] : out) {
    const auto sigma = row(s, key, static_cast<int>(v.size()));
    double mean = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a) mean += sigma[a] * v[a];
    for (double& x : v) x -= mean;
  }
  return out;
}

struct TheoremErrors {
  double hat = 0.0;       // max |E[r̂|Z_I] − r/π^ξ(I)|
  double check = 0.0;     // max |E[ř|Z_I] − A(I, a)|
  double baseline = 0.0;  // max |E[r̄|Z_I] − A(I, a)|, when q is given
  int infosets = 0;
};

// Full-enumeration conditional expectations for traverser i.
inline TheoremErrors theorem_errors(const Game& game, const Strategy& s,
                                    double eps, Player i, BaselineFn q = nullptr) {
  const auto model = model_of(s, q);
  const auto plain = model_of(s);
  const auto episodes = enumerate_episodes(game, s, eps, i);
  const auto reaches = infoset_reaches(game, s, eps, i);
  const auto regrets = exact_regrets(game, s, i);

  std::map<std::string, std::vector<double>> sum_hat, sum_check, sum_bar;
  for (const auto& z : episodes) {
    for (const auto& [key, taken] : own_decisions(game, z.actions, i)) {
      const int n = static_cast<int>(regrets.at(key).size());
      const InfoSetId info{i, key};
      const auto sigma = row(s, key, n);
      std::vector<double> vh(static_cast<std::size_t>(n)), vc(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) {
        vh[static_cast<std::size_t>(a)] = estimator_hat(game, plain, eps, z.actions, info, a);
        vc[static_cast<std::size_t>(a)] = estimator_check(game, plain, eps, z.actions, info, a);
      }
      const auto rh = sampled_advantages(vh, sigma);
      const auto rc = sampled_advantages(vc, sigma);
      auto& sh = sum_hat[key];
      auto& sc = sum_check[key];
      sh.resize(static_cast<std::size_t>(n), 0.0);
      sc.resize(static_cast<std::size_t>(n), 0.0);
      for (int a = 0; a < n; ++a) {
        sh[static_cast<std::size_t>(a)] += z.probability * rh[static_cast<std::size_t>(a)];
        sc[static_cast<std::size_t>(a)] += z.probability * rc[static_cast<std::size_t>(a)];
      }
    }
    if (q) {
      ReplayPicker picker(z.actions);
      TraversalOptions opts;
      opts.traverser = i;
      opts.epsilon = eps;
      const auto result = traverse(game, model, opts, picker);
      for (const auto& sample : result.advantages) {
        auto& sb = sum_bar[sample.infoset.key];
        sb.resize(sample.advantages.size(), 0.0);
        for (std::size_t a = 0; a < sb.size(); ++a) {
          sb[a] += z.probability * sample.advantages[a];
        }
      }
    }
  }

  TheoremErrors err;
  for (const auto& [key, r] : regrets) {
    const auto& reach = reaches.at(key);
    if (reach.xi == 0.0) continue;
    ++err.infosets;
    for (std::size_t a = 0; a < r.size(); ++a) {
      const double advantage = r[a] / reach.others_sigma;
      err.hat = std::max(err.hat, std::abs(sum_hat[key][a] / reach.xi - r[a] / reach.xi));
      err.check = std::max(err.check, std::abs(sum_check[key][a] / reach.xi - advantage));
      if (q) {
        err.baseline = std::max(err.baseline, std::abs(sum_bar[key][a] / reach.xi - advantage));
      }
    }
  }
  return err;
}

struct VarianceRow {
  std::string key;
  int action = 0;
  long visits = 0;
  double var_bar = 0.0;
  double var_check = 0.0;
};

// Empirical variance of r̄ (exact Q) and ř (Q ≡ 0) per (I, a) over sampled
// episodes of traverser i. Both estimates come from the same episodes.
inline std::vector<VarianceRow> variance_rows(const Game& game,
                                              const Strategy& s, double eps,
                                              Player i, int episodes,
                                              std::uint64_t seed) {
  const auto model = model_of(s, exact_baseline(game, s));
  struct Moments {
    long n = 0;
    std::vector<double> sum_bar, sq_bar, sum_check, sq_check;
  };
  std::map<std::string, Moments> acc;
  Rng rng(seed);
  TraversalOptions with_q;
  with_q.traverser = i;
  with_q.epsilon = eps;
  TraversalOptions without_q = with_q;
  without_q.use_baseline = false;
  for (int e = 0; e < episodes; ++e) {
    SamplingPicker sampler(rng);
    const auto bar = traverse(game, model, with_q, sampler);
    ReplayPicker replay(bar.episode);
    const auto check = traverse(game, model, without_q, replay);
    for (std::size_t k = 0; k < bar.advantages.size(); ++k) {
      const auto& rb = bar.advantages[k].advantages;
      const auto& rc = check.advantages[k].advantages;
      auto& m = acc[bar.advantages[k].infoset.key];
      if (m.n == 0) {
        m.sum_bar.assign(rb.size(), 0.0);
        m.sq_bar.assign(rb.size(), 0.0);
        m.sum_check.assign(rb.size(), 0.0);
        m.sq_check.assign(rb.size(), 0.0);
      }
      ++m.n;
      for (std::size_t a = 0; a < rb.size(); ++a) {
        m.sum_bar[a] += rb[a];
        m.sq_bar[a] += rb[a] * rb[a];
        m.sum_check[a] += rc[a];
        m.sq_check[a] += rc[a] * rc[a];
      }
    }
  }
  std::vector<VarianceRow> rows;
  for (const auto& [key, m] : acc) {
    const double n = static_cast<double>(m.n);
    for (std::size_t a = 0; a < m.sum_bar.size(); ++a) {
      VarianceRow r;
      r.key = key;
      r.action = static_cast<int>(a);
      r.visits = m.n;
      r.var_bar = m.sq_bar[a] / n - (m.sum_bar[a] / n) * (m.sum_bar[a] / n);
      r.var_check = m.sq_check[a] / n - (m.sum_check[a] / n) * (m.sum_check[a] / n);
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace regret_forge::oracle

#endif  // REGRET_FORGE_TESTS_ORACLES_ESTIMATOR_CHECKS_HPP_
