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

#include "regret_forge/exploitability.hpp"

#include <cmath>
#include <limits>

namespace regret_forge {

namespace {

void check_layout(const GameTree& tree, std::span<const double> policy) {
  if (static_cast<int>(policy.size()) != tree.flat_size()) {
    throw GameError("flat policy has wrong length");
  }
}

double player_value(const GameTree& tree, int n, Player i) {
  const double v = tree.node(n).value;
  return i == 0 ? v : -v;
}

class CfvWalker {
 public:
  CfvWalker(const GameTree& tree, std::span<const double> policy, Player i,
            CounterfactualValues& out)
      : tree_(tree), policy_(policy), i_(i), out_(out) {}

  double walk(int n, double own, double opp) {
    const TreeNode& node = tree_.node(n);
    if (node.player == kTerminalPlayer) return player_value(tree_, n, i_);
    double value = 0.0;
    if (node.player == kChancePlayer) {
      for (int k = 0; k < node.num_edges; ++k) {
        const int e = node.first_edge + k;
        const double p = tree_.edge_probability(e);
        value += p * walk(tree_.edge_child(e), own, opp * p);
      }
      return value;
    }
    const TreeInfoSet& set = tree_.infoset(node.infoset);
    const auto I = static_cast<std::size_t>(node.infoset);
    if (node.player == i_) {
      for (int k = 0; k < node.num_edges; ++k) {
        const auto slot = static_cast<std::size_t>(set.offset + k);
        const double p = policy_[slot];
        const double child =
            walk(tree_.edge_child(node.first_edge + k), own * p, opp);
        out_.action_values[slot] += opp * child;
        value += p * child;
      }
      out_.infoset_values[I] += opp * value;
      out_.opponent_reach[I] += opp;
      out_.own_reach[I] = own;
      return value;
    }
    for (int k = 0; k < node.num_edges; ++k) {
      const double p = policy_[static_cast<std::size_t>(set.offset + k)];
      // Own reach below still feeds the average strategy.
      if (p == 0.0 && own == 0.0) continue;
      value += p * walk(tree_.edge_child(node.first_edge + k), own, opp * p);
    }
    return value;
  }

 private:
  const GameTree& tree_;
  std::span<const double> policy_;
  Player i_;
  CounterfactualValues& out_;
};

// Generalized backward induction: an infoset's action is chosen once by
// aggregating opponent-and-chance reach over all its histories.
class BestResponder {
 public:
  BestResponder(const GameTree& tree, std::span<const double> policy, Player i)
      : tree_(tree),
        policy_(policy),
        i_(i),
        reach_(tree.nodes().size(), 0.0),
        value_(tree.nodes().size(), kUnset),
        choice_(static_cast<std::size_t>(tree.num_infosets()), -1) {
    fill_reach(tree.root(), 1.0);
  }

  double value(int n) {
    auto& memo = value_[static_cast<std::size_t>(n)];
    if (!std::isnan(memo)) return memo;
    const TreeNode& node = tree_.node(n);
    double v = 0.0;
    if (node.player == kTerminalPlayer) {
      v = player_value(tree_, n, i_);
    } else if (node.player == kChancePlayer) {
      for (int k = 0; k < node.num_edges; ++k) {
        const int e = node.first_edge + k;
        v += tree_.edge_probability(e) * value(tree_.edge_child(e));
      }
    } else if (node.player == i_) {
      v = value(tree_.edge_child(node.first_edge + choose(node.infoset)));
    } else {
      const int offset = tree_.infoset(node.infoset).offset;
      for (int k = 0; k < node.num_edges; ++k) {
        const double p = policy_[static_cast<std::size_t>(offset + k)];
        if (p == 0.0) continue;
        v += p * value(tree_.edge_child(node.first_edge + k));
      }
    }
    memo = v;
    return v;
  }

  int choose(int infoset) {
    auto& memo = choice_[static_cast<std::size_t>(infoset)];
    if (memo >= 0) return memo;
    const TreeInfoSet& set = tree_.infoset(infoset);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < set.num_actions(); ++a) {
      double total = 0.0;
      for (int n : set.nodes) {
        const double r = reach_[static_cast<std::size_t>(n)];
        if (r == 0.0) continue;
        total += r * value(tree_.edge_child(tree_.node(n).first_edge + a));
      }
      if (total > best_value) {
        best_value = total;
        best = a;
      }
    }
    memo = best;
    return best;
  }

 private:
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  void fill_reach(int n, double reach) {
    reach_[static_cast<std::size_t>(n)] = reach;
    const TreeNode& node = tree_.node(n);
    if (node.player == kTerminalPlayer) return;
    for (int k = 0; k < node.num_edges; ++k) {
      const int e = node.first_edge + k;
      double p = 1.0;
      if (node.player == kChancePlayer) {
        p = tree_.edge_probability(e);
      } else if (node.player != i_) {
        p = policy_[static_cast<std::size_t>(
            tree_.infoset(node.infoset).offset + k)];
      }
      fill_reach(tree_.edge_child(e), reach * p);
    }
  }

  const GameTree& tree_;
  std::span<const double> policy_;
  Player i_;
  std::vector<double> reach_;
  std::vector<double> value_;
  std::vector<int> choice_;
};

}  // namespace

CounterfactualValues counterfactual_values(const GameTree& tree,
                                           std::span<const double> policy,
                                           Player i) {
  check_layout(tree, policy);
  CounterfactualValues out;
  out.player = i;
  out.action_values.assign(static_cast<std::size_t>(tree.flat_size()), 0.0);
  const auto n = static_cast<std::size_t>(tree.num_infosets());
  out.infoset_values.assign(n, 0.0);
  out.opponent_reach.assign(n, 0.0);
  out.own_reach.assign(n, 0.0);
  CfvWalker(tree, policy, i, out).walk(tree.root(), 1.0, 1.0);
  return out;
}

double expected_value(const GameTree& tree, std::span<const double> policy,
                      Player i) {
  check_layout(tree, policy);
  CounterfactualValues scratch;
  scratch.action_values.assign(static_cast<std::size_t>(tree.flat_size()), 0.0);
  const auto n = static_cast<std::size_t>(tree.num_infosets());
  scratch.infoset_values.assign(n, 0.0);
  scratch.opponent_reach.assign(n, 0.0);
  scratch.own_reach.assign(n, 0.0);
  return CfvWalker(tree, policy, i, scratch).walk(tree.root(), 1.0, 1.0);
}

double best_response_value(const GameTree& tree,
                           std::span<const double> policy, Player i) {
  check_layout(tree, policy);
  return BestResponder(tree, policy, i).value(tree.root());
}

std::vector<double> best_response(const GameTree& tree,
                                  std::span<const double> policy, Player i) {
  check_layout(tree, policy);
  BestResponder responder(tree, policy, i);
  std::vector<double> out(policy.begin(), policy.end());
  for (int s = 0; s < tree.num_infosets(); ++s) {
    const TreeInfoSet& set = tree.infoset(s);
    if (set.id.owner != i) continue;
    const int best = responder.choose(s);
    for (int a = 0; a < set.num_actions(); ++a) {
      out[static_cast<std::size_t>(set.offset + a)] = a == best ? 1.0 : 0.0;
    }
  }
  return out;
}

double exploitability(const GameTree& tree, std::span<const double> policy) {
  return 0.5 * (best_response_value(tree, policy, 0) +
                best_response_value(tree, policy, 1));
}

double exploitability(const GameTree& tree, const TabularPolicy& policy) {
  const auto flat = to_flat(tree, policy);
  return exploitability(tree, flat);
}

TabularPolicy extract_policy(const GameTree& tree, const PolicySource& source) {
  TabularPolicy policy;
  for (const auto& set : tree.infosets()) {
    auto probs = source(set.id, set.num_actions());
    if (static_cast<int>(probs.size()) != set.num_actions()) {
      throw GameError("policy source returned wrong length for " + set.id.key);
    }
    double total = 0.0;
    for (double& p : probs) {
      if (std::isnan(p)) throw GameError("policy source returned NaN for " +
                                         set.id.key);
      if (p < 0.0) p = 0.0;
      total += p;
    }
    if (total > 0.0) {
      for (double& p : probs) p /= total;
    } else {
      probs.assign(probs.size(), 1.0 / set.num_actions());
    }
    policy.set(set.id.key, std::move(probs));
  }
  return policy;
}

}  // namespace regret_forge
