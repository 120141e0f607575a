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

#ifndef REGRET_FORGE_GAME_TREE_HPP_
#define REGRET_FORGE_GAME_TREE_HPP_

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "regret_forge/game.hpp"

namespace regret_forge {

// Fully expanded game tree with dense infoset indexing, used by the exact
// solvers and evaluators. Per-infoset action vectors everywhere in the
// library are indexed by position in the legal action list, and a "flat"
// vector concatenates them in infoset order (see TreeInfoSet::offset).
struct TreeNode {
  Player player = kTerminalPlayer;
  int infoset = -1;        // decision nodes only
  int first_edge = 0;
  int num_edges = 0;
  double value = 0.0;      // terminals: normalized utility of player 0
};

struct TreeInfoSet {
  InfoSetId id;
  std::vector<Action> actions;
  int offset = 0;          // start of this infoset's entries in flat vectors
  std::vector<int> nodes;  // histories belonging to the infoset

  int num_actions() const { return static_cast<int>(actions.size()); }
};

class GameTree {
 public:
  explicit GameTree(std::shared_ptr<const Game> game);

  const Game& game() const { return *game_; }
  const std::shared_ptr<const Game>& game_ptr() const { return game_; }

  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& node(int n) const { return nodes_[static_cast<std::size_t>(n)]; }
  int root() const { return 0; }

  // Edge e of a node leads to edge_child(e); chance edges carry probability.
  int edge_child(int e) const { return edge_child_[static_cast<std::size_t>(e)]; }
  double edge_probability(int e) const { return edge_prob_[static_cast<std::size_t>(e)]; }
  Action edge_action(int e) const { return edge_action_[static_cast<std::size_t>(e)]; }

  std::span<const TreeInfoSet> infosets() const { return infosets_; }
  const TreeInfoSet& infoset(int i) const { return infosets_[static_cast<std::size_t>(i)]; }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  // -1 if the key does not occur in the game.
  int find_infoset(const std::string& key) const;
  // Total number of (infoset, action) pairs: the length of flat vectors.
  int flat_size() const { return flat_size_; }

  // Uniform strategy in flat layout.
  std::vector<double> uniform_flat() const;

 private:
  int build(const History& h);

  std::shared_ptr<const Game> game_;
  std::vector<TreeNode> nodes_;
  std::vector<int> edge_child_;
  std::vector<double> edge_prob_;
  std::vector<Action> edge_action_;
  std::vector<TreeInfoSet> infosets_;
  std::unordered_map<std::string, int> infoset_index_;
  int flat_size_ = 0;
};

}  // namespace regret_forge

#endif  // REGRET_FORGE_GAME_TREE_HPP_
