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

#include "regret_forge/game_tree.hpp"

namespace regret_forge {

GameTree::GameTree(std::shared_ptr<const Game> game) : game_(std::move(game)) {
  if (!game_) throw GameError("GameTree needs a game");
  build(game_->root());
}

int GameTree::build(const History& h) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  TreeNode node;
  node.player = h.current_player();
  if (h.is_terminal()) {
    node.value = game_->normalize_utility(game_->utility(h, 0));
    nodes_[static_cast<std::size_t>(id)] = node;
    return id;
  }

  std::vector<Action> actions;
  std::vector<double> probs;
  if (h.is_chance()) {
    for (const auto& o : game_->chance_outcomes(h)) {
      actions.push_back(o.action);
      probs.push_back(o.probability);
    }
  } else {
    actions = game_->legal_actions(h);
    probs.assign(actions.size(), 0.0);
    InfoSetId info = game_->infoset_key(h, h.current_player());
    auto [it, inserted] = infoset_index_.try_emplace(
        info.key, static_cast<int>(infosets_.size()));
    if (inserted) {
      TreeInfoSet set;
      set.id = std::move(info);
      set.actions = actions;
      set.offset = flat_size_;
      flat_size_ += static_cast<int>(actions.size());
      infosets_.push_back(std::move(set));
    } else if (infosets_[static_cast<std::size_t>(it->second)].actions !=
               actions) {
      throw GameError("histories of infoset " + it->first +
                      " disagree on legal actions");
    }
    node.infoset = it->second;
    infosets_[static_cast<std::size_t>(it->second)].nodes.push_back(id);
  }

  node.first_edge = static_cast<int>(edge_child_.size());
  node.num_edges = static_cast<int>(actions.size());
  edge_child_.resize(edge_child_.size() + actions.size(), -1);
  edge_prob_.insert(edge_prob_.end(), probs.begin(), probs.end());
  edge_action_.insert(edge_action_.end(), actions.begin(), actions.end());
  nodes_[static_cast<std::size_t>(id)] = node;
  for (int k = 0; k < node.num_edges; ++k) {
    const int child = build(game_->apply_action(h, actions[static_cast<std::size_t>(k)]));
    edge_child_[static_cast<std::size_t>(node.first_edge + k)] = child;
  }
  return id;
}

int GameTree::find_infoset(const std::string& key) const {
  const auto it = infoset_index_.find(key);
  return it == infoset_index_.end() ? -1 : it->second;
}

std::vector<double> GameTree::uniform_flat() const {
  std::vector<double> flat(static_cast<std::size_t>(flat_size_));
  for (const auto& set : infosets_) {
    for (int a = 0; a < set.num_actions(); ++a) {
      flat[static_cast<std::size_t>(set.offset + a)] = 1.0 / set.num_actions();
    }
  }
  return flat;
}

}  // namespace regret_forge
