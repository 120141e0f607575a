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

#ifndef REGRET_FORGE_POLICY_HPP_
#define REGRET_FORGE_POLICY_HPP_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "regret_forge/game_tree.hpp"

namespace regret_forge {

// Behavior strategy for both players keyed by infoset key. Each vector is a
// distribution over the legal actions of the infoset in legal-action order.
// Infosets missing from the map are played uniformly.
class TabularPolicy {
 public:
  using Map = std::map<std::string, std::vector<double>>;

  // Throws GameError unless probs is nonnegative and sums to 1 within 1e-9.
  void set(const std::string& key, std::vector<double> probs);
  const std::vector<double>* find(const std::string& key) const;
  std::vector<double> get(const std::string& key, int num_actions) const;

  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }
  const Map& table() const { return table_; }

  // Line format: key<TAB>p0 p1 ... with 17 significant digits.
  void write(std::ostream& out) const;
  static TabularPolicy read(std::istream& in);
  void save(const std::string& path) const;
  static TabularPolicy load(const std::string& path);

  bool operator==(const TabularPolicy&) const = default;

 private:
  Map table_;
};

// Conversions between keyed policies and the flat layout of a GameTree.
std::vector<double> to_flat(const GameTree& tree, const TabularPolicy& policy);
TabularPolicy from_flat(const GameTree& tree, std::span<const double> flat);

}  // namespace regret_forge

#endif  // REGRET_FORGE_POLICY_HPP_
