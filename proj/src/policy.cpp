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

#include "regret_forge/policy.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace regret_forge {

void TabularPolicy::set(const std::string& key, std::vector<double> probs) {
  if (probs.empty()) throw GameError("empty distribution for " + key);
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw GameError("negative or NaN probability for " + key);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw GameError("probabilities for " + key + " do not sum to 1");
  }
  table_[key] = std::move(probs);
}

const std::vector<double>* TabularPolicy::find(const std::string& key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<double> TabularPolicy::get(const std::string& key,
                                       int num_actions) const {
  if (const auto* probs = find(key)) {
    if (static_cast<int>(probs->size()) != num_actions) {
      throw GameError("policy row for " + key + " has wrong length");
    }
    return *probs;
  }
  return std::vector<double>(static_cast<std::size_t>(num_actions),
                             1.0 / num_actions);
}

void TabularPolicy::write(std::ostream& out) const {
  out << std::setprecision(17);
  for (const auto& [key, probs] : table_) {
    out << key << '\t';
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (a > 0) out << ' ';
      out << probs[a];
    }
    out << '\n';
  }
}

TabularPolicy TabularPolicy::read(std::istream& in) {
  TabularPolicy policy;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw GameError("policy line " + std::to_string(line_no) +
                      " has no tab separator");
    }
    std::istringstream values(line.substr(tab + 1));
    std::vector<double> probs;
    double p = 0.0;
    while (values >> p) probs.push_back(p);
    if (!values.eof()) {
      throw GameError("policy line " + std::to_string(line_no) +
                      " has a malformed number");
    }
    // Renormalize away text rounding before validation.
    double total = 0.0;
    for (double q : probs) total += q;
    if (std::abs(total - 1.0) > 1e-9 && std::abs(total - 1.0) < 1e-6) {
      for (double& q : probs) q /= total;
    }
    policy.set(line.substr(0, tab), std::move(probs));
  }
  return policy;
}

void TabularPolicy::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw GameError("cannot write policy file " + path);
  write(out);
  if (!out) throw GameError("failed writing policy file " + path);
}

TabularPolicy TabularPolicy::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot read policy file " + path);
  return read(in);
}

std::vector<double> to_flat(const GameTree& tree, const TabularPolicy& policy) {
  std::vector<double> flat(static_cast<std::size_t>(tree.flat_size()));
  for (const auto& set : tree.infosets()) {
    const auto probs = policy.get(set.id.key, set.num_actions());
    std::copy(probs.begin(), probs.end(),
              flat.begin() + set.offset);
  }
  return flat;
}

TabularPolicy from_flat(const GameTree& tree, std::span<const double> flat) {
  if (static_cast<int>(flat.size()) != tree.flat_size()) {
    throw GameError("flat policy has wrong length");
  }
  TabularPolicy policy;
  for (const auto& set : tree.infosets()) {
    const auto row = flat.subspan(static_cast<std::size_t>(set.offset),
                                  static_cast<std::size_t>(set.num_actions()));
    policy.set(set.id.key, std::vector<double>(row.begin(), row.end()));
  }
  return policy;
}

}  // namespace regret_forge
