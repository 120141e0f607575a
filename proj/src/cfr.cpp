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

#include "regret_forge/cfr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "regret_forge/exploitability.hpp"

namespace regret_forge {

namespace {

struct VariantName {
  CfrVariant variant;
  std::string_view name;
  std::string_view alias;
};

constexpr VariantName kVariantNames[] = {
    {CfrVariant::kCfr, "cfr", "cfr"},
    {CfrVariant::kCfrPlus, "cfr+", "cfr_plus"},
    {CfrVariant::kLinearCfr, "linear", "linear_cfr"},
    {CfrVariant::kDcfr, "dcfr", "dcfr"},
    {CfrVariant::kDcfrPlus, "dcfr+", "dcfr_plus"},
    {CfrVariant::kPcfrPlus, "pcfr+", "pcfr_plus"},
    {CfrVariant::kPdcfrPlus, "pdcfr+", "pdcfr_plus"},
};

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_number(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  }
  return v;
}

void check_iteration(int t) {
  if (t < 1) throw std::invalid_argument("iteration must be at least 1");
}

}  // namespace

std::string_view variant_name(CfrVariant variant) {
  for (const auto& entry : kVariantNames) {
    if (entry.variant == variant) return entry.name;
  }
  return "?";
}

RegretUpdateRule RegretUpdateRule::defaults(CfrVariant variant) {
  RegretUpdateRule rule;
  rule.variant = variant;
  switch (variant) {
    case CfrVariant::kDcfr:
      rule.alpha = 1.5;
      rule.beta = 0.0;
      rule.gamma = 2.0;
      break;
    case CfrVariant::kDcfrPlus:
      rule.alpha = 2.0;
      rule.gamma = 2.0;
      break;
    case CfrVariant::kPcfrPlus:
      rule.gamma = 2.0;
      break;
    case CfrVariant::kPdcfrPlus:
      rule.alpha = 2.3;
      rule.gamma = 2.0;
      break;
    default:
      break;
  }
  return rule;
}

RegretUpdateRule RegretUpdateRule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const VariantName* found = nullptr;
  for (const auto& entry : kVariantNames) {
    if (name == entry.name || name == entry.alias) found = &entry;
  }
  if (found == nullptr) {
    throw std::invalid_argument("unknown CFR variant '" + std::string(name) +
                                "'");
  }
  RegretUpdateRule rule = defaults(found->variant);
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view()
                                             : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("expected key=value, got '" +
                                    std::string(item) + "'");
      }
      const std::string_view key = item.substr(0, eq);
      const double value = parse_number(item.substr(eq + 1));
      if (key == "alpha") {
        rule.alpha = value;
      } else if (key == "beta") {
        rule.beta = value;
      } else if (key == "gamma") {
        rule.gamma = value;
      } else {
        throw std::invalid_argument("unknown CFR parameter '" +
                                    std::string(key) + "'");
      }
    }
  }
  rule.validate();
  return rule;
}

std::string RegretUpdateRule::to_string() const {
  std::string out(variant_name(variant));
  switch (variant) {
    case CfrVariant::kDcfr:
      out += ":alpha=" + format_number(alpha) + ",beta=" + format_number(beta) +
             ",gamma=" + format_number(gamma);
      break;
    case CfrVariant::kDcfrPlus:
    case CfrVariant::kPdcfrPlus:
      out += ":alpha=" + format_number(alpha) + ",gamma=" + format_number(gamma);
      break;
    case CfrVariant::kPcfrPlus:
      out += ":gamma=" + format_number(gamma);
      break;
    default:
      break;
  }
  return out;
}

bool RegretUpdateRule::clipped() const {
  return variant == CfrVariant::kCfrPlus || variant == CfrVariant::kDcfrPlus ||
         variant == CfrVariant::kPcfrPlus || variant == CfrVariant::kPdcfrPlus;
}

bool RegretUpdateRule::predictive() const {
  return variant == CfrVariant::kPcfrPlus || variant == CfrVariant::kPdcfrPlus;
}

void RegretUpdateRule::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw std::invalid_argument("CFR exponents must be finite");
  }
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) {
    throw std::invalid_argument("CFR exponents must be nonnegative");
  }
  if (clipped() && !alternating) {
    throw std::invalid_argument(std::string(variant_name(variant)) +
                                " requires alternating updates");
  }
}

double discount_multiplier(int t, double exponent) {
  check_iteration(t);
  if (std::isinf(exponent) && exponent > 0) return 1.0;
  if (t == 1) return 0.0;
  const double p = std::pow(static_cast<double>(t - 1), exponent);
  return p / (p + 1.0);
}

std::vector<double> regret_matching(std::span<const double> regrets) {
  if (regrets.empty()) throw std::invalid_argument("empty regret vector");
  std::vector<double> out(regrets.size());
  double total = 0.0;
  for (std::size_t a = 0; a < regrets.size(); ++a) {
    out[a] = std::max(regrets[a], 0.0);
    total += out[a];
  }
  if (total > 0.0) {
    for (double& p : out) p /= total;
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
  }
  return out;
}

std::vector<double> regret_matching_argmax(std::span<const double> regrets) {
  if (regrets.empty()) throw std::invalid_argument("empty regret vector");
  const bool any_positive =
      std::any_of(regrets.begin(), regrets.end(), [](double r) { return r > 0; });
  if (any_positive) return regret_matching(regrets);
  std::vector<double> out(regrets.size(), 0.0);
  out[static_cast<std::size_t>(
      std::max_element(regrets.begin(), regrets.end()) - regrets.begin())] = 1.0;
  return out;
}

double update_cumulative_regret(const RegretUpdateRule& rule, double r_prev,
                                 double r_t, int t) {
  check_iteration(t);
  switch (rule.variant) {
    case CfrVariant::kCfr:
      return r_prev + r_t;
    case CfrVariant::kCfrPlus:
    case CfrVariant::kPcfrPlus:
      return std::max(r_prev + r_t, 0.0);
    case CfrVariant::kLinearCfr:
      return r_prev + t * r_t;
    case CfrVariant::kDcfr: {
      const double e = r_prev > 0.0 ? rule.alpha : rule.beta;
      return r_prev * discount_multiplier(t, e) + r_t;
    }
    case CfrVariant::kDcfrPlus:
    case CfrVariant::kPdcfrPlus:
      return std::max(r_prev * discount_multiplier(t, rule.alpha) + r_t, 0.0);
  }
  throw std::invalid_argument("unknown CFR variant");
}

double predicted_cumulative_regret(const RegretUpdateRule& rule, double r_t,
                                   double r_pred, int t) {
  check_iteration(t);
  switch (rule.variant) {
    case CfrVariant::kPcfrPlus:
      return std::max(r_t + r_pred, 0.0);
    case CfrVariant::kPdcfrPlus:
      // t^a / (t^a + 1) is the multiplier of the next update.
      return std::max(r_t * discount_multiplier(t + 1, rule.alpha) + r_pred,
                      0.0);
    default:
      throw std::invalid_argument(std::string(variant_name(rule.variant)) +
                                  " does not predict regrets");
  }
}

double update_cumulative_strategy(const RegretUpdateRule& rule, double c_prev,
                                  double weight, int t) {
  check_iteration(t);
  if (!(weight >= 0.0)) {
    throw std::invalid_argument("strategy weight must be nonnegative");
  }
  switch (rule.variant) {
    case CfrVariant::kCfr:
      return c_prev + weight;
    case CfrVariant::kCfrPlus:
    case CfrVariant::kLinearCfr:
      return c_prev + t * weight;
    default:
      break;
  }
  const double ratio = static_cast<double>(t - 1) / t;
  return c_prev * std::pow(ratio, rule.gamma) + weight;
}

std::vector<double> average_strategy(const GameTree& tree,
                                     std::span<const double> cumulative) {
  if (static_cast<int>(cumulative.size()) != tree.flat_size()) {
    throw GameError("cumulative strategy has wrong length");
  }
  std::vector<double> out(cumulative.begin(), cumulative.end());
  for (const auto& set : tree.infosets()) {
    const auto begin = out.begin() + set.offset;
    const auto end = begin + set.num_actions();
    double total = 0.0;
    for (auto it = begin; it != end; ++it) total += *it;
    for (auto it = begin; it != end; ++it) {
      *it = total > 0.0 ? *it / total : 1.0 / set.num_actions();
    }
  }
  return out;
}

CfrSolver::CfrSolver(std::shared_ptr<const GameTree> tree,
                     RegretUpdateRule rule, Prediction prediction)
    : tree_(std::move(tree)), rule_(rule), prediction_(prediction) {
  if (!tree_) throw std::invalid_argument("CfrSolver needs a tree");
  rule_.validate();
  const auto n = static_cast<std::size_t>(tree_->flat_size());
  strategy_ = tree_->uniform_flat();
  regret_.assign(n, 0.0);
  cumulative_.assign(n, 0.0);
  last_.assign(n, 0.0);
}

void CfrSolver::iterate() {
  ++t_;
  consistency_error_ = 0.0;
  if (rule_.alternating) {
    update_player(0, strategy_);
    update_player(1, strategy_);
  } else {
    const std::vector<double> profile = strategy_;
    update_player(0, profile);
    update_player(1, profile);
  }
}

void CfrSolver::update_player(Player i, std::span<const double> profile) {
  const CounterfactualValues cfv = counterfactual_values(*tree_, profile, i);
  for (int s = 0; s < tree_->num_infosets(); ++s) {
    const TreeInfoSet& set = tree_->infoset(s);
    if (set.id.owner != i) continue;
    const double v = cfv.infoset_values[static_cast<std::size_t>(s)];
    const double own = cfv.own_reach[static_cast<std::size_t>(s)];
    double mixed = 0.0;
    for (int a = 0; a < set.num_actions(); ++a) {
      const auto k = static_cast<std::size_t>(set.offset + a);
      const double r = cfv.action_values[k] - v;
      mixed += profile[k] * cfv.action_values[k];
      regret_[k] = update_cumulative_regret(rule_, regret_[k], r, t_);
      cumulative_[k] =
          update_cumulative_strategy(rule_, cumulative_[k], own * profile[k], t_);
      last_[k] = r;
    }
    consistency_error_ = std::max(consistency_error_, std::abs(mixed - v));
  }
  for (int s = 0; s < tree_->num_infosets(); ++s) {
    const TreeInfoSet& set = tree_->infoset(s);
    if (set.id.owner == i) refresh_strategy(set);
  }
}

void CfrSolver::refresh_strategy(const TreeInfoSet& set) {
  const auto begin = static_cast<std::size_t>(set.offset);
  const auto n = static_cast<std::size_t>(set.num_actions());
  std::vector<double> target(regret_.begin() + static_cast<long>(begin),
                             regret_.begin() + static_cast<long>(begin + n));
  if (rule_.predictive()) {
    for (std::size_t a = 0; a < n; ++a) {
      const double pred =
          prediction_ == Prediction::kZero ? 0.0 : last_[begin + a];
      target[a] = predicted_cumulative_regret(rule_, target[a], pred, t_);
    }
  }
  const auto sigma = regret_matching(target);
  std::copy(sigma.begin(), sigma.end(),
            strategy_.begin() + static_cast<long>(begin));
}

std::vector<double> CfrSolver::average_flat() const {
  return average_strategy(*tree_, cumulative_);
}

TabularPolicy CfrSolver::average_policy() const {
  return from_flat(*tree_, average_flat());
}

TabularPolicy CfrSolver::current_policy() const {
  return from_flat(*tree_, strategy_);
}

CfrRun run_cfr(std::shared_ptr<const GameTree> tree,
               const RegretUpdateRule& rule, int iterations,
               const std::function<bool(int)>& log_at) {
  if (iterations < 1) throw std::invalid_argument("need at least 1 iteration");
  CfrSolver solver(tree, rule);
  CfrRun run;
  for (int t = 1; t <= iterations; ++t) {
    solver.iterate();
    if (!log_at || log_at(t)) {
      run.log.push_back({t, exploitability(*tree, solver.average_flat())});
    }
  }
  run.average = solver.average_policy();
  return run;
}

}  // namespace regret_forge
