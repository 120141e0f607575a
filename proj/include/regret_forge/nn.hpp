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

#ifndef REGRET_FORGE_NN_HPP_
#define REGRET_FORGE_NN_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace regret_forge {

class NnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct MlpSpec {
  int input = 0;
  std::vector<int> hidden = {64, 64, 64};
  int output = 1;

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

// Dense ReLU network with an identity output layer. Rows of a batch are
// samples.
class Mlp {
 public:
  Mlp() = default;
  // Hidden layers: He-uniform weights, zero biases. The output layer starts
  // at zero so every output is 0 before training.
  Mlp(MlpSpec spec, std::uint64_t seed);

  const MlpSpec& spec() const { return spec_; }
  int num_layers() const { return static_cast<int>(weights_.size()); }
  Matrix& weight(int l) { return weights_[static_cast<std::size_t>(l)]; }
  const Matrix& weight(int l) const { return weights_[static_cast<std::size_t>(l)]; }
  Vector& bias(int l) { return biases_[static_cast<std::size_t>(l)]; }
  const Vector& bias(int l) const { return biases_[static_cast<std::size_t>(l)]; }

  Matrix forward(const Matrix& x) const;
  std::vector<double> forward(std::span<const float> x) const;

  std::size_t num_parameters() const;
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);

  // Little-endian float32 checkpoint with magic, format version, feature
  // encoding version and architecture.
  void save(std::ostream& out, std::uint32_t encoding_version) const;
  static Mlp load(std::istream& in, std::uint32_t encoding_version);
  void save(const std::string& path, std::uint32_t encoding_version) const;
  static Mlp load(const std::string& path, std::uint32_t encoding_version);

 private:
  MlpSpec spec_;
  std::vector<Matrix> weights_;  // layer l maps width l to width l+1
  std::vector<Vector> biases_;
};

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

// One training batch for the masked, optionally weighted squared error
//   L = mean_b  w_b * sum_a mask_ba * (target_ba - f(x_b)_a)^2.
struct Batch {
  Matrix inputs;
  Matrix targets;
  Matrix mask;
  Vector weights;  // empty means all ones
};

// Exact reverse-mode gradient of the batch loss; returns the loss.
double loss_and_gradients(const Mlp& net, const Batch& batch, Gradients& grads);
double loss(const Mlp& net, const Batch& batch);

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam(const Mlp& net, AdamConfig config = {});
  void step(Mlp& net, const Gradients& grads);
  std::int64_t steps() const { return steps_; }
  const AdamConfig& config() const { return config_; }

 private:
  AdamConfig config_;
  std::int64_t steps_ = 0;
  Gradients m_;
  Gradients v_;
};

// Runs `steps` Adam updates; `fill` writes the batch for a step. Throws
// NnError on a non-finite loss. Returns the loss of the last step.
double train(Mlp& net, Adam& optimizer, int steps,
             const std::function<void(int step, Batch&)>& fill);

// Loss targets.

enum class DiscountKind { kDcfrPlus, kNone, kLinear };

// f(prev) * d + r, with f = max(., 0) when clipped. d is
// (t-1)^a / ((t-1)^a + 1) for kDcfrPlus, 1 for kNone and (t-1)/t for kLinear.
std::vector<double> make_target_bootstrap_cumulative(
    std::span<const double> prev_output, std::span<const double> advantages,
    int t, double alpha, DiscountKind discount, bool clipped);

double make_target_q(double utility, double successor_value, bool terminal);

// (t / T)^gamma.
double strategy_loss_weight(int t, int total, double gamma);

enum class LossKind { kBootstrapCumulative, kInstantaneous, kQTd, kWeightedStrategy };
std::string_view loss_name(LossKind kind);

// How samples of one loss become batch rows. Vector losses mask the legal
// prefix of the output; kQTd masks the single taken action; only
// kWeightedStrategy weights rows by (t / T)^gamma.
struct LossSpec {
  LossKind kind = LossKind::kInstantaneous;
  double alpha = 0.0;
  double gamma = 0.0;
  int total_iterations = 1;
  DiscountKind discount = DiscountKind::kDcfrPlus;
  bool clipped = true;
};

void resize_batch(Batch& batch, const LossSpec& spec, int rows, int input,
                  int output);
// `target` has one entry per legal action, or a single entry for kQTd.
void set_row(Batch& batch, const LossSpec& spec, int row,
             std::span<const float> features, std::span<const double> target,
             int action = 0, int iteration = 1);

}  // namespace regret_forge

#endif  // REGRET_FORGE_NN_HPP_
