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

#include "regret_forge/nn.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

namespace regret_forge {

namespace {

constexpr std::uint32_t kMagic = 0x504C4D52;  // "RMLP" little-endian
constexpr std::uint32_t kFormatVersion = 1;

std::vector<int> widths(const MlpSpec& spec) {
  std::vector<int> w;
  w.push_back(spec.input);
  w.insert(w.end(), spec.hidden.begin(), spec.hidden.end());
  w.push_back(spec.output);
  return w;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char bytes[4] = {
      static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
      static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw NnError("truncated network checkpoint");
  }
  return static_cast<std::uint32_t>(bytes[0]) |
         static_cast<std::uint32_t>(bytes[1]) << 8 |
         static_cast<std::uint32_t>(bytes[2]) << 16 |
         static_cast<std::uint32_t>(bytes[3]) << 24;
}

void put_f32(std::ostream& out, double v) {
  put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

double get_f32(std::istream& in) {
  return static_cast<double>(std::bit_cast<float>(get_u32(in)));
}

Gradients zeros_like(const Mlp& net) {
  Gradients g;
  for (int l = 0; l < net.num_layers(); ++l) {
    g.weights.push_back(Matrix::Zero(net.weight(l).rows(), net.weight(l).cols()));
    g.biases.push_back(Vector::Zero(net.bias(l).size()));
  }
  return g;
}

void check_batch(const Mlp& net, const Batch& batch) {
  const auto n = batch.inputs.rows();
  if (n == 0) throw NnError("empty batch");
  if (batch.inputs.cols() != net.spec().input) {
    throw NnError("batch input width does not match network");
  }
  if (batch.targets.rows() != n || batch.targets.cols() != net.spec().output ||
      batch.mask.rows() != n || batch.mask.cols() != net.spec().output) {
    throw NnError("batch target or mask shape mismatch");
  }
  if (batch.weights.size() != 0 && batch.weights.size() != n) {
    throw NnError("batch weight count mismatch");
  }
  if (!batch.targets.allFinite()) throw NnError("non-finite training target");
}

}  // namespace

Mlp::Mlp(MlpSpec spec, std::uint64_t seed) : spec_(std::move(spec)) {
  if (spec_.input < 1 || spec_.output < 1) {
    throw NnError("network needs positive input and output widths");
  }
  for (int h : spec_.hidden) {
    if (h < 1) throw NnError("hidden widths must be positive");
  }
  std::mt19937_64 rng(seed);
  const auto w = widths(spec_);
  for (std::size_t l = 0; l + 1 < w.size(); ++l) {
    Matrix weight = Matrix::Zero(w[l], w[l + 1]);
    if (l + 2 < w.size()) {
      const double limit = std::sqrt(6.0 / w[l]);
      std::uniform_real_distribution<double> u(-limit, limit);
      for (Eigen::Index k = 0; k < weight.size(); ++k) weight.data()[k] = u(rng);
    }
    weights_.push_back(std::move(weight));
    biases_.push_back(Vector::Zero(w[l + 1]));
  }
}

Matrix Mlp::forward(const Matrix& x) const {
  if (x.cols() != spec_.input) throw NnError("input width does not match network");
  Matrix a = x;
  for (int l = 0; l < num_layers(); ++l) {
    Matrix z = a * weight(l);
    z.rowwise() += bias(l).transpose();
    if (l + 1 < num_layers()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

std::vector<double> Mlp::forward(std::span<const float> x) const {
  if (static_cast<int>(x.size()) != spec_.input) {
    throw NnError("input width does not match network");
  }
  Matrix in(1, spec_.input);
  for (int k = 0; k < spec_.input; ++k) in(0, k) = x[static_cast<std::size_t>(k)];
  const Matrix out = forward(in);
  return std::vector<double>(out.data(), out.data() + out.size());
}

std::size_t Mlp::num_parameters() const {
  std::size_t n = 0;
  for (int l = 0; l < num_layers(); ++l) {
    n += static_cast<std::size_t>(weight(l).size() + bias(l).size());
  }
  return n;
}

std::vector<double> Mlp::parameters() const {
  std::vector<double> flat;
  flat.reserve(num_parameters());
  for (int l = 0; l < num_layers(); ++l) {
    flat.insert(flat.end(), weight(l).data(), weight(l).data() + weight(l).size());
    flat.insert(flat.end(), bias(l).data(), bias(l).data() + bias(l).size());
  }
  return flat;
}

void Mlp::set_parameters(std::span<const double> flat) {
  if (flat.size() != num_parameters()) throw NnError("parameter count mismatch");
  std::size_t k = 0;
  for (int l = 0; l < num_layers(); ++l) {
    for (Eigen::Index j = 0; j < weight(l).size(); ++j) weight(l).data()[j] = flat[k++];
    for (Eigen::Index j = 0; j < bias(l).size(); ++j) bias(l).data()[j] = flat[k++];
  }
}

void Mlp::save(std::ostream& out, std::uint32_t encoding_version) const {
  put_u32(out, kMagic);
  put_u32(out, kFormatVersion);
  put_u32(out, encoding_version);
  put_u32(out, static_cast<std::uint32_t>(spec_.input));
  put_u32(out, static_cast<std::uint32_t>(spec_.hidden.size()));
  for (int h : spec_.hidden) put_u32(out, static_cast<std::uint32_t>(h));
  put_u32(out, static_cast<std::uint32_t>(spec_.output));
  for (double p : parameters()) put_f32(out, p);
  if (!out) throw NnError("failed writing network checkpoint");
}

Mlp Mlp::load(std::istream& in, std::uint32_t encoding_version) {
  if (get_u32(in) != kMagic) throw NnError("not a network checkpoint");
  if (get_u32(in) != kFormatVersion) {
    throw NnError("unsupported checkpoint format version");
  }
  if (get_u32(in) != encoding_version) {
    throw NnError("checkpoint was written for another feature encoding");
  }
  MlpSpec spec;
  spec.input = static_cast<int>(get_u32(in));
  const std::uint32_t layers = get_u32(in);
  if (layers > 64) throw NnError("implausible hidden layer count");
  spec.hidden.resize(layers);
  for (int& h : spec.hidden) h = static_cast<int>(get_u32(in));
  spec.output = static_cast<int>(get_u32(in));
  Mlp net(spec, 0);
  std::vector<double> flat(net.num_parameters());
  for (double& p : flat) p = get_f32(in);
  net.set_parameters(flat);
  return net;
}

void Mlp::save(const std::string& path, std::uint32_t encoding_version) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NnError("cannot write " + path);
  save(out, encoding_version);
}

Mlp Mlp::load(const std::string& path, std::uint32_t encoding_version) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NnError("cannot read " + path);
  return load(in, encoding_version);
}

double loss(const Mlp& net, const Batch& batch) {
  check_batch(net, batch);
  const Matrix diff =
      (batch.targets - net.forward(batch.inputs)).cwiseProduct(batch.mask);
  Vector per_sample = diff.cwiseAbs2().rowwise().sum();
  if (batch.weights.size() != 0) per_sample = per_sample.cwiseProduct(batch.weights);
  return per_sample.mean();
}

double loss_and_gradients(const Mlp& net, const Batch& batch, Gradients& grads) {
  check_batch(net, batch);
  const int layers = net.num_layers();
  // Keep every activation for the backward pass.
  std::vector<Matrix> acts;
  acts.reserve(static_cast<std::size_t>(layers + 1));
  acts.push_back(batch.inputs);
  for (int l = 0; l < layers; ++l) {
    Matrix z = acts.back() * net.weight(l);
    z.rowwise() += net.bias(l).transpose();
    if (l + 1 < layers) z = z.cwiseMax(0.0);
    acts.push_back(std::move(z));
  }
  const auto n = static_cast<double>(batch.inputs.rows());
  Matrix diff = (acts.back() - batch.targets).cwiseProduct(batch.mask);
  Vector per_sample = diff.cwiseAbs2().rowwise().sum();
  Matrix delta = diff * (2.0 / n);
  if (batch.weights.size() != 0) {
    per_sample = per_sample.cwiseProduct(batch.weights);
    delta = batch.weights.asDiagonal() * delta;
  }
  if (grads.weights.size() != static_cast<std::size_t>(layers)) {
    grads = zeros_like(net);
  }
  for (int l = layers - 1; l >= 0; --l) {
    const auto k = static_cast<std::size_t>(l);
    grads.weights[k].noalias() = acts[k].transpose() * delta;
    grads.biases[k] = delta.colwise().sum().transpose();
    if (l > 0) {
      Matrix back = delta * net.weight(l).transpose();
      delta = back.cwiseProduct(
          (acts[k].array() > 0.0).cast<double>().matrix());
    }
  }
  return per_sample.mean();
}

Adam::Adam(const Mlp& net, AdamConfig config)
    : config_(config), m_(zeros_like(net)), v_(zeros_like(net)) {
  if (!(config_.learning_rate > 0.0)) throw NnError("learning rate must be positive");
}

void Adam::step(Mlp& net, const Gradients& grads) {
  if (grads.weights.size() != m_.weights.size()) throw NnError("gradient shape mismatch");
  ++steps_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  auto update = [&](auto& param, const auto& g, auto& m, auto& v) {
    if (g.rows() != param.rows() || g.cols() != param.cols()) {
      throw NnError("gradient shape mismatch");
    }
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseAbs2();
    param.array() -= config_.learning_rate * (m.array() / c1) /
                     ((v.array() / c2).sqrt() + config_.epsilon);
  };
  for (std::size_t l = 0; l < m_.weights.size(); ++l) {
    update(net.weight(static_cast<int>(l)), grads.weights[l], m_.weights[l],
           v_.weights[l]);
    update(net.bias(static_cast<int>(l)), grads.biases[l], m_.biases[l],
           v_.biases[l]);
  }
}

double train(Mlp& net, Adam& optimizer, int steps,
             const std::function<void(int, Batch&)>& fill) {
  Batch batch;
  Gradients grads;
  double last = 0.0;
  for (int s = 0; s < steps; ++s) {
    fill(s, batch);
    last = loss_and_gradients(net, batch, grads);
    if (!std::isfinite(last)) {
      throw NnError("non-finite loss at training step " + std::to_string(s));
    }
    optimizer.step(net, grads);
  }
  return last;
}

std::vector<double> make_target_bootstrap_cumulative(
    std::span<const double> prev_output, std::span<const double> advantages,
    int t, double alpha, DiscountKind discount, bool clipped) {
  if (t < 1) throw NnError("iteration must be at least 1");
  if (prev_output.size() < advantages.size()) {
    throw NnError("previous output shorter than advantage row");
  }
  double d = 1.0;
  switch (discount) {
    case DiscountKind::kDcfrPlus: {
      const double p = t == 1 ? 0.0 : std::pow(static_cast<double>(t - 1), alpha);
      d = p / (p + 1.0);
      break;
    }
    case DiscountKind::kNone:
      d = 1.0;
      break;
    case DiscountKind::kLinear:
      d = static_cast<double>(t - 1) / t;
      break;
  }
  std::vector<double> out(advantages.size());
  for (std::size_t a = 0; a < advantages.size(); ++a) {
    const double prev = clipped ? std::max(prev_output[a], 0.0) : prev_output[a];
    out[a] = prev * d + advantages[a];
  }
  return out;
}

double make_target_q(double utility, double successor_value, bool terminal) {
  if (terminal) return utility;
  if (utility != 0.0) throw NnError("non-terminal transition with nonzero utility");
  return successor_value;
}

double strategy_loss_weight(int t, int total, double gamma) {
  if (t < 1 || t > total) throw NnError("strategy weight needs 1 <= t <= T");
  return std::pow(static_cast<double>(t) / total, gamma);
}

std::string_view loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::kBootstrapCumulative:
      return "bootstrap_cumulative";
    case LossKind::kInstantaneous:
      return "instantaneous";
    case LossKind::kQTd:
      return "q_td";
    case LossKind::kWeightedStrategy:
      return "weighted_strategy";
  }
  return "?";
}

void resize_batch(Batch& batch, const LossSpec& spec, int rows, int input,
                  int output) {
  batch.inputs.setZero(rows, input);
  batch.targets.setZero(rows, output);
  batch.mask.setZero(rows, output);
  if (spec.kind == LossKind::kWeightedStrategy) {
    batch.weights.setOnes(rows);
  } else {
    batch.weights.resize(0);
  }
}

void set_row(Batch& batch, const LossSpec& spec, int row,
             std::span<const float> features, std::span<const double> target,
             int action, int iteration) {
  if (static_cast<Eigen::Index>(features.size()) != batch.inputs.cols()) {
    throw NnError("feature width does not match batch");
  }
  for (std::size_t k = 0; k < features.size(); ++k) {
    batch.inputs(row, static_cast<Eigen::Index>(k)) = features[k];
  }
  batch.targets.row(row).setZero();
  batch.mask.row(row).setZero();
  if (spec.kind == LossKind::kQTd) {
    if (target.size() != 1 || action < 0 || action >= batch.targets.cols()) {
      throw NnError("q_td row needs one target and a valid action");
    }
    batch.targets(row, action) = target[0];
    batch.mask(row, action) = 1.0;
    return;
  }
  if (static_cast<Eigen::Index>(target.size()) > batch.targets.cols()) {
    throw NnError("target row wider than network output");
  }
  for (std::size_t a = 0; a < target.size(); ++a) {
    batch.targets(row, static_cast<Eigen::Index>(a)) = target[a];
    batch.mask(row, static_cast<Eigen::Index>(a)) = 1.0;
  }
  if (spec.kind == LossKind::kWeightedStrategy) {
    batch.weights(row) =
        strategy_loss_weight(iteration, spec.total_iterations, spec.gamma);
  }
}

}  // namespace regret_forge
