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

#ifndef REGRET_FORGE_BUFFERS_HPP_
#define REGRET_FORGE_BUFFERS_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "regret_forge/game.hpp"

namespace regret_forge {

class BufferError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampled advantages of the traverser at one infoset.
struct AdvantageSample {
  InfoSetId infoset;
  FeatureVector features;
  std::vector<double> advantages;  // one entry per legal action

  int action_count() const { return static_cast<int>(advantages.size()); }
};

// Opponent's current strategy at an infoset visited during iteration t.
struct StrategySample {
  InfoSetId infoset;
  FeatureVector features;
  int iteration = 1;
  std::vector<double> strategy;
};

// One step between consecutive decision nodes of an episode. Chance steps
// in between are folded in. Utilities are normalized, for player 0.
struct TransitionSample {
  int iteration = 1;
  FeatureVector history;
  int action = 0;       // index into the legal actions at `history`
  int num_actions = 0;  // legal actions at `history`
  double utility = 0.0; // u_0 of the successor if terminal, else 0
  bool terminal = false;
  FeatureVector next_history;  // empty when terminal
  InfoSetId next_infoset;      // owner kTerminalPlayer when terminal
  FeatureVector next_infoset_features;
  Player next_player = kTerminalPlayer;
  int next_num_actions = 0;
};

// Throws BufferError when a sample violates its record invariants.
void validate(const AdvantageSample& s);
void validate(const StrategySample& s);
void validate(const TransitionSample& s);

using Rng = std::mt19937_64;

// Items of one iteration. Inserting past capacity is an error.
template <class T>
class PerIterationBuffer {
 public:
  explicit PerIterationBuffer(std::size_t capacity) : capacity_(capacity) {}

  void insert(T item) {
    if (items_.size() >= capacity_) {
      throw BufferError("per-iteration buffer capacity " +
                        std::to_string(capacity_) + " exceeded");
    }
    items_.push_back(std::move(item));
  }
  void clear() { items_.clear(); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t capacity() const { return capacity_; }
  const T& operator[](std::size_t k) const { return items_[k]; }
  const std::vector<T>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::vector<T> items_;
};

// Uniform sample of everything ever inserted.
template <class T>
class ReservoirBuffer {
 public:
  explicit ReservoirBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw BufferError("reservoir capacity must be positive");
  }

  void insert(T item, Rng& rng) {
    if (items_.size() < capacity_) {
      ++seen_;
      items_.push_back(std::move(item));
      return;
    }
    std::uniform_int_distribution<std::uint64_t> draw(0, seen_);
    insert_at_draw(std::move(item), draw(rng));
  }

  // Reservoir step with an explicit draw in [0, seen) where seen counts
  // this item; the item replaces slot `draw` when draw < capacity.
  void insert_at_draw(T item, std::uint64_t draw) {
    ++seen_;
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
      return;
    }
    if (draw >= seen_) throw BufferError("reservoir draw out of range");
    if (draw < capacity_) items_[draw] = std::move(item);
  }

  void clear() {
    items_.clear();
    seen_ = 0;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t seen() const { return seen_; }
  const T& operator[](std::size_t k) const { return items_[k]; }
  const std::vector<T>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::uint64_t seen_ = 0;
  std::vector<T> items_;
};

// Most recent items; the oldest is overwritten when full.
template <class T>
class CircularBuffer {
 public:
  explicit CircularBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw BufferError("circular capacity must be positive");
  }

  void insert(T item) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
    } else {
      items_[head_] = std::move(item);
      head_ = (head_ + 1) % capacity_;
    }
    ++seen_;
  }

  void clear() {
    items_.clear();
    head_ = 0;
    seen_ = 0;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t seen() const { return seen_; }
  // k-th oldest retained item.
  const T& operator[](std::size_t k) const {
    return items_[(head_ + k) % items_.size()];
  }
  std::vector<T> ordered() const {
    std::vector<T> out;
    out.reserve(items_.size());
    for (std::size_t k = 0; k < items_.size(); ++k) out.push_back((*this)[k]);
    return out;
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::uint64_t seen_ = 0;
  std::vector<T> items_;
};

// n positions drawn uniformly with replacement from [0, size).
std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n,
                                        Rng& rng);

template <class Buffer>
auto sample_batch(const Buffer& buffer, std::size_t n, Rng& rng) {
  std::vector<std::decay_t<decltype(buffer[0])>> out;
  out.reserve(n);
  for (std::size_t k : sample_indices(buffer.size(), n, rng)) {
    out.push_back(buffer[k]);
  }
  return out;
}

}  // namespace regret_forge

#endif  // REGRET_FORGE_BUFFERS_HPP_
