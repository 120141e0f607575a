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

#include "regret_forge/buffers.hpp"

#include <cmath>

namespace regret_forge {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void validate(const AdvantageSample& s) {
  if (s.advantages.empty()) throw BufferError("advantage sample without actions");
  if (!all_finite(s.advantages)) {
    throw BufferError("non-finite advantage at " + s.infoset.key);
  }
}

void validate(const StrategySample& s) {
  if (s.iteration < 1) throw BufferError("strategy sample iteration < 1");
  double total = 0.0;
  for (double p : s.strategy) {
    if (!(p >= 0.0)) throw BufferError("invalid probability at " + s.infoset.key);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw BufferError("strategy sample does not sum to 1 at " + s.infoset.key);
  }
}

void validate(const TransitionSample& s) {
  if (s.action < 0 || s.action >= s.num_actions) {
    throw BufferError("transition action out of range");
  }
  if (!std::isfinite(s.utility)) throw BufferError("non-finite transition utility");
  if (s.terminal) {
    if (s.next_player != kTerminalPlayer || !s.next_history.empty()) {
      throw BufferError("terminal transition carries a successor");
    }
  } else {
    if (s.utility != 0.0) {
      throw BufferError("non-terminal transition with nonzero utility");
    }
    if (s.next_player < 0 || s.next_num_actions < 1) {
      throw BufferError("non-terminal transition without successor infoset");
    }
  }
}

std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n,
                                        Rng& rng) {
  if (size == 0) throw BufferError("cannot sample from an empty buffer");
  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  std::vector<std::size_t> out(n);
  for (auto& k : out) k = pick(rng);
  return out;
}

}  // namespace regret_forge
