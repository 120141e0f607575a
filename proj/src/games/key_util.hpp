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

#ifndef REGRET_FORGE_SRC_GAMES_KEY_UTIL_HPP_
#define REGRET_FORGE_SRC_GAMES_KEY_UTIL_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regret_forge/game.hpp"

namespace regret_forge::detail {

// Splits an infoset key on ':' and checks the field count.
inline std::vector<std::string_view> split_key(const InfoSetId& info,
                                               std::size_t fields) {
  std::vector<std::string_view> parts;
  std::string_view rest = info.key;
  while (true) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() != fields || parts[0].size() != 1 ||
      (parts[0][0] != '0' && parts[0][0] != '1') ||
      parts[0][0] - '0' != info.owner) {
    throw GameError("malformed infoset key '" + info.key + "'");
  }
  return parts;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  if (text.empty()) return parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

inline void one_hot(std::span<float> out, int offset, int index) {
  out[static_cast<std::size_t>(offset + index)] = 1.0f;
}

inline void owner_bits(std::span<float> out, Player p) {
  out[out.size() - 2 + static_cast<std::size_t>(p)] = 1.0f;
}

}  // namespace regret_forge::detail

#endif  // REGRET_FORGE_SRC_GAMES_KEY_UTIL_HPP_
