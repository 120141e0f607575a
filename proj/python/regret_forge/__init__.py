# Copyright 2026 The regret_forge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Tabular and neural CFR solvers for two-player zero-sum games."""

from ._core import (
    CSV_HEADER,
    BufferError,
    ConfigError,
    GameError,
    GameStats,
    RunConfig,
    discount_multiplier,
    exploitability,
    game_stats,
    head2head,
    infosets,
    load_policy,
    load_run_config,
    parse_run_config,
    regret_matching,
    run_deep,
    run_experiment,
    solve_tabular,
    win_rate,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "BufferError",
    "ConfigError",
    "GameError",
    "GameStats",
    "RunConfig",
    "discount_multiplier",
    "exploitability",
    "game_stats",
    "head2head",
    "infosets",
    "load_policy",
    "load_run_config",
    "parse_run_config",
    "regret_matching",
    "run_deep",
    "run_experiment",
    "solve_tabular",
    "win_rate",
]
