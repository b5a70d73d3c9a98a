# Copyright 2026 The Longtail Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Popularity-aware top-k re-ranking and long-tail evaluation."""

from longtail._core import (
    METRICS_CSV_HEADER,
    ConfigError,
    Error,
    FactorModel,
    InteractionSet,
    ParseError,
    PopularityProfile,
    blend,
    cli,
    filter_core,
    item_weights,
    min_max_normalize,
    parse_interactions,
    parse_text,
    popularity_profile,
    run_experiment,
    split,
    top_k,
    train_bpr,
    train_rank_als,
)

__version__ = "0.1.0"

__all__ = [
    "METRICS_CSV_HEADER",
    "ConfigError",
    "Error",
    "FactorModel",
    "InteractionSet",
    "ParseError",
    "PopularityProfile",
    "blend",
    "cli",
    "filter_core",
    "item_weights",
    "min_max_normalize",
    "parse_interactions",
    "parse_text",
    "popularity_profile",
    "run_experiment",
    "split",
    "top_k",
    "train_bpr",
    "train_rank_als",
]
