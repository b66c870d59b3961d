# Copyright 2025 The bipro Authors
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

"""Projections of two-mode networks onto their categories."""

from bipro.projection._accumulator import ProjectionAccumulator
from bipro.projection._config import ProjectionConfig
from bipro.projection._config import StrictPolicy
from bipro.projection._types import BUNDLE_KINDS
from bipro.projection._types import NormalizerKind
from bipro.projection._types import ProjectionBundle
from bipro.projection._types import ProjectionKind
from bipro.projection._types import ProjectionMatrix
from bipro.projection._types import UndirectedEdge
from bipro.projection._types import UndirectedEdgeList
from bipro.projection.invariants import CheckResult
from bipro.projection.invariants import CheckStatus
from bipro.projection.invariants import run_invariant_checks
from bipro.projection.invariants import ValidationReport
from bipro.projection.operators import from_undirected
from bipro.projection.operators import project_binary_fractional_strict
from bipro.projection.operators import project_counting
from bipro.projection.operators import project_raw
from bipro.projection.operators import project_standard_fractional
from bipro.projection.operators import project_strict_fractional
from bipro.projection.operators import project_works_counting
from bipro.projection.operators import to_undirected_halved
from bipro.projection.streaming import merge_bundles
from bipro.projection.streaming import project_all_streaming
from bipro.projection.streaming import project_sharded

__all__ = [
    # Config
    "ProjectionConfig",
    "StrictPolicy",
    # Types
    "BUNDLE_KINDS",
    "NormalizerKind",
    "ProjectionBundle",
    "ProjectionKind",
    "ProjectionMatrix",
    "UndirectedEdge",
    "UndirectedEdgeList",
    # Streaming
    "ProjectionAccumulator",
    "merge_bundles",
    "project_all_streaming",
    "project_sharded",
    # Batch operators
    "from_undirected",
    "project_binary_fractional_strict",
    "project_counting",
    "project_raw",
    "project_standard_fractional",
    "project_strict_fractional",
    "project_works_counting",
    "to_undirected_halved",
    # Invariants
    "CheckResult",
    "CheckStatus",
    "ValidationReport",
    "run_invariant_checks",
]
