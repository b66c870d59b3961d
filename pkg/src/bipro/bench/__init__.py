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

"""Synthetic corpora and the projection benchmark."""

from bipro.bench._config import CategorySkew
from bipro.bench._config import CorpusSpec
from bipro.bench._config import WeightDistribution
from bipro.bench.generator import corpus_categories
from bipro.bench.generator import generate
from bipro.bench.harness import BenchReport
from bipro.bench.harness import BenchTimings
from bipro.bench.harness import run_benchmark

__all__ = [
    # Config
    "CategorySkew",
    "CorpusSpec",
    "WeightDistribution",
    # Generation
    "corpus_categories",
    "generate",
    # Benchmark
    "BenchReport",
    "BenchTimings",
    "run_benchmark",
]
