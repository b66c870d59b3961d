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

"""Deterministic synthetic work streams."""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from bipro.bench._config import CategorySkew
from bipro.bench._config import CorpusSpec
from bipro.bench._config import WeightDistribution
from bipro.network import WorkRecord

# Values drawn per block, bounding the generator's working memory.
_BLOCK_VALUES = 2_000_000


def corpus_categories(spec: CorpusSpec) -> list[str]:
  """Category labels of a corpus, in index order."""
  return [f"c{i}" for i in range(1, spec.categories + 1)]


def _log_popularity(spec: CorpusSpec) -> np.ndarray:
  if spec.skew is CategorySkew.UNIFORM:
    return np.zeros(spec.categories, dtype=np.float64)
  ranks = np.arange(1, spec.categories + 1, dtype=np.float64)
  return -spec.zipf_exponent * np.log(ranks)


def _weights(
    rng: np.random.Generator, spec: CorpusSpec, shape: tuple[int, int]
) -> np.ndarray:
  if spec.weight_distribution is WeightDistribution.UNIFORM:
    return rng.integers(1, spec.max_weight + 1, size=shape)
  return np.minimum(rng.geometric(0.5, size=shape), spec.max_weight)


def generate(spec: CorpusSpec) -> Iterator[WorkRecord]:
  """Yield the works of a synthetic corpus.

  Works are drawn in blocks. Each work picks its category count uniformly
  in [min_categories, max_categories] and then that many distinct
  categories, weighted by popularity, using Gumbel top-k sampling.

  Args:
      spec: The corpus shape and seed.

  Yields:
      Works w1..wN with categories in index order.
  """
  rng = np.random.default_rng(spec.seed)
  labels = corpus_categories(spec)
  log_popularity = _log_popularity(spec)
  block = max(1, _BLOCK_VALUES // spec.categories)
  produced = 0
  while produced < spec.works:
    n = min(block, spec.works - produced)
    counts = rng.integers(spec.min_categories, spec.max_categories + 1, size=n)
    keys = log_popularity + rng.gumbel(size=(n, spec.categories))
    ranked = np.argsort(-keys, axis=1, kind="stable")[:, : spec.max_categories]
    weights = _weights(rng, spec, (n, spec.max_categories))
    for i in range(n):
      k = int(counts[i])
      chosen = ranked[i, :k]
      order = np.argsort(chosen)
      yield WorkRecord(
          work_id=f"w{produced + i + 1}",
          weights={
              labels[int(chosen[j])]: float(weights[i, j]) for j in order
          },
      )
    produced += n
