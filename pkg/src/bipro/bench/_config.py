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

"""Configuration of synthetic corpora."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator


class WeightDistribution(str, Enum):
  """Distribution of per-category author counts, always integers >= 1."""

  UNIFORM = "uniform"
  GEOMETRIC = "geometric"


class CategorySkew(str, Enum):
  """How popular each category is."""

  UNIFORM = "uniform"
  ZIPF = "zipf"


class CorpusSpec(BaseModel):
  """Shape of a synthetic two-mode corpus.

  Attributes:
      works: Number of works generated.
      categories: Number of categories, labelled c1..cN.
      min_categories: Fewest categories per work.
      max_categories: Most categories per work; counts are uniform between
          the two bounds.
      max_weight: Largest author count of one category in one work.
      weight_distribution: UNIFORM draws 1..max_weight evenly; GEOMETRIC
          draws from Geometric(1/2) truncated at max_weight.
      skew: Category popularity. ZIPF makes category k about k^-s times as
          popular as the first.
      zipf_exponent: The exponent s.
      seed: Seed of the generator; equal specs give equal corpora.

  Example:
      ```python
      from bipro.bench import CorpusSpec

      spec = CorpusSpec(works=10_000, categories=20, seed=7)
      spec = CorpusSpec.model_validate_json(path.read_text())
      ```
  """

  model_config = ConfigDict(extra="forbid")

  works: int = Field(default=1000, ge=0)
  categories: int = Field(default=20, ge=1)
  min_categories: int = Field(default=2, ge=1)
  max_categories: int = Field(default=5, ge=1)
  max_weight: int = Field(default=5, ge=1)
  weight_distribution: WeightDistribution = Field(
      default=WeightDistribution.UNIFORM
  )
  skew: CategorySkew = Field(default=CategorySkew.ZIPF)
  zipf_exponent: float = Field(default=1.0, gt=0.0)
  seed: int = Field(default=0, ge=0)

  @model_validator(mode="after")
  def _check_bounds(self) -> CorpusSpec:
    if self.min_categories > self.max_categories:
      raise ValueError(
          f"min_categories ({self.min_categories}) exceeds max_categories"
          f" ({self.max_categories})"
      )
    if self.max_categories > self.categories:
      raise ValueError(
          f"max_categories ({self.max_categories}) exceeds categories"
          f" ({self.categories})"
      )
    return self
