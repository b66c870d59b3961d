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

"""Two-mode network data structures.

A two-mode network links works (first mode) to categories (second mode,
e.g. countries) with positive weights wc[w,c], the number of authors of
work w from category c. All types are immutable after construction and
may be shared between threads.
"""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Mapping
from collections.abc import Sequence
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
import math

import numpy as np
from scipy import sparse

from bipro._errors import AffiliationError
from bipro._errors import NetworkError
from bipro._errors import UnknownCategoryError

ROW_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CategoryId:
  """A second-mode vertex: dense index plus unique label."""

  index: int
  label: str

  def __post_init__(self) -> None:
    if self.index < 0:
      raise NetworkError(f"category index must be >= 0, got {self.index}")
    if not self.label:
      raise NetworkError("category label must be non-empty")


@dataclass(frozen=True)
class WorkRecord:
  """One work's sparse weight vector over categories.

  Weights are keyed by category label. Zero entries are never stored, so
  bin(.) and deg(.) depend only on the key set.

  Attributes:
      work_id: Unique identifier of the work.
      weights: Category label -> strictly positive, finite weight.
  """

  work_id: str
  weights: Mapping[str, float] = field(default_factory=dict)

  def __post_init__(self) -> None:
    if not self.work_id:
      raise NetworkError("work_id must be non-empty")
    clean: dict[str, float] = {}
    for label, value in self.weights.items():
      weight = float(value)
      if not label:
        raise NetworkError(
            f"work {self.work_id!r} has an empty category label"
        )
      if not math.isfinite(weight) or weight <= 0.0:
        raise NetworkError(
            f"work {self.work_id!r} has non-positive or non-finite weight"
            f" {value!r} for category {label!r}"
        )
      clean[label] = weight
    object.__setattr__(self, "weights", clean)

  @property
  def deg(self) -> int:
    """Number of categories with positive weight, deg(w)."""
    return len(self.weights)

  @property
  def wdeg(self) -> float:
    """Sum of the weights, wdeg(w)."""
    return math.fsum(self.weights.values())

  @property
  def sum_of_squares(self) -> float:
    """Sum of squared weights."""
    return math.fsum(v * v for v in self.weights.values())

  @property
  def is_binary(self) -> bool:
    return all(v == 1.0 for v in self.weights.values())


@dataclass(frozen=True)
class TwoModeNetwork:
  """Sparse weighted bipartite network, works x categories.

  Category order is fixed at construction and defines the row and column
  order of every matrix derived from the network.
  """

  categories: tuple[CategoryId, ...]
  works: tuple[WorkRecord, ...] = ()

  def __post_init__(self) -> None:
    object.__setattr__(self, "categories", tuple(self.categories))
    object.__setattr__(self, "works", tuple(self.works))
    seen_labels: set[str] = set()
    for position, category in enumerate(self.categories):
      if category.index != position:
        raise NetworkError(
            f"category {category.label!r} has index {category.index},"
            f" expected {position}"
        )
      if category.label in seen_labels:
        raise NetworkError(f"duplicate category label {category.label!r}")
      seen_labels.add(category.label)
    seen_works: set[str] = set()
    for work in self.works:
      if work.work_id in seen_works:
        raise NetworkError(f"duplicate work_id {work.work_id!r}")
      seen_works.add(work.work_id)
      for label in work.weights:
        if label not in seen_labels:
          raise UnknownCategoryError(work.work_id, label)

  @classmethod
  def from_labels(
      cls, labels: Iterable[str], works: Iterable[WorkRecord] = ()
  ) -> TwoModeNetwork:
    """Build a network from category labels in their declared order."""
    categories = tuple(
        CategoryId(index=i, label=label) for i, label in enumerate(labels)
    )
    return cls(categories=categories, works=tuple(works))

  @property
  def labels(self) -> list[str]:
    return [c.label for c in self.categories]

  @cached_property
  def label_index(self) -> dict[str, int]:
    """Category label -> dense index."""
    return {c.label: c.index for c in self.categories}

  @cached_property
  def is_binary(self) -> bool:
    """True iff every stored weight equals 1."""
    return all(work.is_binary for work in self.works)

  @property
  def work_ids(self) -> list[str]:
    return [w.work_id for w in self.works]

  @cached_property
  def work_index(self) -> dict[str, int]:
    """work_id -> position in works."""
    return {w.work_id: i for i, w in enumerate(self.works)}

  def work(self, work_id: str) -> WorkRecord:
    """Look up a work by id.

    Raises:
        KeyError: If no work has this id.
    """
    return self.works[self.work_index[work_id]]

  def incidence(self) -> sparse.csr_matrix:
    """The works x categories weight matrix WC as CSR."""
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    index = self.label_index
    for row, work in enumerate(self.works):
      for label, weight in work.weights.items():
        rows.append(row)
        cols.append(index[label])
        data.append(weight)
    return sparse.csr_matrix(
        (
            np.asarray(data, dtype=np.float64),
            (
                np.asarray(rows, dtype=np.int64),
                np.asarray(cols, dtype=np.int64),
            ),
        ),
        shape=(len(self.works), len(self.categories)),
    )

  def to_dense(self) -> np.ndarray:
    """The works x categories weight matrix WC as a dense array."""
    return np.asarray(self.incidence().toarray(), dtype=np.float64)


@dataclass(frozen=True)
class AffiliationMatrix:
  """Author x category weights ac[a,c] with unit row sums.

  Attributes:
      authors: Ordered author identifiers.
      categories: Ordered category labels.
      weights: (author, category label) -> non-negative weight.
  """

  authors: tuple[str, ...]
  categories: tuple[str, ...]
  weights: Mapping[tuple[str, str], float] = field(default_factory=dict)

  def __post_init__(self) -> None:
    object.__setattr__(self, "authors", tuple(self.authors))
    object.__setattr__(self, "categories", tuple(self.categories))
    if len(set(self.authors)) != len(self.authors):
      raise NetworkError("duplicate author in affiliation matrix")
    if len(set(self.categories)) != len(self.categories):
      raise NetworkError("duplicate category in affiliation matrix")
    known_authors = set(self.authors)
    known_categories = set(self.categories)
    clean: dict[tuple[str, str], float] = {}
    for (author, label), value in self.weights.items():
      weight = float(value)
      if author not in known_authors:
        raise AffiliationError(author, "not listed among the authors")
      if label not in known_categories:
        raise AffiliationError(author, f"unknown category {label!r}")
      if not math.isfinite(weight) or weight < 0.0:
        raise AffiliationError(
            author, f"negative or non-finite weight {value!r} for {label!r}"
        )
      clean[(author, label)] = weight
    object.__setattr__(self, "weights", clean)
    for author, row in self.rows.items():
      total = math.fsum(row.values())
      if abs(total - 1.0) > ROW_SUM_TOLERANCE:
        raise AffiliationError(author, f"row sums to {total!r}, expected 1")

  @classmethod
  def from_rows(
      cls,
      rows: Mapping[str, Mapping[str, float]],
      categories: Sequence[str] | None = None,
  ) -> AffiliationMatrix:
    """Build from author -> {category: weight}; categories first-seen."""
    if categories is None:
      order: dict[str, None] = {}
      for row in rows.values():
        for label in row:
          order.setdefault(label, None)
      categories = list(order)
    weights = {
        (author, label): weight
        for author, row in rows.items()
        for label, weight in row.items()
    }
    return cls(
        authors=tuple(rows), categories=tuple(categories), weights=weights
    )

  @cached_property
  def rows(self) -> dict[str, dict[str, float]]:
    """Author -> {category label: weight}, only authors with stored weights."""
    result: dict[str, dict[str, float]] = {}
    for (author, label), weight in self.weights.items():
      result.setdefault(author, {})[label] = weight
    return result


@dataclass(frozen=True)
class DegreeReport:
  """Degrees and weighted degrees of a two-mode network.

  Attributes:
      work_deg: work_id -> deg(w). Empty when per-work tracking is off.
      work_wdeg: work_id -> wdeg(w). Empty when per-work tracking is off.
      category_wdeg: category label -> column sum wdeg(c), category order.
      total_weight: T(WC), the sum of all stored weights.
  """

  work_deg: Mapping[str, int]
  work_wdeg: Mapping[str, float]
  category_wdeg: Mapping[str, float]
  total_weight: float
