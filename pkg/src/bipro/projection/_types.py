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

"""Projection matrices, bundles and the halved undirected representation."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Union

import numpy as np
from scipy import sparse

from bipro._errors import BiproError
from bipro.network import CategoryId
from bipro.network import DegreeReport

Entries = Union[np.ndarray, sparse.csr_matrix]

SYMMETRY_TOLERANCE = 1e-9


class ProjectionKind(str, Enum):
  """The projections of a two-mode network onto its categories."""

  WORKS_COUNTING = "works_counting"
  AUTHORS_COUNTING = "authors_counting"
  STANDARD_FRACTIONAL = "standard_fractional"
  STRICT_FRACTIONAL = "strict_fractional"
  RAW_BINARY = "raw_binary"

  @property
  def symmetric(self) -> bool:
    """Whether matrices of this kind are symmetric by construction."""
    return self is not ProjectionKind.AUTHORS_COUNTING


# The four kinds produced by one streaming pass, in output order.
BUNDLE_KINDS = (
    ProjectionKind.WORKS_COUNTING,
    ProjectionKind.AUTHORS_COUNTING,
    ProjectionKind.STANDARD_FRACTIONAL,
    ProjectionKind.STRICT_FRACTIONAL,
)


class NormalizerKind(str, Enum):
  """Per-work diagonal coefficient rule.

  STANDARD: 1 / max(1, wdeg(w))^2 in the product WC^T . d . WC.
  STRICT: 1 / (wdeg(w)^2 - sum_c wc[w,c]^2), defined for deg(w) >= 2.
  """

  STANDARD = "standard"
  STRICT = "strict"


def _as_categories(
    categories: Sequence[CategoryId] | Sequence[str],
) -> tuple[CategoryId, ...]:
  result = []
  for i, item in enumerate(categories):
    if isinstance(item, CategoryId):
      result.append(item)
    else:
      result.append(CategoryId(index=i, label=item))
  return tuple(result)


@dataclass(frozen=True)
class ProjectionMatrix:
  """A square category x category matrix with loops.

  Entries are a dense numpy array or, for large category sets, a scipy
  CSR matrix. Row and column order follow `categories`.
  """

  categories: tuple[CategoryId, ...]
  entries: Entries
  kind: ProjectionKind

  def __post_init__(self) -> None:
    object.__setattr__(self, "categories", _as_categories(self.categories))
    n = len(self.categories)
    if self.entries.shape != (n, n):
      raise BiproError(
          f"{self.kind.value} matrix has shape {self.entries.shape}, expected"
          f" ({n}, {n})"
      )

  @classmethod
  def zeros(
      cls,
      categories: Sequence[CategoryId] | Sequence[str],
      kind: ProjectionKind,
      *,
      use_sparse: bool = False,
  ) -> ProjectionMatrix:
    n = len(categories)
    entries: Entries
    if use_sparse:
      entries = sparse.csr_matrix((n, n), dtype=np.float64)
    else:
      entries = np.zeros((n, n), dtype=np.float64)
    return cls(
        categories=_as_categories(categories), entries=entries, kind=kind
    )

  @property
  def labels(self) -> list[str]:
    return [c.label for c in self.categories]

  @property
  def size(self) -> int:
    return len(self.categories)

  @property
  def is_sparse(self) -> bool:
    return sparse.issparse(self.entries)

  @cached_property
  def _index(self) -> dict[str, int]:
    return {c.label: c.index for c in self.categories}

  def to_dense(self) -> np.ndarray:
    if sparse.issparse(self.entries):
      return np.asarray(self.entries.toarray(), dtype=np.float64)
    return np.asarray(self.entries, dtype=np.float64)

  def value(self, row: str, col: str) -> float:
    """Entry at (row label, column label)."""
    return float(self.entries[self._index[row], self._index[col]])

  def diagonal(self) -> np.ndarray:
    return np.asarray(self.entries.diagonal(), dtype=np.float64)

  def trace(self) -> float:
    return float(self.diagonal().sum())

  def total(self) -> float:
    """T(M), the sum of all entries."""
    return float(self.entries.sum())

  def row_sums(self) -> np.ndarray:
    return np.asarray(self.entries.sum(axis=1), dtype=np.float64).ravel()

  def column_sums(self) -> np.ndarray:
    return np.asarray(self.entries.sum(axis=0), dtype=np.float64).ravel()

  def stored_entries(self) -> int:
    """Number of values held in memory."""
    if sparse.issparse(self.entries):
      return int(self.entries.nnz)
    return int(self.entries.size)

  def is_symmetric(self, atol: float = SYMMETRY_TOLERANCE) -> bool:
    """Symmetry within `atol`, scaled by the largest entry when above 1."""
    diff = self.entries - self.entries.T
    if sparse.issparse(diff):
      worst = float(abs(diff).max()) if diff.nnz else 0.0
      scale = float(abs(self.entries).max()) if self.entries.nnz else 0.0
    else:
      worst = float(np.abs(diff).max()) if diff.size else 0.0
      scale = float(np.abs(self.entries).max()) if self.entries.size else 0.0
    return worst <= atol * max(1.0, scale)

  def __add__(self, other: ProjectionMatrix) -> ProjectionMatrix:
    if self.kind is not other.kind:
      raise BiproError(
          f"cannot add {self.kind.value} and {other.kind.value} matrices"
      )
    if self.labels != other.labels:
      raise BiproError("cannot add matrices over different category orders")
    if self.is_sparse or other.is_sparse:
      entries: Entries = sparse.csr_matrix(self.entries) + sparse.csr_matrix(
          other.entries
      )
    else:
      entries = self.entries + other.entries
    return ProjectionMatrix(
        categories=self.categories, entries=entries, kind=self.kind
    )


@dataclass(frozen=True)
class UndirectedEdge:
  """One edge of the halved undirected form; source <= target in order."""

  source: str
  target: str
  weight: float

  @property
  def is_loop(self) -> bool:
    return self.source == self.target


@dataclass(frozen=True)
class UndirectedEdgeList:
  """Undirected form of a symmetric projection.

  Non-loop edges carry twice the matrix entry, loops carry the diagonal
  entry, so the total edge weight equals T(M).
  """

  categories: tuple[CategoryId, ...]
  edges: tuple[UndirectedEdge, ...]
  kind: ProjectionKind

  def total(self) -> float:
    return float(sum(e.weight for e in self.edges))


@dataclass(frozen=True)
class ProjectionBundle:
  """The four projections from one pass plus corpus counters.

  Attributes:
      co_b: Works-counting projection bin(WC)^T . bin(WC).
      co_c: Authors-counting projection WC^T . bin(WC).
      co_n: Standard fractional projection n(WC)^T . n(WC).
      co_N: Strict fractional projection D0(WC^T . d_N . WC).
      works_used: Works consumed from the stream.
      works_skipped_strict: Works with fewer than two categories, which
          contribute nothing to co_N.
      degree_report: Column sums and T(WC) of the consumed works.
      works_empty: Works without any stored weight.
      works_subunit: Works with 0 < wdeg(w) < 1; their standard
          contribution is wdeg(w)^2 instead of 1.
      works_non_integral: Works with a non-integral weight.
      works_non_binary: Works with a weight other than 1.
  """

  co_b: ProjectionMatrix
  co_c: ProjectionMatrix
  co_n: ProjectionMatrix
  co_N: ProjectionMatrix
  works_used: int
  works_skipped_strict: int
  degree_report: DegreeReport
  works_empty: int = 0
  works_subunit: int = 0
  works_non_integral: int = 0
  works_non_binary: int = 0

  @property
  def categories(self) -> tuple[CategoryId, ...]:
    return self.co_b.categories

  def matrix(self, kind: ProjectionKind) -> ProjectionMatrix:
    """The bundle's matrix of the given kind."""
    by_kind = {
        ProjectionKind.WORKS_COUNTING: self.co_b,
        ProjectionKind.AUTHORS_COUNTING: self.co_c,
        ProjectionKind.STANDARD_FRACTIONAL: self.co_n,
        ProjectionKind.STRICT_FRACTIONAL: self.co_N,
    }
    if kind not in by_kind:
      raise BiproError(f"a projection bundle holds no {kind.value} matrix")
    return by_kind[kind]

  def matrices(self) -> dict[ProjectionKind, ProjectionMatrix]:
    return {kind: self.matrix(kind) for kind in BUNDLE_KINDS}
