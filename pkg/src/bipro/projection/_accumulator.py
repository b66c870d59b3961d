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

"""Single-pass accumulator for the four projection matrices.

Works are buffered into chunks of `ProjectionConfig.chunk_size`. A chunk is
turned into a sparse works x categories matrix X (and its binary pattern B)
and folded into the running totals:

    Co_b += B^T B
    Co_C += X^T B
    Co_n += X^T diag(1 / max(1, wdeg)^2) X
    Co_N += D0(X^T diag(1 / (wdeg^2 - sum wc^2)) X)

which is the per-work update rule applied to a whole chunk at once. State
is O(|C|^2) regardless of the stream length.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from collections.abc import Sequence
from concurrent.futures import Executor
from concurrent.futures import Future
import logging
import math
from typing import NamedTuple

import numpy as np
from scipy import sparse

from bipro._errors import DegenerateWorkError
from bipro._errors import UnknownCategoryError
from bipro.network import CategoryId
from bipro.network import DegreeReport
from bipro.network import WorkRecord
from bipro.projection._config import ProjectionConfig
from bipro.projection._config import StrictPolicy
from bipro.projection._types import _as_categories
from bipro.projection._types import BUNDLE_KINDS
from bipro.projection._types import Entries
from bipro.projection._types import ProjectionBundle
from bipro.projection._types import ProjectionKind
from bipro.projection._types import ProjectionMatrix

logger = logging.getLogger("bipro." + __name__)


class ChunkContribution(NamedTuple):
  """Projection contributions of one chunk of works."""

  co_b: sparse.csr_matrix
  co_c: sparse.csr_matrix
  co_n: sparse.csr_matrix
  co_N: sparse.csr_matrix
  category_wdeg: np.ndarray

  def of(self, kind: ProjectionKind) -> sparse.csr_matrix:
    return {
        ProjectionKind.WORKS_COUNTING: self.co_b,
        ProjectionKind.AUTHORS_COUNTING: self.co_c,
        ProjectionKind.STANDARD_FRACTIONAL: self.co_n,
        ProjectionKind.STRICT_FRACTIONAL: self.co_N,
    }[kind]


def mirror_upper(
    matrix: sparse.spmatrix, *, zero_diagonal: bool = False
) -> sparse.csr_matrix:
  """Rebuild a symmetric matrix from its upper triangle.

  The lower triangle is replaced by the transposed upper one, so the
  result is exactly symmetric. With `zero_diagonal` the diagonal is dropped
  (the D0 operator).
  """
  strict_upper = sparse.triu(matrix, k=1, format="csr")
  upper = sparse.triu(matrix, k=1 if zero_diagonal else 0, format="csr")
  result = sparse.csr_matrix(upper + strict_upper.T)
  result.eliminate_zeros()
  return result


def distinct_pair_sums(wc: sparse.csr_matrix) -> np.ndarray:
  """Per-row sum of wc[w,e] * wc[w,f] over ordered pairs e != f.

  Equal to wdeg(w)^2 - sum_c wc[w,c]^2, but built from positive terms only:
  each weight is multiplied by the sum of the other weights of its row,
  taken as a prefix plus a suffix sum. The difference form cancels
  catastrophically when one weight dominates a row.
  """
  n_works = wc.shape[0]
  counts = np.diff(wc.indptr)
  if n_works == 0 or wc.nnz == 0:
    return np.zeros(n_works, dtype=np.float64)
  rows = np.repeat(np.arange(n_works), counts)
  positions = np.arange(wc.nnz) - wc.indptr[rows]
  padded = np.zeros((n_works, int(counts.max())), dtype=np.float64)
  padded[rows, positions] = wc.data
  # Exclusive prefix and suffix sums, shifted rather than subtracted.
  before = np.zeros_like(padded)
  before[:, 1:] = np.cumsum(padded, axis=1)[:, :-1]
  after = np.zeros_like(padded)
  after[:, :-1] = np.cumsum(padded[:, ::-1], axis=1)[:, ::-1][:, 1:]
  return (padded * (before + after)).sum(axis=1)


def weighted_gram(
    left: sparse.csr_matrix, d: np.ndarray, right: sparse.csr_matrix
) -> sparse.csr_matrix:
  """left^T . diag(d) . right for two works x categories matrices."""
  if left.shape[0] == 0:
    return sparse.csr_matrix((left.shape[1], right.shape[1]), dtype=np.float64)
  scaled = sparse.diags(d, format="csr") @ right
  return sparse.csr_matrix(left.T.tocsr() @ scaled)


def compute_chunk(
    data: np.ndarray,
    rows: np.ndarray,
    cols: np.ndarray,
    n_works: int,
    n_categories: int,
) -> ChunkContribution:
  """Projection contributions of a chunk given as COO triplets.

  Pure function of its arguments; safe to run on worker threads.

  Args:
      data: Positive weights wc[w,c].
      rows: Work position within the chunk.
      cols: Category index.
      n_works: Number of works in the chunk (rows may be empty).
      n_categories: |C|.

  Returns:
      The four contributions and the chunk's column sums.
  """
  wc = sparse.csr_matrix(
      (data, (rows, cols)), shape=(n_works, n_categories), dtype=np.float64
  )
  binary = wc.copy()
  binary.data = np.ones_like(binary.data)

  wdeg = np.asarray(wc.sum(axis=1), dtype=np.float64).ravel()
  deg = np.diff(wc.indptr)

  d_standard = 1.0 / np.maximum(1.0, wdeg) ** 2
  d_strict = np.zeros(n_works, dtype=np.float64)
  usable = deg >= 2
  # Positive exactly when deg >= 2.
  d_strict[usable] = 1.0 / distinct_pair_sums(wc)[usable]

  ones = np.ones(n_works, dtype=np.float64)
  co_b = weighted_gram(binary, ones, binary)
  co_c = weighted_gram(wc, ones, binary)
  co_n = weighted_gram(wc, d_standard, wc)
  co_strict = weighted_gram(wc, d_strict, wc)
  category_wdeg = np.asarray(wc.sum(axis=0), dtype=np.float64).ravel()
  return ChunkContribution(
      co_b=mirror_upper(co_b),
      co_c=co_c,
      co_n=mirror_upper(co_n),
      co_N=mirror_upper(co_strict, zero_diagonal=True),
      category_wdeg=category_wdeg,
  )


def _compensated_add(
    total: Entries, compensation: Entries, delta: Entries
) -> tuple[Entries, Entries]:
  """One Kahan step: returns the new total and compensation."""
  y = delta - compensation
  t = total + y
  new_compensation = (t - total) - y
  if sparse.issparse(new_compensation):
    new_compensation = sparse.csr_matrix(new_compensation)
    new_compensation.eliminate_zeros()
  return t, new_compensation


class ProjectionAccumulator:
  """Streaming accumulator of Co_b, Co_C, Co_n and Co_N.

  Accumulators are single-writer. Independent accumulators over a
  partition of the stream can be combined with `merge_bundles`.

  Example:
      ```python
      from bipro.projection import ProjectionAccumulator

      accumulator = ProjectionAccumulator(["c1", "c2", "c3"])
      for work in works:
        accumulator.add(work)
      bundle = accumulator.result()
      ```
  """

  def __init__(
      self,
      categories: Sequence[CategoryId] | Sequence[str],
      config: ProjectionConfig | None = None,
      *,
      executor: Executor | None = None,
      max_pending: int = 4,
  ):
    """Initialize the accumulator.

    Args:
        categories: Category order of every output matrix.
        config: Projection configuration. If None, uses defaults.
        executor: Optional executor computing chunk contributions off the
            calling thread. Contributions are still folded in stream order,
            so the result does not depend on the executor.
        max_pending: Chunks allowed in flight on the executor.
    """
    self._categories = _as_categories(categories)
    self._config = config or ProjectionConfig()
    self._index = {c.label: c.index for c in self._categories}
    n = len(self._categories)
    self._use_sparse = n > self._config.dense_threshold
    self._totals: dict[ProjectionKind, Entries] = {
        kind: self._zeros(n) for kind in BUNDLE_KINDS
    }
    self._compensation: dict[ProjectionKind, Entries] | None = None
    if self._config.compensated:
      self._compensation = {kind: self._zeros(n) for kind in BUNDLE_KINDS}
    self._category_wdeg = np.zeros(n, dtype=np.float64)

    self._data: list[float] = []
    self._rows: list[int] = []
    self._cols: list[int] = []
    self._buffered = 0

    self._works_used = 0
    self._skipped_strict = 0
    self._empty = 0
    self._subunit = 0
    self._non_integral = 0
    self._non_binary = 0
    self._work_deg: dict[str, int] = {}
    self._work_wdeg: dict[str, float] = {}

    self._executor = executor
    self._max_pending = max(1, max_pending)
    self._pending: deque[Future[ChunkContribution]] = deque()
    self.peak_state_size = self._state_size()

  def _zeros(self, n: int) -> Entries:
    if self._use_sparse:
      return sparse.csr_matrix((n, n), dtype=np.float64)
    return np.zeros((n, n), dtype=np.float64)

  @property
  def categories(self) -> tuple[CategoryId, ...]:
    return self._categories

  @property
  def works_used(self) -> int:
    return self._works_used

  @property
  def is_sparse(self) -> bool:
    return self._use_sparse

  def _state_size(self) -> int:
    """Matrix values currently held, totals plus compensation."""
    held = list(self._totals.values())
    if self._compensation is not None:
      held.extend(self._compensation.values())
    return sum(
        int(m.nnz) if sparse.issparse(m) else int(m.size) for m in held
    )

  def add(self, work: WorkRecord) -> None:
    """Consume one work.

    Raises:
        UnknownCategoryError: If the work references an undeclared label.
        DegenerateWorkError: If the work has fewer than two categories and
            the strict policy is ERROR.
    """
    indices = []
    for label in work.weights:
      index = self._index.get(label)
      if index is None:
        raise UnknownCategoryError(work.work_id, label)
      indices.append(index)
    if work.deg < 2:
      if self._config.strict_policy is StrictPolicy.ERROR:
        raise DegenerateWorkError(work.work_id, work.deg)
      self._skipped_strict += 1

    row = self._buffered
    for index, weight in zip(indices, work.weights.values()):
      self._data.append(weight)
      self._rows.append(row)
      self._cols.append(index)
    self._buffered += 1
    self._works_used += 1

    wdeg = work.wdeg
    if work.deg == 0:
      self._empty += 1
    elif wdeg < 1.0:
      self._subunit += 1
    if not all(v.is_integer() for v in work.weights.values()):
      self._non_integral += 1
    if not work.is_binary:
      self._non_binary += 1
    if self._config.track_work_degrees:
      self._work_deg[work.work_id] = work.deg
      self._work_wdeg[work.work_id] = wdeg

    if self._buffered >= self._config.chunk_size:
      self.flush()

  def extend(self, works: Iterable[WorkRecord]) -> ProjectionAccumulator:
    """Consume every work of a stream; returns self for chaining."""
    for work in works:
      self.add(work)
    return self

  def flush(self) -> None:
    """Fold buffered works into the totals or submit them to the executor."""
    if not self._buffered:
      return
    args = (
        np.asarray(self._data, dtype=np.float64),
        np.asarray(self._rows, dtype=np.int64),
        np.asarray(self._cols, dtype=np.int64),
        self._buffered,
        len(self._categories),
    )
    logger.debug("Flushing chunk of %d works", self._buffered)
    self._data, self._rows, self._cols = [], [], []
    self._buffered = 0
    if self._executor is None:
      self._fold(compute_chunk(*args))
      return
    self._pending.append(self._executor.submit(compute_chunk, *args))
    while len(self._pending) > self._max_pending:
      self._fold(self._pending.popleft().result())

  def _drain(self) -> None:
    while self._pending:
      self._fold(self._pending.popleft().result())

  def _fold(self, contribution: ChunkContribution) -> None:
    for kind in BUNDLE_KINDS:
      delta: Entries = contribution.of(kind)
      if not self._use_sparse:
        delta = delta.toarray()
      if self._compensation is not None:
        self._totals[kind], self._compensation[kind] = _compensated_add(
            self._totals[kind], self._compensation[kind], delta
        )
      elif self._use_sparse:
        self._totals[kind] = sparse.csr_matrix(self._totals[kind] + delta)
      else:
        self._totals[kind] += delta
    self._category_wdeg += contribution.category_wdeg
    self.peak_state_size = max(self.peak_state_size, self._state_size())

  def result(self) -> ProjectionBundle:
    """Flush pending work and return the projections so far.

    The accumulator stays usable; later works add to the same totals.
    """
    self.flush()
    self._drain()
    matrices = {}
    for kind in BUNDLE_KINDS:
      total = self._totals[kind]
      entries = (
          sparse.csr_matrix(total, copy=True)
          if self._use_sparse
          else total.copy()
      )
      matrices[kind] = ProjectionMatrix(
          categories=self._categories, entries=entries, kind=kind
      )
    category_wdeg = {
        c.label: float(v) for c, v in zip(self._categories, self._category_wdeg)
    }
    report = DegreeReport(
        work_deg=dict(self._work_deg),
        work_wdeg=dict(self._work_wdeg),
        category_wdeg=category_wdeg,
        total_weight=math.fsum(category_wdeg.values()),
    )
    if self._non_integral:
      logger.warning(
          "%d works have non-integral weights; counting projections are"
          " sums of fractional author counts",
          self._non_integral,
      )
    logger.info(
        "Projected %d works over %d categories (%d skipped for Co_N)",
        self._works_used,
        len(self._categories),
        self._skipped_strict,
    )
    return ProjectionBundle(
        co_b=matrices[ProjectionKind.WORKS_COUNTING],
        co_c=matrices[ProjectionKind.AUTHORS_COUNTING],
        co_n=matrices[ProjectionKind.STANDARD_FRACTIONAL],
        co_N=matrices[ProjectionKind.STRICT_FRACTIONAL],
        works_used=self._works_used,
        works_skipped_strict=self._skipped_strict,
        degree_report=report,
        works_empty=self._empty,
        works_subunit=self._subunit,
        works_non_integral=self._non_integral,
        works_non_binary=self._non_binary,
    )
