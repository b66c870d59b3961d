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

"""Batch projection operators on a materialized two-mode network.

Each operator is a single sparse product over the whole incidence matrix
WC. They agree with the streaming bundle and exist for callers that hold a
network in memory or need one projection only.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import sparse

from bipro._errors import AsymmetricMatrixError
from bipro._errors import DegenerateWorkError
from bipro._errors import NotBinaryError
from bipro.network import TwoModeNetwork
from bipro.projection._accumulator import distinct_pair_sums
from bipro.projection._accumulator import mirror_upper
from bipro.projection._accumulator import weighted_gram
from bipro.projection._config import ProjectionConfig
from bipro.projection._config import StrictPolicy
from bipro.projection._types import _as_categories
from bipro.projection._types import ProjectionKind
from bipro.projection._types import ProjectionMatrix
from bipro.projection._types import SYMMETRY_TOLERANCE
from bipro.projection._types import UndirectedEdge
from bipro.projection._types import UndirectedEdgeList

logger = logging.getLogger("bipro." + __name__)


def _wrap(
    net: TwoModeNetwork,
    product: sparse.spmatrix,
    kind: ProjectionKind,
    config: ProjectionConfig | None,
) -> ProjectionMatrix:
  config = config or ProjectionConfig()
  entries = sparse.csr_matrix(product, dtype=np.float64)
  if len(net.categories) <= config.dense_threshold:
    return ProjectionMatrix(
        categories=net.categories, entries=entries.toarray(), kind=kind
    )
  entries.eliminate_zeros()
  return ProjectionMatrix(categories=net.categories, entries=entries, kind=kind)


def _binary_pattern(wc: sparse.csr_matrix) -> sparse.csr_matrix:
  pattern = wc.copy()
  pattern.data = np.ones_like(pattern.data)
  return pattern


def _ones(matrix: sparse.csr_matrix) -> np.ndarray:
  return np.ones(matrix.shape[0], dtype=np.float64)


def _row_sums(matrix: sparse.csr_matrix) -> np.ndarray:
  return np.asarray(matrix.sum(axis=1), dtype=np.float64).ravel()


def project_counting(
    net: TwoModeNetwork, *, config: ProjectionConfig | None = None
) -> ProjectionMatrix:
  """Authors-counting projection Co_C = WC^T . bin(WC).

  Co_C[a,b] counts the authors from a over the works that also involve b,
  so the matrix is generally not symmetric.
  """
  wc = net.incidence()
  product = weighted_gram(wc, _ones(wc), _binary_pattern(wc))
  return _wrap(net, product, ProjectionKind.AUTHORS_COUNTING, config)


def project_works_counting(
    net: TwoModeNetwork, *, config: ProjectionConfig | None = None
) -> ProjectionMatrix:
  """Works-counting projection Co_b = bin(WC)^T . bin(WC)."""
  pattern = _binary_pattern(net.incidence())
  product = mirror_upper(weighted_gram(pattern, _ones(pattern), pattern))
  return _wrap(net, product, ProjectionKind.WORKS_COUNTING, config)


def project_raw(
    net: TwoModeNetwork, *, config: ProjectionConfig | None = None
) -> ProjectionMatrix:
  """The plain projection WC^T . WC.

  For a binary works x authors network this is the co-authorship network
  Co_A; on binary input it coincides with Co_b and Co_C.
  """
  wc = net.incidence()
  product = mirror_upper(weighted_gram(wc, _ones(wc), wc))
  return _wrap(net, product, ProjectionKind.RAW_BINARY, config)


def project_standard_fractional(
    net: TwoModeNetwork, *, config: ProjectionConfig | None = None
) -> ProjectionMatrix:
  """Standard fractional projection Co_n = n(WC)^T . n(WC).

  Rows of WC are divided by max(1, wdeg(w)), so every work with
  wdeg(w) >= 1 contributes a total of 1.
  """
  wc = net.incidence()
  d = 1.0 / np.maximum(1.0, _row_sums(wc)) ** 2
  product = mirror_upper(weighted_gram(wc, d, wc))
  return _wrap(net, product, ProjectionKind.STANDARD_FRACTIONAL, config)


def project_strict_fractional(
    net: TwoModeNetwork,
    strict_policy: StrictPolicy = StrictPolicy.SKIP,
    *,
    config: ProjectionConfig | None = None,
) -> ProjectionMatrix:
  """Strict fractional projection Co_N = D0(WC^T . d_N . WC).

  d_N[w,w] = 1 / (wdeg(w)^2 - sum_c wc[w,c]^2). Pairs inside one category
  do not count, and each work with at least two categories contributes a
  total of 1.

  Args:
      net: The works x categories network.
      strict_policy: SKIP leaves works with fewer than two categories out;
          ERROR rejects them.
      config: Only `dense_threshold` is used.

  Raises:
      DegenerateWorkError: Under ERROR, naming the first degenerate work.
  """
  wc = net.incidence()
  deg = np.diff(wc.indptr)
  degenerate = np.flatnonzero(deg < 2)
  if degenerate.size:
    if strict_policy is StrictPolicy.ERROR:
      first = net.works[int(degenerate[0])]
      raise DegenerateWorkError(first.work_id, first.deg)
    logger.info(
        "Skipped %d works with fewer than 2 categories in Co_N",
        degenerate.size,
    )
  d = np.zeros(len(net.works), dtype=np.float64)
  usable = deg >= 2
  d[usable] = 1.0 / distinct_pair_sums(wc)[usable]
  product = weighted_gram(wc, d, wc)
  return _wrap(
      net,
      mirror_upper(product, zero_diagonal=True),
      ProjectionKind.STRICT_FRACTIONAL,
      config,
  )


def project_binary_fractional_strict(
    net: TwoModeNetwork, *, config: ProjectionConfig | None = None
) -> ProjectionMatrix:
  """Strict projection of a binary network as D0(n(WA)^T . N(WA)).

  n divides rows by max(1, deg(w)) and N by max(1, deg(w) - 1); works with
  one author contribute only to the diagonal, which D0 removes.

  Raises:
      NotBinaryError: If `net` is not binary.
  """
  if not net.is_binary:
    raise NotBinaryError("the binary strict form needs a binary network")
  wa = net.incidence()
  deg = np.diff(wa.indptr).astype(np.float64)
  d = 1.0 / (np.maximum(1.0, deg) * np.maximum(1.0, deg - 1.0))
  product = weighted_gram(wa, d, wa)
  return _wrap(
      net,
      mirror_upper(product, zero_diagonal=True),
      ProjectionKind.STRICT_FRACTIONAL,
      config,
  )


def to_undirected_halved(m: ProjectionMatrix) -> UndirectedEdgeList:
  """Represent a symmetric projection as an undirected edge list.

  Each unordered pair (e, f), e before f, becomes one edge weighted twice
  m[e,f]; loops keep the diagonal entry. Zero entries produce no edge.

  Raises:
      AsymmetricMatrixError: For authors-counting matrices and any matrix
          not symmetric within tolerance.
  """
  if not m.kind.symmetric or not m.is_symmetric(SYMMETRY_TOLERANCE):
    raise AsymmetricMatrixError(
        f"{m.kind.value} matrix is not symmetric; use directed arcs instead"
    )
  upper = sparse.triu(sparse.csr_matrix(m.entries), format="coo")
  order = np.lexsort((upper.col, upper.row))
  labels = m.labels
  edges = []
  for k in order:
    i, j, value = int(upper.row[k]), int(upper.col[k]), float(upper.data[k])
    if value == 0.0:
      continue
    weight = value if i == j else 2.0 * value
    edges.append(
        UndirectedEdge(source=labels[i], target=labels[j], weight=weight)
    )
  return UndirectedEdgeList(
      categories=m.categories, edges=tuple(edges), kind=m.kind
  )


def from_undirected(
    edges: UndirectedEdgeList, *, config: ProjectionConfig | None = None
) -> ProjectionMatrix:
  """Expand a halved edge list back into its symmetric matrix.

  Repeated edges over the same pair are summed.
  """
  config = config or ProjectionConfig()
  categories = _as_categories(edges.categories)
  index = {c.label: c.index for c in categories}
  rows: list[int] = []
  cols: list[int] = []
  data: list[float] = []
  for edge in edges.edges:
    i, j = index[edge.source], index[edge.target]
    if i == j:
      rows.append(i)
      cols.append(i)
      data.append(edge.weight)
      continue
    half = edge.weight / 2.0
    rows.extend((i, j))
    cols.extend((j, i))
    data.extend((half, half))
  n = len(categories)
  entries = sparse.csr_matrix(
      (
          np.asarray(data, dtype=np.float64),
          (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)),
      ),
      shape=(n, n),
  )
  if n <= config.dense_threshold:
    return ProjectionMatrix(
        categories=categories, entries=entries.toarray(), kind=edges.kind
    )
  return ProjectionMatrix(
      categories=categories, entries=entries, kind=edges.kind
  )
