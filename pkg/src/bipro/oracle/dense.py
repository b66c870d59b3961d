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

"""Dense reference implementations of every projection.

Each projection is written as the literal matrix product of its
definition, evaluated with dense numpy arrays. The oracle is slow and
O(|W| x |C|) in memory; it exists to check the streaming accumulator and
the batch operators, never to serve large inputs.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from bipro._errors import BiproError
from bipro._errors import DegenerateWorkError
from bipro._errors import DimensionMismatchError
from bipro._errors import NotBinaryError
from bipro.network import CategoryId
from bipro.network import filter_multi_category
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord
from bipro.projection import NormalizerKind
from bipro.projection import ProjectionBundle
from bipro.projection import ProjectionKind


@dataclass(frozen=True)
class DenseMatrix:
  """A rows x cols real matrix stored row-major.

  Attributes:
      rows: Number of rows.
      cols: Number of columns.
      values: Flat row-major values, length rows * cols.
  """

  rows: int
  cols: int
  values: np.ndarray

  def __post_init__(self) -> None:
    values = np.ascontiguousarray(self.values, dtype=np.float64).ravel()
    if self.rows < 0 or self.cols < 0:
      raise DimensionMismatchError(
          f"negative shape ({self.rows}, {self.cols})"
      )
    if values.size != self.rows * self.cols:
      raise DimensionMismatchError(
          f"{values.size} values for a {self.rows}x{self.cols} matrix"
      )
    if not np.all(np.isfinite(values)):
      raise BiproError("dense matrix values must be finite")
    object.__setattr__(self, "values", values)

  @classmethod
  def from_array(cls, array: np.ndarray) -> DenseMatrix:
    array = np.asarray(array, dtype=np.float64)
    if array.ndim != 2:
      raise DimensionMismatchError(f"expected a 2-d array, got {array.ndim}-d")
    return cls(rows=array.shape[0], cols=array.shape[1], values=array)

  @classmethod
  def identity(cls, n: int) -> DenseMatrix:
    return cls.from_array(np.eye(n))

  def to_array(self) -> np.ndarray:
    return self.values.reshape(self.rows, self.cols)

  @property
  def T(self) -> DenseMatrix:
    return DenseMatrix.from_array(self.to_array().T)

  def total(self) -> float:
    return float(self.values.sum())

  def with_zero_diagonal(self) -> DenseMatrix:
    """D0: the same matrix with its diagonal set to 0."""
    array = self.to_array().copy()
    np.fill_diagonal(array, 0.0)
    return DenseMatrix.from_array(array)


@dataclass(frozen=True)
class DiagonalMatrix:
  """A diagonal n x n matrix held as its diagonal vector."""

  diagonal: np.ndarray

  def __post_init__(self) -> None:
    object.__setattr__(
        self, "diagonal", np.asarray(self.diagonal, dtype=np.float64).ravel()
    )

  @property
  def size(self) -> int:
    return int(self.diagonal.size)

  def to_dense(self) -> DenseMatrix:
    return DenseMatrix.from_array(np.diag(self.diagonal))

  def __matmul__(self, other: DiagonalMatrix) -> DiagonalMatrix:
    if self.size != other.size:
      raise DimensionMismatchError(
          f"cannot multiply diagonals of size {self.size} and {other.size}"
      )
    return DiagonalMatrix(self.diagonal * other.diagonal)


Operand = Union[DenseMatrix, DiagonalMatrix]


def matmul(a: Operand, b: Operand) -> DenseMatrix:
  """The matrix product a . b.

  A DiagonalMatrix operand scales rows (on the left) or columns (on the
  right) instead of being materialized.

  Raises:
      DimensionMismatchError: If the inner dimensions differ.
  """
  a_cols = a.size if isinstance(a, DiagonalMatrix) else a.cols
  b_rows = b.size if isinstance(b, DiagonalMatrix) else b.rows
  if a_cols != b_rows:
    raise DimensionMismatchError(
        f"cannot multiply a matrix with {a_cols} columns by one with"
        f" {b_rows} rows"
    )
  if isinstance(a, DiagonalMatrix) and isinstance(b, DiagonalMatrix):
    return (a @ b).to_dense()
  if isinstance(a, DiagonalMatrix):
    return DenseMatrix.from_array(a.diagonal[:, np.newaxis] * b.to_array())
  if isinstance(b, DiagonalMatrix):
    return DenseMatrix.from_array(a.to_array() * b.diagonal[np.newaxis, :])
  return DenseMatrix.from_array(a.to_array() @ b.to_array())


def incidence(net: TwoModeNetwork) -> DenseMatrix:
  """WC as a dense works x categories matrix."""
  array = np.zeros((len(net.works), len(net.categories)), dtype=np.float64)
  index = net.label_index
  for row, work in enumerate(net.works):
    for label, weight in work.weights.items():
      array[row, index[label]] = weight
  return DenseMatrix.from_array(array)


def binary(m: DenseMatrix) -> DenseMatrix:
  """bin(M): 1 where M is nonzero."""
  return DenseMatrix.from_array((m.to_array() != 0.0).astype(np.float64))


def diagonal_normalizer(
    net: TwoModeNetwork, kind: NormalizerKind, *, binary_form: bool = False
) -> DiagonalMatrix:
  """Per-work normalization coefficients as a W x W diagonal.

  Weighted form (default):
      STANDARD: 1 / max(1, wdeg(w))^2, the squared row normalizer of n(WC).
      STRICT: 1 / (wdeg(w)^2 - sum_c wc[w,c]^2).

  Binary form, for WA with deg(w) authors:
      STANDARD: d_n[w,w] = 1 / max(1, deg(w)).
      STRICT: 1 / max(1, deg(w) - 1), so that d_n . d_N holds the strict
          coefficients.

  Raises:
      DegenerateWorkError: Weighted STRICT with a work of fewer than two
          categories.
      NotBinaryError: Binary form on a non-binary network.
  """
  wc = incidence(net).to_array()
  if binary_form:
    if not net.is_binary:
      raise NotBinaryError("the binary normalizers need a binary network")
    deg = (wc != 0.0).sum(axis=1).astype(np.float64)
    if kind is NormalizerKind.STANDARD:
      return DiagonalMatrix(1.0 / np.maximum(1.0, deg))
    return DiagonalMatrix(1.0 / np.maximum(1.0, deg - 1.0))

  wdeg = wc.sum(axis=1)
  if kind is NormalizerKind.STANDARD:
    return DiagonalMatrix(1.0 / np.maximum(1.0, wdeg) ** 2)
  for work in net.works:
    if work.deg < 2:
      raise DegenerateWorkError(work.work_id, work.deg)
  return DiagonalMatrix(1.0 / (wdeg**2 - (wc * wc).sum(axis=1)))


def oracle_projection(
    net: TwoModeNetwork, kind: ProjectionKind, *, binary_form: bool = False
) -> DenseMatrix:
  """Evaluate a projection from its matrix-product definition.

  Args:
      net: The works x categories network.
      kind: The projection to compute.
      binary_form: For STRICT_FRACTIONAL on binary networks, evaluate
          D0(WA^T . d_n . d_N . WA) instead of the weighted form.

  Returns:
      The |C| x |C| projection.

  Raises:
      DegenerateWorkError: STRICT_FRACTIONAL on a network with a work of
          fewer than two categories (filter first).
      NotBinaryError: `binary_form` on a non-binary network.
  """
  wc = incidence(net)
  if kind is ProjectionKind.WORKS_COUNTING:
    return matmul(binary(wc).T, binary(wc))
  if kind is ProjectionKind.AUTHORS_COUNTING:
    return matmul(wc.T, binary(wc))
  if kind is ProjectionKind.RAW_BINARY:
    return matmul(wc.T, wc)
  if kind is ProjectionKind.STANDARD_FRACTIONAL:
    d = diagonal_normalizer(net, NormalizerKind.STANDARD)
    return matmul(wc.T, matmul(d, wc))
  if binary_form:
    d_n = diagonal_normalizer(net, NormalizerKind.STANDARD, binary_form=True)
    d_N = diagonal_normalizer(net, NormalizerKind.STRICT, binary_form=True)
    return matmul(wc.T, matmul(d_n @ d_N, wc)).with_zero_diagonal()
  d = diagonal_normalizer(net, NormalizerKind.STRICT)
  return matmul(wc.T, matmul(d, wc)).with_zero_diagonal()


def contribution_matrix(
    work: WorkRecord, categories: Sequence[CategoryId] | Sequence[str]
) -> DenseMatrix:
  """The pairs of distinct categories of one work, unnormalized.

  Entry [e,f] = wc[w,e] * wc[w,f] for e != f and 0 on the diagonal, so
  the total is wdeg(w)^2 - sum_c wc[w,c]^2.
  """
  labels = [c.label if isinstance(c, CategoryId) else c for c in categories]
  row = np.array([work.weights.get(label, 0.0) for label in labels])
  return DenseMatrix.from_array(np.outer(row, row)).with_zero_diagonal()


def compare_bundle(
    bundle: ProjectionBundle, net: TwoModeNetwork
) -> dict[ProjectionKind, float]:
  """Worst relative deviation of each bundle matrix from the oracle.

  Each entry's deviation is |streamed - oracle| / max(1, |oracle|). Works
  with fewer than two categories are filtered out before evaluating the
  strict oracle, mirroring the accumulator's skip policy.

  Args:
      bundle: Projections computed over exactly the works of `net`.
      net: The network the bundle was computed from.

  Returns:
      Kind -> worst deviation.
  """
  strict_net, _ = filter_multi_category(net, 2)
  result = {}
  for kind, m in bundle.matrices().items():
    source = strict_net if kind is ProjectionKind.STRICT_FRACTIONAL else net
    expected = oracle_projection(source, kind).to_array()
    deviation = np.abs(m.to_dense() - expected) / np.maximum(
        1.0, np.abs(expected)
    )
    result[kind] = float(deviation.max()) if deviation.size else 0.0
  return result
