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

"""Writers and readers for projection matrices.

csv: a header row `category,<labels...>` then one row per category.
pajek: a one-mode network; symmetric kinds as halved `*edges`, the
    authors-counting kind as `*arcs`.
json: `{"kind", "labels", "values"}` with row-major values.

csv and pajek values carry nine significant digits; json values are exact.
"""

from __future__ import annotations

import csv
import io
import logging

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import ValidationError
from scipy import sparse

from bipro._errors import BiproError
from bipro._errors import ParseError
from bipro.formats._common import format_value
from bipro.formats._common import iter_lines
from bipro.formats._common import parse_float
from bipro.formats._common import parse_int
from bipro.formats._common import quote_label
from bipro.formats._common import TextSource
from bipro.formats._types import MatrixFormat
from bipro.formats.pajek import split_fields
from bipro.network import CategoryId
from bipro.projection import from_undirected
from bipro.projection import ProjectionKind
from bipro.projection import ProjectionMatrix
from bipro.projection import to_undirected_halved
from bipro.projection import UndirectedEdge
from bipro.projection import UndirectedEdgeList

logger = logging.getLogger("bipro." + __name__)

_CSV_CORNER = "category"


class MatrixDocument(BaseModel):
  """JSON form of a projection matrix."""

  model_config = ConfigDict(extra="forbid")

  kind: ProjectionKind
  labels: list[str]
  values: list[list[float]]


def _write_csv(m: ProjectionMatrix) -> str:
  sink = io.StringIO()
  writer = csv.writer(sink, lineterminator="\n")
  writer.writerow([_CSV_CORNER, *m.labels])
  for label, row in zip(m.labels, m.to_dense()):
    writer.writerow([label, *(format_value(float(v)) for v in row)])
  return sink.getvalue()


def _write_pajek(m: ProjectionMatrix) -> str:
  out = [f"*network {m.kind.value}", f"*vertices {m.size}"]
  out.extend(f"{c.index + 1} {quote_label(c.label)}" for c in m.categories)
  if m.kind.symmetric:
    index = {c.label: c.index for c in m.categories}
    out.append("*edges")
    for edge in to_undirected_halved(m).edges:
      out.append(
          f"{index[edge.source] + 1} {index[edge.target] + 1}"
          f" {format_value(edge.weight)}"
      )
  else:
    out.append("*arcs")
    coo = sparse.coo_matrix(m.entries)
    for k in np.lexsort((coo.col, coo.row)):
      value = float(coo.data[k])
      if value != 0.0:
        out.append(
            f"{int(coo.row[k]) + 1} {int(coo.col[k]) + 1} {format_value(value)}"
        )
  return "\n".join(out) + "\n"


def _write_json(m: ProjectionMatrix) -> str:
  document = MatrixDocument(
      kind=m.kind, labels=m.labels, values=m.to_dense().tolist()
  )
  return document.model_dump_json() + "\n"


def write_matrix(m: ProjectionMatrix, fmt: MatrixFormat) -> str:
  """Serialize a projection matrix.

  Output is a deterministic function of the matrix, with LF line endings.

  Example:
      ```python
      from bipro.formats import MatrixFormat, write_matrix

      text = write_matrix(bundle.co_c, MatrixFormat.CSV)
      ```
  """
  if fmt is MatrixFormat.CSV:
    return _write_csv(m)
  if fmt is MatrixFormat.PAJEK:
    return _write_pajek(m)
  return _write_json(m)


def _read_csv(
    source: TextSource, kind: ProjectionKind | None, source_name: str
) -> ProjectionMatrix:
  if kind is None:
    raise BiproError("reading a csv matrix needs its kind")
  numbered = list(iter_lines(source, source_name))
  rows = list(csv.reader(line for _, line in numbered))
  if not rows or not rows[0] or rows[0][0] != _CSV_CORNER:
    raise ParseError(source_name, 1, f"header must start with {_CSV_CORNER!r}")
  labels = rows[0][1:]
  n = len(labels)
  values = np.zeros((n, n), dtype=np.float64)
  body = [(numbered[i][0], row) for i, row in enumerate(rows) if i and row]
  if len(body) != n:
    raise ParseError(
        source_name, len(rows), f"expected {n} rows, got {len(body)}"
    )
  for i, (number, row) in enumerate(body):
    if len(row) != n + 1 or row[0] != labels[i]:
      raise ParseError(
          source_name,
          number,
          f"row must be {labels[i]!r} followed by {n} values",
      )
    values[i] = [parse_float(v, source_name, number, "value") for v in row[1:]]
  return ProjectionMatrix(categories=labels, entries=values, kind=kind)


def _read_pajek(
    source: TextSource, kind: ProjectionKind | None, source_name: str
) -> ProjectionMatrix:
  n = -1
  labels: dict[int, str] = {}
  triples: list[tuple[int, int, float]] = []
  section = None
  for number, line in iter_lines(source, source_name):
    line = line.strip()
    if not line or line.startswith("%"):
      continue
    if line.startswith("*"):
      fields = line.split()
      keyword = fields[0].lower()
      if keyword == "*network":
        if len(fields) > 1 and kind is None:
          try:
            kind = ProjectionKind(fields[1])
          except ValueError:
            raise ParseError(
                source_name, number, f"unknown kind {fields[1]!r}"
            ) from None
      elif keyword == "*vertices":
        if len(fields) < 2:
          raise ParseError(source_name, number, "missing vertex count")
        n = parse_int(fields[1], source_name, number, "vertex count")
        section = keyword
      elif keyword in ("*edges", "*arcs"):
        if n < 0:
          raise ParseError(source_name, number, f"{keyword} before *vertices")
        section = keyword
      else:
        raise ParseError(source_name, number, f"unsupported section {keyword}")
      continue
    if section is None:
      raise ParseError(source_name, number, "data before *vertices")
    fields = split_fields(line, source_name, number)
    if section == "*vertices":
      vertex = parse_int(fields[0], source_name, number, "vertex number")
      labels[vertex] = fields[1] if len(fields) > 1 else str(vertex)
      continue
    if len(fields) < 2:
      raise ParseError(source_name, number, "line needs two vertices")
    u = parse_int(fields[0], source_name, number, "vertex number")
    v = parse_int(fields[1], source_name, number, "vertex number")
    if not (1 <= u <= n and 1 <= v <= n):
      raise ParseError(source_name, number, f"vertex outside 1..{n}")
    weight = 1.0
    if len(fields) > 2:
      weight = parse_float(fields[2], source_name, number, "weight")
    if section == "*edges" and u > v:
      u, v = v, u
    triples.append((u - 1, v - 1, weight))
  if n < 0:
    raise ParseError(source_name, 0, "missing *vertices header")
  if kind is None:
    raise BiproError(f"{source_name}: matrix kind is neither given nor stored")

  names = [labels.get(v, str(v)) for v in range(1, n + 1)]
  if section == "*edges":
    edge_list = UndirectedEdgeList(
        categories=tuple(
            CategoryId(index=i, label=name) for i, name in enumerate(names)
        ),
        edges=tuple(
            UndirectedEdge(source=names[i], target=names[j], weight=w)
            for i, j, w in triples
        ),
        kind=kind,
    )
    return from_undirected(edge_list)
  values = np.zeros((n, n), dtype=np.float64)
  for i, j, w in triples:
    values[i, j] += w
  return ProjectionMatrix(categories=names, entries=values, kind=kind)


def _read_json(
    source: TextSource, kind: ProjectionKind | None, source_name: str
) -> ProjectionMatrix:
  text = "\n".join(line for _, line in iter_lines(source, source_name))
  try:
    document = MatrixDocument.model_validate_json(text)
  except ValidationError as e:
    raise ParseError(source_name, 1, f"invalid matrix document: {e}") from None
  if kind is not None and kind is not document.kind:
    raise BiproError(
        f"{source_name} holds a {document.kind.value} matrix, expected"
        f" {kind.value}"
    )
  n = len(document.labels)
  rows = document.values
  if len(rows) != n or any(len(row) != n for row in rows):
    raise ParseError(source_name, 1, f"values must form a {n}x{n} matrix")
  values = np.asarray(document.values, dtype=np.float64).reshape(n, n)
  return ProjectionMatrix(
      categories=document.labels, entries=values, kind=document.kind
  )


def read_matrix(
    source: TextSource,
    fmt: MatrixFormat,
    *,
    kind: ProjectionKind | None = None,
    source_name: str = "<matrix>",
) -> ProjectionMatrix:
  """Parse a matrix written by write_matrix.

  Args:
      source: The document.
      fmt: Its format.
      kind: The projection kind; required for csv, checked against the
          stored kind for json and used when a pajek file stores none.
      source_name: Name used in error messages.

  Raises:
      ParseError: On malformed input.
      BiproError: If the kind is unknown or contradicts the document.
  """
  if fmt is MatrixFormat.CSV:
    matrix = _read_csv(source, kind, source_name)
  elif fmt is MatrixFormat.PAJEK:
    matrix = _read_pajek(source, kind, source_name)
  else:
    matrix = _read_json(source, kind, source_name)
  logger.debug("Read %s matrix of size %d", matrix.kind.value, matrix.size)
  return matrix
