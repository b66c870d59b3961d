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

"""Pajek two-mode network files.

A two-mode network is stored as

    *vertices 9 6
    1 "w1"
    ...
    7 "c1"
    *edges
    1 8 2

Vertices 1..n1 are works, the rest categories. Edge lines hold two vertex
numbers and an optional weight (default 1); `*arcs` sections are read the
same way. Lines starting with `%` are comments.
"""

from __future__ import annotations

from collections.abc import Iterator
import logging
import shlex

from bipro._errors import ParseError
from bipro.formats._common import format_exact
from bipro.formats._common import iter_lines
from bipro.formats._common import parse_float
from bipro.formats._common import parse_int
from bipro.formats._common import quote_label
from bipro.formats._common import TextSource
from bipro.formats._types import IngestReport
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord

logger = logging.getLogger("bipro." + __name__)

_EDGE_SECTIONS = ("*edges", "*arcs")


def split_fields(line: str, source: str, line_number: int) -> list[str]:
  """Split a Pajek line on whitespace, honoring double-quoted labels.

  Only `"` quotes; an apostrophe is an ordinary label character.
  """
  lexer = shlex.shlex(line, posix=True)
  lexer.quotes = '"'
  lexer.whitespace_split = True
  lexer.commenters = ""
  try:
    return list(lexer)
  except ValueError as e:
    raise ParseError(source, line_number, str(e)) from None


def _content_lines(
    source: TextSource, source_name: str, report: IngestReport | None
) -> Iterator[tuple[int, str]]:
  for number, line in iter_lines(source, source_name):
    if report is not None:
      report.lines_read += 1
    stripped = line.strip()
    if stripped and not stripped.startswith("%"):
      yield number, stripped


def parse_pajek_two_mode(
    source: TextSource,
    *,
    source_name: str = "<pajek>",
    report: IngestReport | None = None,
) -> TwoModeNetwork:
  """Read a two-mode network from a Pajek document.

  Args:
      source: The document, as text, bytes or an iterable of lines.
      source_name: Name used in error messages.
      report: Optional counters to fill in.

  Returns:
      The network; works and categories keep their vertex order.

  Raises:
      ParseError: On a malformed or missing header, an edge joining two
          vertices of the same mode, a vertex number out of range, a
          duplicate label within a mode or a non-positive weight.
  """
  total = first_mode = -1
  labels: dict[int, str] = {}
  weights: dict[tuple[int, int], float] = {}
  section = None
  for number, line in _content_lines(source, source_name, report):
    if line.startswith("*"):
      fields = line.split()
      keyword = fields[0].lower()
      if keyword == "*network":
        continue
      if keyword == "*vertices":
        if section is not None:
          raise ParseError(source_name, number, "repeated *vertices header")
        if len(fields) != 3:
          raise ParseError(
              source_name,
              number,
              "two-mode header must read '*vertices <total> <first-mode>'",
          )
        total = parse_int(fields[1], source_name, number, "vertex count")
        first_mode = parse_int(fields[2], source_name, number, "vertex count")
        if total < 0 or not 0 <= first_mode <= total:
          raise ParseError(
              source_name,
              number,
              f"first-mode count {first_mode} must be within 0..{total}",
          )
        section = "*vertices"
      elif keyword in _EDGE_SECTIONS:
        if section is None:
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
      if not 1 <= vertex <= total:
        raise ParseError(
            source_name, number, f"vertex {vertex} outside 1..{total}"
        )
      labels[vertex] = fields[1] if len(fields) > 1 else str(vertex)
      continue

    if len(fields) < 2:
      raise ParseError(source_name, number, "edge line needs two vertices")
    u = parse_int(fields[0], source_name, number, "vertex number")
    v = parse_int(fields[1], source_name, number, "vertex number")
    for vertex in (u, v):
      if not 1 <= vertex <= total:
        raise ParseError(
            source_name, number, f"vertex {vertex} outside 1..{total}"
        )
    if (u <= first_mode) == (v <= first_mode):
      raise ParseError(
          source_name, number, f"edge {u} {v} joins two vertices of one mode"
      )
    if u > first_mode:
      u, v = v, u
    weight = 1.0
    if len(fields) > 2:
      weight = parse_float(fields[2], source_name, number, "weight")
    if weight <= 0.0:
      raise ParseError(
          source_name, number, f"edge weight must be positive, got {weight!r}"
      )
    if (u, v) in weights:
      if report is not None:
        report.duplicate_pairs_summed += 1
      weights[(u, v)] += weight
    else:
      weights[(u, v)] = weight

  if section is None:
    raise ParseError(source_name, 0, "missing *vertices header")
  return _build(source_name, total, first_mode, labels, weights, report)


def _build(
    source_name: str,
    total: int,
    first_mode: int,
    labels: dict[int, str],
    weights: dict[tuple[int, int], float],
    report: IngestReport | None,
) -> TwoModeNetwork:
  def unique_labels(vertices: range, mode: str) -> list[str]:
    result = [labels.get(v, str(v)) for v in vertices]
    if len(set(result)) != len(result):
      raise ParseError(source_name, 0, f"duplicate {mode} label")
    return result

  work_ids = unique_labels(range(1, first_mode + 1), "work")
  category_labels = unique_labels(range(first_mode + 1, total + 1), "category")
  rows: list[dict[str, float]] = [{} for _ in work_ids]
  for (u, v), weight in sorted(weights.items()):
    rows[u - 1][category_labels[v - first_mode - 1]] = weight
  works = [
      WorkRecord(work_id=work_id, weights=row)
      for work_id, row in zip(work_ids, rows)
  ]
  if report is not None:
    report.works_parsed += len(works)
    if report.duplicate_pairs_summed:
      logger.warning(
          "%s: summed %d repeated work-category edges",
          source_name,
          report.duplicate_pairs_summed,
      )
  logger.info(
      "Parsed %s: %d works, %d categories, %d edges",
      source_name,
      len(works),
      len(category_labels),
      len(weights),
  )
  return TwoModeNetwork.from_labels(category_labels, works)


def write_pajek_two_mode(net: TwoModeNetwork) -> str:
  """Write a network as a Pajek two-mode document.

  Weights are written exactly, so the document parses back to an equal
  network.
  """
  n_works = len(net.works)
  out = [f"*vertices {n_works + len(net.categories)} {n_works}"]
  out.extend(
      f"{i} {quote_label(work.work_id)}"
      for i, work in enumerate(net.works, start=1)
  )
  out.extend(
      f"{n_works + c.index + 1} {quote_label(c.label)}" for c in net.categories
  )
  out.append("*edges")
  index = net.label_index
  for i, work in enumerate(net.works, start=1):
    for label in sorted(work.weights, key=index.__getitem__):
      vertex = n_works + index[label] + 1
      out.append(f"{i} {vertex} {format_exact(work.weights[label])}")
  return "\n".join(out) + "\n"
