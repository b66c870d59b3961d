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

"""Line-oriented inputs: work streams, affiliations, totals and labels.

A works stream holds one work per line:

    w1<TAB>c2=2;c3=1

Blank lines and lines starting with `#` are skipped. Parsing is lazy, so
a stream of any length is consumed in constant memory apart from the set
of work ids seen.
"""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Mapping
import logging
import math

from bipro._errors import NetworkError
from bipro._errors import ParseError
from bipro.formats._common import iter_lines
from bipro.formats._common import parse_float
from bipro.formats._common import TextSource
from bipro.formats._types import IngestReport
from bipro.network import AffiliationMatrix
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord

logger = logging.getLogger("bipro." + __name__)


def _records(
    source: TextSource, source_name: str
) -> Iterator[tuple[int, str]]:
  for number, line in iter_lines(source, source_name):
    stripped = line.strip()
    if stripped and not stripped.startswith("#"):
      yield number, line


def _split_record(
    line: str, source: str, number: int
) -> tuple[str, str]:
  key, sep, rest = line.partition("\t")
  key = key.strip()
  if not key:
    raise ParseError(source, number, "missing identifier before the tab")
  if not sep and len(line.split()) > 1:
    raise ParseError(
        source, number, "identifier and pairs must be tab-separated"
    )
  return key, rest.strip()


def _parse_pairs(
    text: str, source: str, number: int, report: IngestReport | None
) -> dict[str, float]:
  """Parse `label=weight;...`, dropping zeros and summing repeats."""
  pairs: dict[str, list[float]] = {}
  for item in text.split(";"):
    item = item.strip()
    if not item:
      continue
    label, sep, value = item.rpartition("=")
    label = label.strip()
    if not sep or not label:
      raise ParseError(source, number, f"expected label=weight, got {item!r}")
    weight = parse_float(value.strip(), source, number, "weight")
    if weight < 0.0:
      raise ParseError(
          source, number, f"negative weight {weight!r} for {label!r}"
      )
    if weight == 0.0:
      if report is not None:
        report.zero_weights_dropped += 1
      continue
    if label in pairs and report is not None:
      report.duplicate_pairs_summed += 1
    pairs.setdefault(label, []).append(weight)
  return {label: math.fsum(values) for label, values in pairs.items()}


def parse_works_stream(
    lines: TextSource,
    *,
    source_name: str = "<works>",
    report: IngestReport | None = None,
) -> Iterator[WorkRecord]:
  """Lazily parse a works stream.

  Args:
      lines: The stream, typically an open text file.
      source_name: Name used in error messages.
      report: Optional counters, updated as records are produced.

  Yields:
      One WorkRecord per record line, in input order. A record whose
      weights are all zero yields an empty work.

  Raises:
      ParseError: On a duplicate work id, a malformed pair or an
          unparsable or negative weight.
  """
  report = report if report is not None else IngestReport()
  seen: set[str] = set()
  last = 0
  for number, line in _records(lines, source_name):
    report.lines_read = number
    work_id, rest = _split_record(line, source_name, number)
    if work_id in seen:
      raise ParseError(source_name, number, f"duplicate work id {work_id!r}")
    seen.add(work_id)
    weights = _parse_pairs(rest, source_name, number, report)
    report.works_parsed += 1
    last = number
    yield WorkRecord(work_id=work_id, weights=weights)
  if report.zero_weights_dropped:
    logger.warning(
        "%s: dropped %d zero weights",
        source_name,
        report.zero_weights_dropped,
    )
  if report.duplicate_pairs_summed:
    logger.warning(
        "%s: summed %d repeated work-category pairs",
        source_name,
        report.duplicate_pairs_summed,
    )
  logger.info(
      "Parsed %s: %d works (last record on line %d)",
      source_name,
      report.works_parsed,
      last,
  )


def scan_categories(
    lines: TextSource, *, source_name: str = "<works>"
) -> list[str]:
  """Category labels of a works stream in first-seen order.

  Memory is O(|C|); the stream is validated line by line but duplicate
  work ids are left to parse_works_stream.
  """
  order: dict[str, None] = {}
  for number, line in _records(lines, source_name):
    _, rest = _split_record(line, source_name, number)
    for label in _parse_pairs(rest, source_name, number, None):
      order.setdefault(label, None)
  return list(order)


def read_category_labels(
    lines: TextSource, *, source_name: str = "<categories>"
) -> list[str]:
  """One category label per line, in file order."""
  labels: list[str] = []
  seen: set[str] = set()
  for number, line in _records(lines, source_name):
    label = line.strip()
    if label in seen:
      raise ParseError(source_name, number, f"duplicate category {label!r}")
    seen.add(label)
    labels.append(label)
  return labels


def parse_affiliations(
    lines: TextSource,
    *,
    source_name: str = "<affiliations>",
    categories: Iterable[str] | None = None,
) -> AffiliationMatrix:
  """Read an affiliation matrix, one author per line.

  Lines read `author<TAB>label=weight;...`; each author's weights must sum
  to 1.

  Args:
      lines: The affiliation file.
      source_name: Name used in error messages.
      categories: Category order; first-seen order if None.

  Raises:
      ParseError: On malformed lines or a repeated author.
      AffiliationError: If a row does not sum to 1.
  """
  rows: dict[str, dict[str, float]] = {}
  for number, line in _records(lines, source_name):
    author, rest = _split_record(line, source_name, number)
    if author in rows:
      raise ParseError(source_name, number, f"duplicate author {author!r}")
    rows[author] = _parse_pairs(rest, source_name, number, None)
  matrix = AffiliationMatrix.from_rows(
      rows, list(categories) if categories is not None else None
  )
  logger.info(
      "Parsed %s: %d authors over %d categories",
      source_name,
      len(matrix.authors),
      len(matrix.categories),
  )
  return matrix


def read_author_totals(
    lines: TextSource, *, source_name: str = "<author-totals>"
) -> dict[str, float]:
  """Read `work_id<TAB>total_authors` lines into a map."""
  totals: dict[str, float] = {}
  for number, line in _records(lines, source_name):
    work_id, rest = _split_record(line, source_name, number)
    if work_id in totals:
      raise ParseError(source_name, number, f"duplicate work id {work_id!r}")
    total = parse_float(rest, source_name, number, "author total")
    if total < 0.0:
      raise ParseError(source_name, number, f"negative author total {total!r}")
    totals[work_id] = total
  return totals


def remainder(work: WorkRecord, totals: Mapping[str, float]) -> float:
  """Authors of a work outside the analyzed categories, never negative."""
  total = totals.get(work.work_id)
  if total is None:
    return 0.0
  return max(0.0, total - work.wdeg)


def remainders_from_totals(
    net: TwoModeNetwork, totals: Mapping[str, float]
) -> dict[str, float]:
  """Per-work remainders max(0, total - wdeg(w)) for add_others_category.

  Works without a total get no remainder; totals naming unknown works are
  ignored with a warning.
  """
  unknown = sum(1 for work_id in totals if work_id not in net.work_index)
  if unknown:
    logger.warning("Ignoring author totals of %d unknown works", unknown)
  result = {}
  for work in net.works:
    value = remainder(work, totals)
    if value > 0.0:
      result[work.work_id] = value
  return result


def with_others(
    works: Iterable[WorkRecord], totals: Mapping[str, float], label: str
) -> Iterator[WorkRecord]:
  """Streaming form of add_others_category with remainders from totals."""
  for work in works:
    value = remainder(work, totals)
    if value > 0.0:
      if label in work.weights:
        raise NetworkError(
            f"work {work.work_id!r} already uses category label {label!r}"
        )
      work = WorkRecord(
          work_id=work.work_id, weights={**work.weights, label: value}
      )
    yield work
