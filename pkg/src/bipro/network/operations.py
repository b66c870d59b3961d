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

"""Degree functions, binarization, filtering and affiliation composition."""

from __future__ import annotations

from collections.abc import Callable
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Mapping
import logging
import math

from bipro._errors import AffiliationError
from bipro._errors import BiproError
from bipro._errors import NetworkError
from bipro._errors import NotBinaryError
from bipro.network._types import AffiliationMatrix
from bipro.network._types import CategoryId
from bipro.network._types import DegreeReport
from bipro.network._types import TwoModeNetwork
from bipro.network._types import WorkRecord

logger = logging.getLogger("bipro." + __name__)


def binarize(net: TwoModeNetwork) -> TwoModeNetwork:
  """Replace every stored weight with 1, keeping the sparsity pattern.

  Args:
      net: The network to binarize.

  Returns:
      bin(net). A network that is already binary is returned unchanged.
  """
  if net.is_binary:
    return net
  works = tuple(
      WorkRecord(work_id=w.work_id, weights=dict.fromkeys(w.weights, 1.0))
      for w in net.works
  )
  return TwoModeNetwork(categories=net.categories, works=works)


def degrees(net: TwoModeNetwork) -> DegreeReport:
  """Compute deg(w), wdeg(w), wdeg(c) and T(WC).

  Column sums and the total are computed with math.fsum so that
  sum(category_wdeg) and sum(work_wdeg) both agree with total_weight.
  """
  columns: dict[str, list[float]] = {label: [] for label in net.labels}
  work_deg: dict[str, int] = {}
  work_wdeg: dict[str, float] = {}
  for work in net.works:
    work_deg[work.work_id] = work.deg
    work_wdeg[work.work_id] = work.wdeg
    for label, weight in work.weights.items():
      columns[label].append(weight)
  category_wdeg = {
      label: math.fsum(values) for label, values in columns.items()
  }
  total = math.fsum(v for values in columns.values() for v in values)
  return DegreeReport(
      work_deg=work_deg,
      work_wdeg=work_wdeg,
      category_wdeg=category_wdeg,
      total_weight=total,
  )


def filter_multi_category(
    net: TwoModeNetwork, min_deg: int
) -> tuple[TwoModeNetwork, list[str]]:
  """Keep only the works with at least `min_deg` categories.

  Args:
      net: The network to filter.
      min_deg: Minimum number of distinct categories per work.

  Returns:
      The filtered network (original order preserved) and the ids of the
      dropped works.
  """
  if min_deg < 0:
    raise BiproError(f"min_deg must be >= 0, got {min_deg}")
  kept: list[WorkRecord] = []
  dropped: list[str] = []
  for work in net.works:
    if work.deg >= min_deg:
      kept.append(work)
    else:
      dropped.append(work.work_id)
  if dropped:
    logger.info(
        "Dropped %d of %d works with fewer than %d categories",
        len(dropped),
        len(net.works),
        min_deg,
    )
    logger.debug("Dropped works: %s", dropped)
  return TwoModeNetwork(categories=net.categories, works=tuple(kept)), dropped


def iter_multi_category(
    works: Iterable[WorkRecord],
    min_deg: int,
    on_drop: Callable[[WorkRecord], None] | None = None,
) -> Iterator[WorkRecord]:
  """Streaming form of filter_multi_category.

  Args:
      works: The work stream.
      min_deg: Minimum number of distinct categories per work.
      on_drop: Called with every dropped work.

  Yields:
      The works with deg(w) >= min_deg, in stream order.
  """
  if min_deg < 0:
    raise BiproError(f"min_deg must be >= 0, got {min_deg}")
  for work in works:
    if work.deg >= min_deg:
      yield work
    elif on_drop is not None:
      on_drop(work)


def add_others_category(
    net: TwoModeNetwork,
    per_work_remainder: Mapping[str, float],
    label: str,
) -> TwoModeNetwork:
  """Append an "Others" category absorbing authors outside the analyzed set.

  Args:
      net: The network to extend.
      per_work_remainder: work_id -> non-negative weight for the new
          category. Works not named get nothing.
      label: Label of the new category.

  Returns:
      A network with one more category.

  Raises:
      NetworkError: If the label already exists, a work id is unknown or a
          remainder is negative.
  """
  if label in net.label_index:
    raise NetworkError(f"category label {label!r} already exists")
  for work_id, remainder in per_work_remainder.items():
    if work_id not in net.work_index:
      raise NetworkError(f"remainder given for unknown work {work_id!r}")
    if not math.isfinite(remainder) or remainder < 0.0:
      raise NetworkError(
          f"remainder for work {work_id!r} must be non-negative, got"
          f" {remainder!r}"
      )
  categories = net.categories + (
      CategoryId(index=len(net.categories), label=label),
  )
  works = []
  for work in net.works:
    remainder = per_work_remainder.get(work.work_id, 0.0)
    if remainder > 0.0:
      work = WorkRecord(
          work_id=work.work_id, weights={**work.weights, label: remainder}
      )
    works.append(work)
  return TwoModeNetwork(categories=categories, works=tuple(works))


def compose_affiliation(
    wa: TwoModeNetwork, ac: AffiliationMatrix
) -> TwoModeNetwork:
  """Compute WC = WA . AC.

  The second mode of `wa` holds authors; each author's unit of authorship
  is spread over categories by its row of `ac`, so every work keeps
  deg_WA(w) authors in total.

  Args:
      wa: Binary works x authors network.
      ac: Row-stochastic author x category affiliation matrix.

  Returns:
      The works x categories network, categories in `ac` order.

  Raises:
      NotBinaryError: If `wa` is not binary.
      AffiliationError: If an author of some work has no affiliation row.
  """
  if not wa.is_binary:
    raise NotBinaryError(
        "compose_affiliation needs a binary works x authors network"
    )
  rows = ac.rows
  order = {label: i for i, label in enumerate(ac.categories)}
  works = []
  for work in wa.works:
    accum: dict[str, list[float]] = {}
    for author in work.weights:
      if author not in rows:
        raise AffiliationError(
            author, f"author of work {work.work_id!r} has no affiliation"
        )
      for label, weight in rows[author].items():
        if weight > 0.0:
          accum.setdefault(label, []).append(weight)
    # Row sums are 1 within tolerance, so each work keeps deg_WA(w) authors.
    weights = {
        label: math.fsum(accum[label])
        for label in sorted(accum, key=order.__getitem__)
    }
    works.append(WorkRecord(work_id=work.work_id, weights=weights))
  logger.info(
      "Composed %d works over %d authors into %d categories",
      len(works),
      len(wa.categories),
      len(ac.categories),
  )
  return TwoModeNetwork.from_labels(ac.categories, works)
