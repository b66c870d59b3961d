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

"""Single-pass projection of a work stream, sharded runs and bundle merging."""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
import logging
import math

from bipro._errors import BiproError
from bipro.network import CategoryId
from bipro.network import DegreeReport
from bipro.network import WorkRecord
from bipro.projection._accumulator import ProjectionAccumulator
from bipro.projection._config import ProjectionConfig
from bipro.projection._config import StrictPolicy
from bipro.projection._types import BUNDLE_KINDS
from bipro.projection._types import ProjectionBundle
from bipro.projection._types import ProjectionKind

logger = logging.getLogger("bipro." + __name__)


def _resolve_config(
    config: ProjectionConfig | None, strict_policy: StrictPolicy | None
) -> ProjectionConfig:
  config = config or ProjectionConfig()
  if strict_policy is not None and strict_policy is not config.strict_policy:
    config = config.model_copy(update={"strict_policy": strict_policy})
  return config


def project_all_streaming(
    works: Iterable[WorkRecord],
    categories: Sequence[CategoryId] | Sequence[str],
    strict_policy: StrictPolicy | None = None,
    *,
    config: ProjectionConfig | None = None,
) -> ProjectionBundle:
  """Compute Co_b, Co_C, Co_n and Co_N in one pass over `works`.

  Memory is bounded by the accumulator state, O(|C|^2), plus one chunk of
  works; the stream itself is never materialized.

  Args:
      works: The work stream, consumed once.
      categories: Category order of the output matrices.
      strict_policy: Overrides `config.strict_policy` when given.
      config: Projection configuration. If None, uses defaults.

  Returns:
      The four projections and the corpus counters.

  Raises:
      UnknownCategoryError: If a work references an undeclared category.
      DegenerateWorkError: If the strict policy is ERROR and a work has
          fewer than two categories.

  Example:
      ```python
      from bipro.projection import project_all_streaming

      bundle = project_all_streaming(net.works, net.categories)
      print(bundle.co_N.total())
      ```
  """
  accumulator = ProjectionAccumulator(
      categories, _resolve_config(config, strict_policy)
  )
  return accumulator.extend(works).result()


def project_sharded(
    works: Iterable[WorkRecord],
    categories: Sequence[CategoryId] | Sequence[str],
    *,
    threads: int,
    config: ProjectionConfig | None = None,
) -> ProjectionBundle:
  """Like project_all_streaming, computing chunk contributions on threads.

  Chunks are folded in stream order, so the result is bit-identical to the
  sequential path for the same chunk size.

  Args:
      works: The work stream, consumed once.
      categories: Category order of the output matrices.
      threads: Worker threads; 1 runs sequentially.
      config: Projection configuration. If None, uses defaults.
  """
  if threads < 1:
    raise BiproError(f"threads must be >= 1, got {threads}")
  config = config or ProjectionConfig()
  if threads == 1:
    return project_all_streaming(works, categories, config=config)
  logger.debug("Projecting on %d threads", threads)
  with ThreadPoolExecutor(
      max_workers=threads, thread_name_prefix="bipro-chunk"
  ) as executor:
    accumulator = ProjectionAccumulator(
        categories, config, executor=executor, max_pending=2 * threads
    )
    return accumulator.extend(works).result()


def _merge_reports(reports: Sequence[DegreeReport]) -> DegreeReport:
  work_deg: dict[str, int] = {}
  work_wdeg: dict[str, float] = {}
  columns: dict[str, list[float]] = {}
  for report in reports:
    work_deg.update(report.work_deg)
    work_wdeg.update(report.work_wdeg)
    for label, value in report.category_wdeg.items():
      columns.setdefault(label, []).append(value)
  category_wdeg = {
      label: math.fsum(values) for label, values in columns.items()
  }
  return DegreeReport(
      work_deg=work_deg,
      work_wdeg=work_wdeg,
      category_wdeg=category_wdeg,
      total_weight=math.fsum(category_wdeg.values()),
  )


def merge_bundles(bundles: Sequence[ProjectionBundle]) -> ProjectionBundle:
  """Combine bundles computed over disjoint parts of one stream.

  Matrices are summed elementwise and counters added, which is exact up to
  floating-point reassociation because every projection is additive over
  works.

  Args:
      bundles: At least one bundle; all over the same category order.

  Returns:
      The merged bundle.

  Raises:
      BiproError: If no bundles are given or their category orders differ.
  """
  if not bundles:
    raise BiproError("merge_bundles needs at least one bundle")
  first = bundles[0]
  labels = [c.label for c in first.categories]
  for bundle in bundles[1:]:
    if [c.label for c in bundle.categories] != labels:
      raise BiproError("cannot merge bundles over different category orders")

  merged = {kind: first.matrix(kind) for kind in BUNDLE_KINDS}
  for bundle in bundles[1:]:
    for kind in BUNDLE_KINDS:
      merged[kind] = merged[kind] + bundle.matrix(kind)
  logger.debug("Merged %d bundles", len(bundles))
  return ProjectionBundle(
      co_b=merged[ProjectionKind.WORKS_COUNTING],
      co_c=merged[ProjectionKind.AUTHORS_COUNTING],
      co_n=merged[ProjectionKind.STANDARD_FRACTIONAL],
      co_N=merged[ProjectionKind.STRICT_FRACTIONAL],
      works_used=sum(b.works_used for b in bundles),
      works_skipped_strict=sum(b.works_skipped_strict for b in bundles),
      degree_report=_merge_reports([b.degree_report for b in bundles]),
      works_empty=sum(b.works_empty for b in bundles),
      works_subunit=sum(b.works_subunit for b in bundles),
      works_non_integral=sum(b.works_non_integral for b in bundles),
      works_non_binary=sum(b.works_non_binary for b in bundles),
  )
