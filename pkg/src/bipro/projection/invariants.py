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

"""Checks of the identities every projection bundle must satisfy."""

from __future__ import annotations

from collections.abc import Callable
from enum import Enum
import logging

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from bipro.projection._types import ProjectionBundle
from bipro.projection._types import ProjectionMatrix
from bipro.projection._types import SYMMETRY_TOLERANCE

logger = logging.getLogger("bipro." + __name__)

# Relative tolerance of the total and inequality checks.
CHECK_TOLERANCE = 1e-9


class CheckStatus(str, Enum):
  PASS = "pass"
  FAIL = "fail"
  NOT_APPLICABLE = "not_applicable"


class CheckResult(BaseModel):
  """Outcome of one invariant check."""

  model_config = ConfigDict(extra="forbid")

  name: str
  status: CheckStatus
  detail: str = Field(default="")


class ValidationReport(BaseModel):
  """Outcomes of the whole invariant suite, in check order."""

  model_config = ConfigDict(extra="forbid")

  checks: list[CheckResult] = Field(default_factory=list)

  @property
  def passed(self) -> bool:
    """True iff no applicable check failed."""
    return all(c.status is not CheckStatus.FAIL for c in self.checks)

  @property
  def failures(self) -> list[CheckResult]:
    return [c for c in self.checks if c.status is CheckStatus.FAIL]

  def status_of(self, name: str) -> CheckStatus:
    for check in self.checks:
      if check.name == name:
        return check.status
    raise KeyError(name)


def _close(actual: float, expected: float, scale: float) -> bool:
  return abs(actual - expected) <= CHECK_TOLERANCE * max(1.0, scale)


def _result(name: str, ok: bool, detail: str) -> CheckResult:
  status = CheckStatus.PASS if ok else CheckStatus.FAIL
  return CheckResult(name=name, status=status, detail=detail)


def _not_applicable(name: str, detail: str) -> CheckResult:
  return CheckResult(
      name=name, status=CheckStatus.NOT_APPLICABLE, detail=detail
  )


def _off_diagonal_dominance(
    name: str, m: ProjectionMatrix, sums: np.ndarray
) -> CheckResult:
  diagonal = m.diagonal()
  off = sums - diagonal
  slack = CHECK_TOLERANCE * np.maximum(1.0, np.abs(diagonal))
  violating = np.flatnonzero(off < diagonal - slack)
  if violating.size:
    i = int(violating[0])
    return _result(
        name,
        False,
        f"{m.labels[i]}: off-diagonal sum {float(off[i])!r} < diagonal"
        f" {float(diagonal[i])!r} ({violating.size} violations)",
    )
  return _result(name, True, f"{m.size} categories")


def check_trace_identity(bundle: ProjectionBundle) -> CheckResult:
  """trace(Co_C) = T(WC)."""
  trace = bundle.co_c.trace()
  total = bundle.degree_report.total_weight
  return _result(
      "trace_identity",
      _close(trace, total, total),
      f"trace(Co_C)={trace!r}, T(WC)={total!r}",
  )


def _skipped_detail(bundle: ProjectionBundle) -> str:
  return f"{bundle.works_skipped_strict} works have fewer than 2 categories"


def check_co_c_row_inequality(bundle: ProjectionBundle) -> CheckResult:
  """Co_C rows: sum over b != a of Co_C[a,b] >= Co_C[a,a] when all deg >= 2."""
  name = "co_c_row_inequality"
  if bundle.works_skipped_strict:
    return _not_applicable(name, _skipped_detail(bundle))
  return _off_diagonal_dominance(name, bundle.co_c, bundle.co_c.row_sums())


def check_co_b_row_inequality(bundle: ProjectionBundle) -> CheckResult:
  name = "co_b_row_inequality"
  if bundle.works_skipped_strict:
    return _not_applicable(name, _skipped_detail(bundle))
  return _off_diagonal_dominance(name, bundle.co_b, bundle.co_b.row_sums())


def check_co_b_column_inequality(bundle: ProjectionBundle) -> CheckResult:
  name = "co_b_column_inequality"
  if bundle.works_skipped_strict:
    return _not_applicable(name, _skipped_detail(bundle))
  return _off_diagonal_dominance(name, bundle.co_b, bundle.co_b.column_sums())


def _symmetry(name: str, m: ProjectionMatrix) -> CheckResult:
  return _result(
      name,
      m.is_symmetric(SYMMETRY_TOLERANCE),
      f"{m.kind.value} symmetric within {SYMMETRY_TOLERANCE}",
  )


def check_co_b_symmetry(bundle: ProjectionBundle) -> CheckResult:
  return _symmetry("co_b_symmetry", bundle.co_b)


def check_co_n_symmetry(bundle: ProjectionBundle) -> CheckResult:
  return _symmetry("co_n_symmetry", bundle.co_n)


def check_co_N_symmetry(bundle: ProjectionBundle) -> CheckResult:
  return _symmetry("co_N_symmetry", bundle.co_N)


def check_co_N_zero_diagonal(bundle: ProjectionBundle) -> CheckResult:
  nonzero = int(np.count_nonzero(bundle.co_N.diagonal()))
  return _result(
      "co_N_zero_diagonal", nonzero == 0, f"{nonzero} nonzero diagonal entries"
  )


def check_non_negative(bundle: ProjectionBundle) -> CheckResult:
  """Every entry of the four matrices is finite and >= 0."""
  for kind, m in bundle.matrices().items():
    values = m.entries.data if m.is_sparse else m.entries
    if values.size and not (
        np.all(np.isfinite(values)) and float(values.min()) >= 0.0
    ):
      return _result("non_negative", False, f"{kind.value} has a bad entry")
  return _result("non_negative", True, "all entries finite and >= 0")


def check_standard_total(bundle: ProjectionBundle) -> CheckResult:
  """T(Co_n) = number of works with wdeg(w) > 0."""
  name = "standard_total"
  if bundle.works_subunit:
    return _not_applicable(
        name, f"{bundle.works_subunit} works have 0 < wdeg(w) < 1"
    )
  expected = bundle.works_used - bundle.works_empty
  total = bundle.co_n.total()
  return _result(
      name,
      _close(total, expected, expected),
      f"T(Co_n)={total!r}, expected {expected}",
  )


def check_strict_total(bundle: ProjectionBundle) -> CheckResult:
  """T(Co_N) = number of works with at least two categories."""
  expected = bundle.works_used - bundle.works_skipped_strict
  total = bundle.co_N.total()
  return _result(
      "strict_total",
      _close(total, expected, expected),
      f"T(Co_N)={total!r}, expected {expected}",
  )


def check_binary_collapse(bundle: ProjectionBundle) -> CheckResult:
  """On binary corpora Co_C equals Co_b."""
  name = "binary_collapse"
  if bundle.works_non_binary:
    return _not_applicable(name, f"{bundle.works_non_binary} non-binary works")
  diff = np.abs(bundle.co_c.to_dense() - bundle.co_b.to_dense())
  worst = float(diff.max()) if diff.size else 0.0
  return _result(name, worst == 0.0, f"max |Co_C - Co_b| = {worst!r}")


CHECKS: tuple[Callable[[ProjectionBundle], CheckResult], ...] = (
    check_trace_identity,
    check_co_c_row_inequality,
    check_co_b_row_inequality,
    check_co_b_column_inequality,
    check_co_b_symmetry,
    check_co_n_symmetry,
    check_co_N_symmetry,
    check_co_N_zero_diagonal,
    check_non_negative,
    check_standard_total,
    check_strict_total,
    check_binary_collapse,
)


def run_invariant_checks(bundle: ProjectionBundle) -> ValidationReport:
  """Run every invariant check against a bundle.

  Args:
      bundle: The projections to validate.

  Returns:
      One CheckResult per check. Checks whose preconditions the corpus does
      not meet are NOT_APPLICABLE rather than failed.
  """
  report = ValidationReport(checks=[check(bundle) for check in CHECKS])
  for failure in report.failures:
    logger.warning("Check %s failed: %s", failure.name, failure.detail)
  return report
