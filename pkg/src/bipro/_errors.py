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

"""Exceptions raised by bipro.

All exceptions derive from ValueError so that callers catching plain
ValueError keep working.
"""

from __future__ import annotations


class BiproError(ValueError):
  """Base class for all bipro errors."""


class NetworkError(BiproError):
  """A two-mode network or affiliation matrix violates its invariants."""


class UnknownCategoryError(NetworkError):
  """A work references a category label that is not declared."""

  def __init__(self, work_id: str, label: str):
    super().__init__(f"work {work_id!r} references unknown category {label!r}")
    self.work_id = work_id
    self.label = label


class DegenerateWorkError(NetworkError):
  """A work has fewer than two categories where the strict rule needs two."""

  def __init__(self, work_id: str, categories: int):
    super().__init__(
        f"work {work_id!r} has {categories} categories; the strict"
        " fractional projection needs at least 2"
    )
    self.work_id = work_id
    self.categories = categories


class AffiliationError(NetworkError):
  """An author is missing from the affiliation matrix or not row-stochastic."""

  def __init__(self, author: str, reason: str):
    super().__init__(f"author {author!r}: {reason}")
    self.author = author


class NotBinaryError(NetworkError):
  """A binary network was required."""


class AsymmetricMatrixError(BiproError):
  """A symmetric projection matrix was required."""


class DimensionMismatchError(BiproError):
  """Matrix shapes do not agree."""


class ParseError(BiproError):
  """Input text could not be parsed."""

  def __init__(self, source: str, line_number: int, reason: str):
    super().__init__(f"{source}:{line_number}: {reason}")
    self.source = source
    self.line_number = line_number
    self.reason = reason
