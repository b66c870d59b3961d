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

"""Configuration for projection computations."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


class StrictPolicy(str, Enum):
  """What to do with works that have fewer than two categories.

  Such works have wdeg(w)^2 - sum_c wc[w,c]^2 = 0, so the strict
  coefficient is undefined for them.
  """

  SKIP = "skip"
  ERROR = "error"


class ProjectionConfig(BaseModel):
  """Configuration for the streaming projection accumulator.

  Attributes:
      strict_policy: Handling of single-category works in the strict
          fractional projection. SKIP contributes nothing to Co_N and counts
          the work; ERROR rejects it.
      dense_threshold: Category counts above this use a sparse accumulator.
      chunk_size: Number of works buffered before a chunk is folded into the
          accumulator. Results are bit-reproducible for a fixed chunk size.
      compensated: Fold chunk contributions with compensated (Kahan)
          summation. Worth enabling for streams beyond ~10^7 works.
      track_work_degrees: Keep per-work deg/wdeg maps in the degree report.
          Memory then grows with the number of works.

  Example:
      ```python
      from bipro.projection import ProjectionConfig, StrictPolicy

      config = ProjectionConfig(
          strict_policy=StrictPolicy.ERROR,
          chunk_size=4096,
      )
      ```
  """

  model_config = ConfigDict(extra="forbid")

  strict_policy: StrictPolicy = Field(default=StrictPolicy.SKIP)
  dense_threshold: int = Field(default=512, ge=0)
  chunk_size: int = Field(default=8192, ge=1)
  compensated: bool = Field(default=False)
  track_work_degrees: bool = Field(default=False)
