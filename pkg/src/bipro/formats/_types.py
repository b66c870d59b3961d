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

"""Types shared by the format readers and writers."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


class InputFormat(str, Enum):
  """Formats of a two-mode network input."""

  PAJEK = "pajek"
  WORKS_TSV = "works-tsv"


class MatrixFormat(str, Enum):
  """Formats a projection matrix can be written in."""

  CSV = "csv"
  PAJEK = "pajek"
  JSON = "json"

  @property
  def extension(self) -> str:
    return "net" if self is MatrixFormat.PAJEK else self.value


class IngestReport(BaseModel):
  """Counters filled in while a reader consumes its input.

  Attributes:
      lines_read: Lines seen, including blank and comment lines.
      works_parsed: Work records produced.
      zero_weights_dropped: Explicit zero weights left out of the records.
      duplicate_pairs_summed: Repeated (work, category) pairs whose weights
          were added together.
  """

  model_config = ConfigDict(extra="forbid")

  lines_read: int = Field(default=0, ge=0)
  works_parsed: int = Field(default=0, ge=0)
  zero_weights_dropped: int = Field(default=0, ge=0)
  duplicate_pairs_summed: int = Field(default=0, ge=0)
