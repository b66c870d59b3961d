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

"""Validated configuration of one CLI invocation."""

from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from bipro.bench import CorpusSpec
from bipro.formats import InputFormat
from bipro.formats import MatrixFormat
from bipro.projection import BUNDLE_KINDS
from bipro.projection import ProjectionKind
from bipro.projection import StrictPolicy


class Command(str, Enum):
  PROJECT = "project"
  VALIDATE = "validate"
  BENCH = "bench"


class CliConfig(BaseModel):
  """Everything a subcommand needs, checked before any work starts.

  Attributes:
      command: The subcommand.
      input: Two-mode network or works stream (project, validate).
      input_format: Format of `input`; inferred from the suffix when None
          (`.net` is Pajek, anything else a works stream).
      out_dir: Directory receiving output files.
      out_format: Format of the matrix files.
      kinds: Projections written by `project`.
      min_deg: Works with fewer categories are dropped before projecting.
      strict_policy: Handling of single-category works in Co_N.
      threads: Threads computing chunk contributions; 1 is sequential.
      chunk_size: Works per accumulator chunk.
      compensated: Use compensated summation.
      categories: File declaring category order for a works stream.
      affiliations: Author affiliation file; the input is then a binary
          works x authors Pajek network composed into works x categories.
      author_totals: File of total authors per work; the shortfall goes
          to the Others category.
      others_label: Label of the Others category.
      oracle: Cross-check the bundle against the dense oracle.
      bench: Corpus of the bench command.
      oracle_sample: Works checked against the oracle by the bench command.
  """

  model_config = ConfigDict(extra="forbid")

  command: Command
  input: Path | None = Field(default=None)
  input_format: InputFormat | None = Field(default=None)
  out_dir: Path | None = Field(default=None)
  out_format: MatrixFormat = Field(default=MatrixFormat.CSV)
  kinds: list[ProjectionKind] = Field(
      default_factory=lambda: list(BUNDLE_KINDS), min_length=1
  )
  min_deg: int = Field(default=2, ge=0)
  strict_policy: StrictPolicy = Field(default=StrictPolicy.SKIP)
  threads: int = Field(default=1, ge=1)
  chunk_size: int = Field(default=8192, ge=1)
  compensated: bool = Field(default=False)
  categories: Path | None = Field(default=None)
  affiliations: Path | None = Field(default=None)
  author_totals: Path | None = Field(default=None)
  others_label: str = Field(default="Others", min_length=1)
  oracle: bool = Field(default=False)
  bench: CorpusSpec | None = Field(default=None)
  oracle_sample: int = Field(default=10_000, ge=0)

  @model_validator(mode="after")
  def _check_paths(self) -> CliConfig:
    if self.command is Command.BENCH:
      if self.bench is None:
        raise ValueError("bench needs a corpus spec")
      return self
    if self.input is None:
      raise ValueError(f"{self.command.value} needs --input")
    if self.command is Command.PROJECT and self.out_dir is None:
      raise ValueError("project needs --out-dir")
    for name in ("input", "categories", "affiliations", "author_totals"):
      path = getattr(self, name)
      if path is not None and not path.is_file():
        raise ValueError(f"--{name.replace('_', '-')} {path} is not a file")
    for kind in self.kinds:
      if kind not in BUNDLE_KINDS:
        raise ValueError(f"kind {kind.value} is not produced by a pass")
    if self.affiliations is not None and self.resolved_format is not (
        InputFormat.PAJEK
    ):
      raise ValueError("--affiliations needs a Pajek works x authors input")
    return self

  @property
  def resolved_format(self) -> InputFormat:
    if self.input_format is not None:
      return self.input_format
    if self.input is not None and self.input.suffix.lower() == ".net":
      return InputFormat.PAJEK
    return InputFormat.WORKS_TSV
