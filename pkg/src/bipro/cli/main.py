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

"""The `bipro` command line.

Subcommands:
    project   Project a network or works stream and write the matrices.
    validate  Project and check the projection identities.
    bench     Time the streaming projection on a synthetic corpus.

The log level is read from the BIPRO_LOG environment variable (default
WARNING). Exit status is 0 on success, 1 when a check fails and 2 on
invalid input.
"""

from __future__ import annotations

import argparse
from collections.abc import Callable
from collections.abc import Iterable
from collections.abc import Iterator
from contextlib import ExitStack
from dataclasses import dataclass
from dataclasses import field
import logging
import os
from pathlib import Path
import sys

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError

from bipro._errors import BiproError
from bipro._errors import DegenerateWorkError
from bipro._errors import NetworkError
from bipro._version import __version__
from bipro.bench import CategorySkew
from bipro.bench import CorpusSpec
from bipro.bench import run_benchmark
from bipro.bench import WeightDistribution
from bipro.cli._config import CliConfig
from bipro.cli._config import Command
from bipro.formats import IngestReport
from bipro.formats import InputFormat
from bipro.formats import MatrixFormat
from bipro.formats import parse_affiliations
from bipro.formats import parse_pajek_two_mode
from bipro.formats import parse_works_stream
from bipro.formats import read_author_totals
from bipro.formats import read_category_labels
from bipro.formats import remainders_from_totals
from bipro.formats import scan_categories
from bipro.formats import with_others
from bipro.formats import write_matrix
from bipro.network import add_others_category
from bipro.network import compose_affiliation
from bipro.network import filter_multi_category
from bipro.network import iter_multi_category
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord
from bipro.oracle import compare_bundle
from bipro.projection import BUNDLE_KINDS
from bipro.projection import CheckResult
from bipro.projection import CheckStatus
from bipro.projection import project_sharded
from bipro.projection import ProjectionBundle
from bipro.projection import ProjectionConfig
from bipro.projection import run_invariant_checks
from bipro.projection import StrictPolicy
from bipro.projection import ValidationReport

logger = logging.getLogger("bipro." + __name__)

LOG_ENV_VAR = "BIPRO_LOG"
# Dropped work ids listed in summary.json; the full list is logged at DEBUG.
DROPPED_SAMPLE = 100
ORACLE_TOLERANCE = 1e-9


class ProjectionSummary(BaseModel):
  """Contents of summary.json written next to the matrices."""

  model_config = ConfigDict(extra="forbid")

  input: str
  categories: list[str]
  works_used: int
  works_dropped: int
  dropped_sample: list[str]
  works_skipped_strict: int
  works_empty: int
  works_subunit: int
  works_non_integral: int
  total_weight: float
  traces: dict[str, float]
  totals: dict[str, float]
  ingest: IngestReport
  checks: ValidationReport
  oracle_max_deviation: float | None = Field(default=None)


@dataclass
class ProjectionRun:
  """A projected input plus what was learned while reading it."""

  bundle: ProjectionBundle
  ingest: IngestReport
  works_dropped: int = 0
  dropped_sample: list[str] = field(default_factory=list)
  oracle_max_deviation: float | None = None

  @property
  def oracle_failed(self) -> bool:
    return (
        self.oracle_max_deviation is not None
        and self.oracle_max_deviation > ORACLE_TOLERANCE
    )


def configure_logging() -> None:
  """Send bipro logs to stderr at the level named by BIPRO_LOG."""
  name = os.environ.get(LOG_ENV_VAR, "WARNING").strip().upper()
  level = logging.getLevelName(name)
  logging.basicConfig(
      format="%(asctime)s %(levelname)s %(name)s: %(message)s"
  )
  if not isinstance(level, int):
    logging.getLogger("bipro").setLevel(logging.WARNING)
    logger.warning("Unknown %s level %r; using WARNING", LOG_ENV_VAR, name)
    return
  logging.getLogger("bipro").setLevel(level)


def _write_text(path: Path, text: str) -> None:
  with open(path, "w", encoding="utf-8", newline="\n") as f:
    f.write(text)
  logger.info("Wrote %s", path)


def _recording(
    works: Iterable[WorkRecord], sink: list[WorkRecord]
) -> Iterator[WorkRecord]:
  for work in works:
    sink.append(work)
    yield work


def _projection_config(cfg: CliConfig) -> ProjectionConfig:
  return ProjectionConfig(
      strict_policy=cfg.strict_policy,
      chunk_size=cfg.chunk_size,
      compensated=cfg.compensated,
  )


def _load_pajek(cfg: CliConfig, ingest: IngestReport) -> TwoModeNetwork:
  assert cfg.input is not None
  net = parse_pajek_two_mode(
      cfg.input.read_bytes(), source_name=str(cfg.input), report=ingest
  )
  if cfg.affiliations is not None:
    with open(cfg.affiliations, "rb") as f:
      ac = parse_affiliations(f, source_name=str(cfg.affiliations))
    net = compose_affiliation(net, ac)
  if cfg.author_totals is not None:
    with open(cfg.author_totals, "rb") as f:
      totals = read_author_totals(f, source_name=str(cfg.author_totals))
    net = add_others_category(
        net, remainders_from_totals(net, totals), cfg.others_label
    )
  return net


def _stream_categories(cfg: CliConfig) -> list[str]:
  assert cfg.input is not None
  if cfg.categories is not None:
    with open(cfg.categories, "rb") as f:
      labels = read_category_labels(f, source_name=str(cfg.categories))
  else:
    with open(cfg.input, "rb") as f:
      labels = scan_categories(f, source_name=str(cfg.input))
  if cfg.author_totals is not None:
    if cfg.others_label in labels:
      raise NetworkError(f"category label {cfg.others_label!r} already exists")
    labels.append(cfg.others_label)
  return labels


@dataclass
class _DropTracker:
  """Counts dropped works and keeps the first ids.

  Under the ERROR strict policy a dropped work with fewer than two
  categories is still an error.
  """

  strict_error: bool = False
  count: int = 0
  sample: list[str] = field(default_factory=list)

  def __call__(self, work: WorkRecord) -> None:
    if self.strict_error and work.deg < 2:
      raise DegenerateWorkError(work.work_id, work.deg)
    self.count += 1
    if len(self.sample) < DROPPED_SAMPLE:
      self.sample.append(work.work_id)
    logger.debug("Dropped work %s with %d categories", work.work_id, work.deg)


def _project_stream(
    cfg: CliConfig,
    config: ProjectionConfig,
    ingest: IngestReport,
    on_drop: _DropTracker,
) -> tuple[ProjectionBundle, TwoModeNetwork]:
  """Project a works stream; the network holds works only under --oracle."""
  assert cfg.input is not None
  labels = _stream_categories(cfg)
  kept: list[WorkRecord] = []
  with ExitStack() as stack:
    f = stack.enter_context(open(cfg.input, "rb"))
    works: Iterable[WorkRecord] = parse_works_stream(
        f, source_name=str(cfg.input), report=ingest
    )
    if cfg.author_totals is not None:
      with open(cfg.author_totals, "rb") as totals_file:
        totals = read_author_totals(
            totals_file, source_name=str(cfg.author_totals)
        )
      works = with_others(works, totals, cfg.others_label)
    works = iter_multi_category(works, cfg.min_deg, on_drop)
    if cfg.oracle:
      works = _recording(works, kept)
    bundle = project_sharded(works, labels, threads=cfg.threads, config=config)
  if on_drop.count:
    logger.info(
        "Dropped %d works with fewer than %d categories",
        on_drop.count,
        cfg.min_deg,
    )
  return bundle, TwoModeNetwork.from_labels(labels, kept)


def project_input(cfg: CliConfig) -> ProjectionRun:
  """Read, filter and project the configured input in one pass.

  Raises:
      BiproError: On unreadable input or a strict policy violation.
      OSError: If a file cannot be read.
  """
  config = _projection_config(cfg)
  ingest = IngestReport()
  dropped = _DropTracker(strict_error=cfg.strict_policy is StrictPolicy.ERROR)
  if cfg.resolved_format is InputFormat.PAJEK:
    loaded = _load_pajek(cfg, ingest)
    for work in loaded.works:
      if work.deg < cfg.min_deg:
        dropped(work)
    net, _ = filter_multi_category(loaded, cfg.min_deg)
    bundle = project_sharded(
        net.works, net.categories, threads=cfg.threads, config=config
    )
  else:
    bundle, net = _project_stream(cfg, config, ingest, dropped)

  run = ProjectionRun(
      bundle=bundle,
      ingest=ingest,
      works_dropped=dropped.count,
      dropped_sample=dropped.sample,
  )
  if cfg.oracle:
    deviations = compare_bundle(bundle, net)
    run.oracle_max_deviation = max(deviations.values(), default=0.0)
    if run.oracle_failed:
      logger.error(
          "Streaming result deviates from the oracle by %g",
          run.oracle_max_deviation,
      )
  return run


def _oracle_check(run: ProjectionRun) -> CheckResult:
  deviation = run.oracle_max_deviation
  return CheckResult(
      name="oracle_equivalence",
      status=CheckStatus.FAIL if run.oracle_failed else CheckStatus.PASS,
      detail=f"max relative deviation {deviation!r}",
  )


def cmd_project(cfg: CliConfig) -> int:
  """Write the selected matrices and summary.json to the output directory."""
  assert cfg.input is not None and cfg.out_dir is not None
  run = project_input(cfg)
  bundle = run.bundle
  cfg.out_dir.mkdir(parents=True, exist_ok=True)
  for kind in cfg.kinds:
    path = cfg.out_dir / f"{kind.value}.{cfg.out_format.extension}"
    _write_text(path, write_matrix(bundle.matrix(kind), cfg.out_format))

  checks = run_invariant_checks(bundle)
  if run.oracle_max_deviation is not None:
    checks.checks.append(_oracle_check(run))
  summary = ProjectionSummary(
      input=str(cfg.input),
      categories=[c.label for c in bundle.categories],
      works_used=bundle.works_used,
      works_dropped=run.works_dropped,
      dropped_sample=run.dropped_sample,
      works_skipped_strict=bundle.works_skipped_strict,
      works_empty=bundle.works_empty,
      works_subunit=bundle.works_subunit,
      works_non_integral=bundle.works_non_integral,
      total_weight=bundle.degree_report.total_weight,
      traces={k.value: bundle.matrix(k).trace() for k in BUNDLE_KINDS},
      totals={k.value: bundle.matrix(k).total() for k in BUNDLE_KINDS},
      ingest=run.ingest,
      checks=checks,
      oracle_max_deviation=run.oracle_max_deviation,
  )
  _write_text(
      cfg.out_dir / "summary.json", summary.model_dump_json(indent=2) + "\n"
  )
  return 1 if run.oracle_failed else 0


def cmd_validate(cfg: CliConfig) -> int:
  """Print one line per invariant check; 0 iff none failed."""
  run = project_input(cfg)
  report = run_invariant_checks(run.bundle)
  if run.oracle_max_deviation is not None:
    report.checks.append(_oracle_check(run))
  for check in report.checks:
    print(f"{check.status.value:<15} {check.name}: {check.detail}")
  if cfg.out_dir is not None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    _write_text(
        cfg.out_dir / "validation.json", report.model_dump_json(indent=2) + "\n"
    )
  return 0 if report.passed else 1


def cmd_bench(cfg: CliConfig) -> int:
  """Run the benchmark and emit its JSON report; 1 if the oracle gate fails."""
  assert cfg.bench is not None
  report = run_benchmark(
      cfg.bench,
      config=_projection_config(cfg),
      threads=cfg.threads,
      oracle_sample=cfg.oracle_sample,
  )
  text = report.model_dump_json(indent=2) + "\n"
  if cfg.out_dir is not None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    _write_text(cfg.out_dir / "bench.json", text)
  else:
    sys.stdout.write(text)
  return 0 if report.oracle_passed else 1


COMMANDS: dict[Command, Callable[[CliConfig], int]] = {
    Command.PROJECT: cmd_project,
    Command.VALIDATE: cmd_validate,
    Command.BENCH: cmd_bench,
}


def _add_projection_arguments(parser: argparse.ArgumentParser) -> None:
  parser.add_argument(
      "--strict-policy",
      choices=[p.value for p in StrictPolicy],
      default=StrictPolicy.SKIP.value,
      help="single-category works in Co_N: skip them or fail",
  )
  parser.add_argument(
      "--threads", type=int, default=1, help="threads for chunk products"
  )
  parser.add_argument(
      "--chunk-size", type=int, default=8192, help="works per chunk"
  )
  parser.add_argument(
      "--compensated",
      action="store_true",
      help="compensated summation of chunk contributions",
  )


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
  parser.add_argument("--input", type=Path, required=True)
  parser.add_argument(
      "--format",
      dest="input_format",
      choices=[f.value for f in InputFormat],
      help="input format (default: pajek for .net files, else works-tsv)",
  )
  parser.add_argument(
      "--min-deg",
      type=int,
      default=2,
      help="drop works with fewer categories (default 2)",
  )
  parser.add_argument(
      "--categories", type=Path, help="category order, one label per line"
  )
  parser.add_argument(
      "--affiliations",
      type=Path,
      help="author<TAB>label=weight;... rows; input is works x authors",
  )
  parser.add_argument(
      "--author-totals",
      type=Path,
      help="work_id<TAB>total_authors; the shortfall goes to --others-label",
  )
  parser.add_argument("--others-label", default="Others")
  parser.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
  _add_projection_arguments(parser)


def _add_bench_arguments(parser: argparse.ArgumentParser) -> None:
  parser.add_argument("--bench-spec", type=Path, help="CorpusSpec JSON file")
  parser.add_argument("--works", type=int)
  parser.add_argument("--categories-count", dest="categories_count", type=int)
  parser.add_argument("--min-categories", type=int)
  parser.add_argument("--max-categories", type=int)
  parser.add_argument("--max-weight", type=int)
  parser.add_argument(
      "--weight-distribution", choices=[d.value for d in WeightDistribution]
  )
  parser.add_argument("--skew", choices=[s.value for s in CategorySkew])
  parser.add_argument("--zipf-exponent", type=float)
  parser.add_argument("--seed", type=int)
  parser.add_argument(
      "--oracle-sample",
      type=int,
      default=10_000,
      help="corpus prefix checked against the oracle",
  )
  parser.add_argument("--out-dir", type=Path, help="write bench.json here")
  _add_projection_arguments(parser)


def build_parser() -> argparse.ArgumentParser:
  """The argument parser of the `bipro` command."""
  parser = argparse.ArgumentParser(
      prog="bipro",
      description="Projections of weighted two-mode networks.",
  )
  parser.add_argument(
      "--version", action="version", version=f"%(prog)s {__version__}"
  )
  sub = parser.add_subparsers(dest="command", required=True)

  project = sub.add_parser("project", help="write projection matrices")
  _add_input_arguments(project)
  project.add_argument("--out-dir", type=Path, required=True)
  project.add_argument(
      "--out-format",
      choices=[f.value for f in MatrixFormat],
      default=MatrixFormat.CSV.value,
  )
  project.add_argument(
      "--kinds",
      nargs="+",
      choices=[k.value for k in BUNDLE_KINDS],
      default=[k.value for k in BUNDLE_KINDS],
  )

  validate = sub.add_parser("validate", help="check projection identities")
  _add_input_arguments(validate)
  validate.add_argument("--out-dir", type=Path, help="write validation.json")

  bench = sub.add_parser("bench", help="benchmark on a synthetic corpus")
  _add_bench_arguments(bench)
  return parser


_SPEC_FLAGS = {
    "works": "works",
    "categories_count": "categories",
    "min_categories": "min_categories",
    "max_categories": "max_categories",
    "max_weight": "max_weight",
    "weight_distribution": "weight_distribution",
    "skew": "skew",
    "zipf_exponent": "zipf_exponent",
    "seed": "seed",
}


def _corpus_spec(args: argparse.Namespace) -> CorpusSpec:
  """Spec file values, overridden by explicit flags."""
  values: dict[str, object] = {}
  if args.bench_spec is not None:
    document = args.bench_spec.read_bytes()
    values = CorpusSpec.model_validate_json(document).model_dump()
  for flag, name in _SPEC_FLAGS.items():
    value = getattr(args, flag)
    if value is not None:
      values[name] = value
  return CorpusSpec.model_validate(values)


def config_from_args(args: argparse.Namespace) -> CliConfig:
  """Validate parsed arguments into a CliConfig.

  Raises:
      ValidationError: If the arguments are inconsistent.
  """
  common = {
      "command": args.command,
      "strict_policy": args.strict_policy,
      "threads": args.threads,
      "chunk_size": args.chunk_size,
      "compensated": args.compensated,
      "out_dir": args.out_dir,
  }
  if args.command == Command.BENCH.value:
    return CliConfig(
        **common, bench=_corpus_spec(args), oracle_sample=args.oracle_sample
    )
  values = {
      **common,
      "input": args.input,
      "input_format": args.input_format,
      "min_deg": args.min_deg,
      "categories": args.categories,
      "affiliations": args.affiliations,
      "author_totals": args.author_totals,
      "others_label": args.others_label,
      "oracle": args.oracle,
  }
  if args.command == Command.PROJECT.value:
    values["out_format"] = args.out_format
    values["kinds"] = args.kinds
  return CliConfig(**values)


def main(argv: list[str] | None = None) -> int:
  """Entry point of the `bipro` console script."""
  configure_logging()
  args = build_parser().parse_args(argv)
  try:
    cfg = config_from_args(args)
    return COMMANDS[cfg.command](cfg)
  except ValidationError as e:
    logger.error("Invalid arguments: %s", e)
  except (BiproError, OSError) as e:
    logger.error("%s", e)
  return 2


if __name__ == "__main__":
  sys.exit(main())
