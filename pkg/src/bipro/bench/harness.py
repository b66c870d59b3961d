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

"""Timing the streaming projection against the dense oracle."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
import time

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from bipro.bench._config import CorpusSpec
from bipro.bench.generator import corpus_categories
from bipro.bench.generator import generate
from bipro.network import TwoModeNetwork
from bipro.oracle import compare_bundle
from bipro.projection import ProjectionAccumulator
from bipro.projection import ProjectionConfig
from bipro.projection import project_all_streaming

logger = logging.getLogger("bipro." + __name__)

# Largest relative deviation from the oracle the gate accepts.
ORACLE_TOLERANCE = 1e-9


class BenchTimings(BaseModel):
  """Wall-clock measurements; the only nondeterministic part of a report."""

  model_config = ConfigDict(extra="forbid")

  streaming_seconds: float = Field(ge=0.0)
  works_per_second: float = Field(ge=0.0)
  sample_streaming_seconds: float = Field(ge=0.0)
  sample_oracle_seconds: float = Field(ge=0.0)


class BenchReport(BaseModel):
  """Outcome of one benchmark run.

  Everything except `timings` is a deterministic function of the corpus
  spec and the projection configuration.
  """

  model_config = ConfigDict(extra="forbid")

  spec: CorpusSpec
  threads: int
  chunk_size: int
  works_used: int
  works_skipped_strict: int
  total_weight: float
  trace_co_c: float
  total_co_b: float
  total_co_n: float
  total_co_N: float
  peak_state_size: int
  oracle_sample: int
  oracle_max_deviation: float
  oracle_passed: bool
  timings: BenchTimings


def _oracle_gate(
    spec: CorpusSpec, config: ProjectionConfig, sample: int
) -> tuple[int, float, float, float]:
  """Compare streaming and oracle on a corpus prefix.

  Returns:
      (works compared, worst deviation, streaming seconds, oracle seconds).
  """
  works = list(itertools.islice(generate(spec), sample))
  labels = corpus_categories(spec)
  net = TwoModeNetwork.from_labels(labels, works)
  start = time.perf_counter()
  bundle = project_all_streaming(net.works, net.categories, config=config)
  streaming_seconds = time.perf_counter() - start
  start = time.perf_counter()
  deviations = compare_bundle(bundle, net)
  oracle_seconds = time.perf_counter() - start
  worst = max(deviations.values(), default=0.0)
  return len(works), worst, streaming_seconds, oracle_seconds


def run_benchmark(
    spec: CorpusSpec,
    *,
    config: ProjectionConfig | None = None,
    threads: int = 1,
    oracle_sample: int = 10_000,
) -> BenchReport:
  """Check the streaming path against the oracle, then time it.

  Args:
      spec: The synthetic corpus.
      config: Projection configuration. If None, uses defaults.
      threads: Threads computing chunk contributions.
      oracle_sample: Works of the corpus prefix checked against the oracle.

  Returns:
      The report. A failed equivalence gate is reported, not raised.
  """
  config = config or ProjectionConfig()
  compared, worst, sample_streaming, sample_oracle = _oracle_gate(
      spec, config, oracle_sample
  )
  passed = worst <= ORACLE_TOLERANCE
  if not passed:
    logger.error(
        "Streaming deviates from the oracle by %g on %d works", worst, compared
    )

  labels = corpus_categories(spec)
  start = time.perf_counter()
  if threads > 1:
    with ThreadPoolExecutor(max_workers=threads) as executor:
      accumulator = ProjectionAccumulator(
          labels, config, executor=executor, max_pending=2 * threads
      )
      bundle = accumulator.extend(generate(spec)).result()
  else:
    accumulator = ProjectionAccumulator(labels, config)
    bundle = accumulator.extend(generate(spec)).result()
  elapsed = time.perf_counter() - start
  logger.info("Projected %d works in %.3fs", bundle.works_used, elapsed)

  return BenchReport(
      spec=spec,
      threads=threads,
      chunk_size=config.chunk_size,
      works_used=bundle.works_used,
      works_skipped_strict=bundle.works_skipped_strict,
      total_weight=bundle.degree_report.total_weight,
      trace_co_c=bundle.co_c.trace(),
      total_co_b=bundle.co_b.total(),
      total_co_n=bundle.co_n.total(),
      total_co_N=bundle.co_N.total(),
      peak_state_size=accumulator.peak_state_size,
      oracle_sample=compared,
      oracle_max_deviation=worst,
      oracle_passed=passed,
      timings=BenchTimings(
          streaming_seconds=elapsed,
          works_per_second=bundle.works_used / elapsed if elapsed > 0 else 0.0,
          sample_streaming_seconds=sample_streaming,
          sample_oracle_seconds=sample_oracle,
      ),
  )
