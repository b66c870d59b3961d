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

"""Pytest configuration and fixtures for bipro tests."""

from collections.abc import Callable

import numpy as np
import pytest

from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord
from bipro.projection import project_all_streaming
from bipro.projection import ProjectionBundle

# Six works over three countries; wc[w,c] counts the authors of w from c.
EXAMPLE_ROWS = {
    "w1": {"c2": 2, "c3": 1},
    "w2": {"c1": 2, "c2": 1},
    "w3": {"c1": 1, "c2": 3, "c3": 1},
    "w4": {"c1": 3, "c3": 2},
    "w5": {"c1": 2, "c2": 3, "c3": 1},
    "w6": {"c1": 1, "c3": 3},
}

EXAMPLE_PAJEK = """\
% six works, three countries
*network example
*vertices 9 6
1 "w1"
2 "w2"
3 "w3"
4 "w4"
5 "w5"
6 "w6"
7 "c1"
8 "c2"
9 "c3"
*edges
1 8 2
1 9 1
2 7 2
2 8 1
3 7 1
3 8 3
3 9 1
4 7 3
4 9 2
5 7 2
5 8 3
5 9 1
6 7 1
6 9 3
"""

EXAMPLE_WORKS = """\
# works of the six-work example
w1\tc2=2;c3=1
w2\tc1=2;c2=1
w3\tc1=1;c2=3;c3=1

w4\tc1=3;c3=2
w5\tc1=2;c2=3;c3=1
w6\tc1=1;c3=3
"""


@pytest.fixture
def example_pajek_text() -> str:
  """The example as a Pajek two-mode document."""
  return EXAMPLE_PAJEK


@pytest.fixture
def example_works_text() -> str:
  """The example as a works stream."""
  return EXAMPLE_WORKS


@pytest.fixture
def example_works() -> list[WorkRecord]:
  """The example works in order w1..w6."""
  return [
      WorkRecord(work_id=work_id, weights=weights)
      for work_id, weights in EXAMPLE_ROWS.items()
  ]


@pytest.fixture
def example_network(example_works) -> TwoModeNetwork:
  """The example as a network over c1, c2, c3."""
  return TwoModeNetwork.from_labels(["c1", "c2", "c3"], example_works)


@pytest.fixture
def example_bundle(example_network) -> ProjectionBundle:
  """Streaming projections of the example network."""
  return project_all_streaming(
      example_network.works, example_network.categories
  )


@pytest.fixture
def expected_co_c() -> np.ndarray:
  return np.array([[9, 5, 7], [7, 9, 8], [7, 3, 8]], dtype=float)


@pytest.fixture
def expected_co_b() -> np.ndarray:
  return np.array([[5, 3, 4], [3, 4, 3], [4, 3, 5]], dtype=float)


@pytest.fixture
def expected_co_n() -> np.ndarray:
  return np.array([
      [1.0180556, 0.5088889, 0.5230556],
      [0.5088889, 1.1655556, 0.4255556],
      [0.5230556, 0.4255556, 0.9013889],
  ])


@pytest.fixture
def expected_co_N() -> np.ndarray:
  return np.array([
      [0.0, 0.987013, 1.1623377],
      [0.987013, 0.0, 0.8506494],
      [1.1623377, 0.8506494, 0.0],
  ])


def make_random_network(
    seed: int,
    *,
    max_works: int = 50,
    max_categories: int = 10,
    max_weight: int = 9,
    min_deg: int = 1,
    binary: bool = False,
) -> TwoModeNetwork:
  """A random network with integer weights; deterministic in `seed`."""
  rng = np.random.default_rng(seed)
  n_categories = int(rng.integers(max(2, min_deg), max_categories + 1))
  n_works = int(rng.integers(0, max_works + 1))
  labels = [f"c{i}" for i in range(1, n_categories + 1)]
  works = []
  for i in range(n_works):
    deg = int(rng.integers(min_deg, n_categories + 1))
    chosen = np.sort(rng.choice(n_categories, size=deg, replace=False))
    if binary:
      weights = {labels[c]: 1.0 for c in chosen}
    else:
      values = rng.integers(1, max_weight + 1, size=deg)
      weights = {labels[c]: float(v) for c, v in zip(chosen, values)}
    works.append(WorkRecord(work_id=f"w{i + 1}", weights=weights))
  return TwoModeNetwork.from_labels(labels, works)


@pytest.fixture
def random_network() -> Callable[..., TwoModeNetwork]:
  """Factory of seeded random networks."""
  return make_random_network
