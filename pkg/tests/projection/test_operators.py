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

"""Tests for the batch projection operators."""

import numpy as np
import pytest

from bipro import AsymmetricMatrixError
from bipro import DegenerateWorkError
from bipro import NotBinaryError
from bipro.network import binarize
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord
from bipro.projection import from_undirected
from bipro.projection import project_all_streaming
from bipro.projection import project_binary_fractional_strict
from bipro.projection import project_counting
from bipro.projection import project_raw
from bipro.projection import project_standard_fractional
from bipro.projection import project_strict_fractional
from bipro.projection import project_works_counting
from bipro.projection import ProjectionConfig
from bipro.projection import ProjectionKind
from bipro.projection import ProjectionMatrix
from bipro.projection import StrictPolicy
from bipro.projection import to_undirected_halved
from bipro.projection import UndirectedEdge
from bipro.projection import UndirectedEdgeList


def _single(weights: dict[str, float]) -> TwoModeNetwork:
  return TwoModeNetwork.from_labels(
      list(weights), [WorkRecord("w1", weights)]
  )


class TestProjectCounting:
  """Tests for project_counting."""

  def test_example(self, example_network, expected_co_c):
    m = project_counting(example_network)

    assert m.kind is ProjectionKind.AUTHORS_COUNTING
    np.testing.assert_array_equal(m.to_dense(), expected_co_c)

  def test_single_work(self):
    m = project_counting(_single({"a": 2, "b": 3}))

    np.testing.assert_array_equal(m.to_dense(), [[2, 2], [3, 3]])

  def test_binary_equals_works_counting(self, example_network):
    net = binarize(example_network)

    np.testing.assert_array_equal(
        project_counting(net).to_dense(),
        project_works_counting(net).to_dense(),
    )


class TestProjectWorksCounting:
  """Tests for project_works_counting."""

  def test_example(self, example_network, expected_co_b):
    m = project_works_counting(example_network)

    np.testing.assert_array_equal(m.to_dense(), expected_co_b)

  def test_single_work_block(self):
    m = project_works_counting(_single({"a": 4, "b": 1, "c": 2}))

    np.testing.assert_array_equal(m.to_dense(), np.ones((3, 3)))

  def test_disjoint_works(self):
    net = TwoModeNetwork.from_labels(
        ["a", "b"],
        [WorkRecord("w1", {"a": 1.0}), WorkRecord("w2", {"b": 3.0})],
    )

    np.testing.assert_array_equal(
        project_works_counting(net).to_dense(), np.eye(2)
    )


class TestProjectRaw:
  """Tests for project_raw."""

  def test_binary_collapse(self, example_network, expected_co_b):
    m = project_raw(binarize(example_network))

    assert m.kind is ProjectionKind.RAW_BINARY
    np.testing.assert_array_equal(m.to_dense(), expected_co_b)

  def test_weighted(self):
    m = project_raw(_single({"a": 2, "b": 3}))

    np.testing.assert_array_equal(m.to_dense(), [[4, 6], [6, 9]])


class TestProjectStandardFractional:
  """Tests for project_standard_fractional."""

  def test_example(self, example_network, expected_co_n):
    m = project_standard_fractional(example_network)

    np.testing.assert_allclose(m.to_dense(), expected_co_n, atol=1e-6)
    assert m.total() == pytest.approx(6.0, abs=1e-9)

  def test_single_unit_work(self):
    m = project_standard_fractional(_single({"a": 1}))

    np.testing.assert_array_equal(m.to_dense(), [[1.0]])

  def test_equal_weights(self):
    m = project_standard_fractional(_single({"a": 2, "b": 2}))

    np.testing.assert_allclose(m.to_dense(), np.full((2, 2), 0.25))


class TestProjectStrictFractional:
  """Tests for project_strict_fractional."""

  def test_example(self, example_network, expected_co_N):
    m = project_strict_fractional(example_network)

    np.testing.assert_allclose(m.to_dense(), expected_co_N, atol=1e-6)
    assert m.total() == pytest.approx(6.0, abs=1e-9)
    np.testing.assert_array_equal(m.diagonal(), 0.0)

  def test_pair_of_unit_weights(self):
    m = project_strict_fractional(_single({"a": 1, "b": 1}))

    np.testing.assert_allclose(m.to_dense(), [[0.0, 0.5], [0.5, 0.0]])
    assert m.total() == pytest.approx(1.0)

  def test_dominant_weight(self):
    m = project_strict_fractional(_single({"a": 1e8, "b": 1e-9}))

    np.testing.assert_allclose(
        m.to_dense(), [[0.0, 0.5], [0.5, 0.0]], rtol=1e-12
    )

  def test_dominant_weight_agrees_with_streaming(self):
    net = _single({"a": 1e6, "b": 1e-3, "c": 2.5})

    m = project_strict_fractional(net)
    bundle = project_all_streaming(net.works, net.categories)

    np.testing.assert_allclose(
        m.to_dense(), bundle.co_N.to_dense(), rtol=1e-12
    )
    assert m.total() == pytest.approx(1.0, rel=1e-12)

  def test_single_category_skipped(self):
    m = project_strict_fractional(_single({"a": 5}))

    np.testing.assert_array_equal(m.to_dense(), [[0.0]])

  def test_single_category_rejected(self):
    with pytest.raises(DegenerateWorkError) as excinfo:
      project_strict_fractional(_single({"a": 5}), StrictPolicy.ERROR)

    assert excinfo.value.work_id == "w1"
    assert excinfo.value.categories == 1


class TestProjectBinaryFractionalStrict:
  """Tests for project_binary_fractional_strict."""

  def test_three_authors(self):
    m = project_binary_fractional_strict(_single({"a": 1, "b": 1, "c": 1}))

    expected = np.full((3, 3), 1.0 / 6.0)
    np.fill_diagonal(expected, 0.0)
    np.testing.assert_allclose(m.to_dense(), expected)
    assert m.total() == pytest.approx(1.0)

  def test_two_authors(self):
    m = project_binary_fractional_strict(_single({"a": 1, "b": 1}))

    np.testing.assert_allclose(m.to_dense(), [[0.0, 0.5], [0.5, 0.0]])

  def test_single_author_contributes_nothing(self):
    m = project_binary_fractional_strict(_single({"a": 1}))

    np.testing.assert_array_equal(m.to_dense(), [[0.0]])

  def test_matches_weighted_form(self, example_network):
    net = binarize(example_network)

    np.testing.assert_allclose(
        project_binary_fractional_strict(net).to_dense(),
        project_strict_fractional(net).to_dense(),
        rtol=0,
        atol=1e-12,
    )

  def test_rejects_weighted(self, example_network):
    with pytest.raises(NotBinaryError):
      project_binary_fractional_strict(example_network)


class TestUndirectedHalved:
  """Tests for to_undirected_halved and from_undirected."""

  def test_example_works_counting(self, example_network):
    edges = to_undirected_halved(project_works_counting(example_network))

    assert [(e.source, e.target, e.weight) for e in edges.edges] == [
        ("c1", "c1", 5.0),
        ("c1", "c2", 6.0),
        ("c1", "c3", 8.0),
        ("c2", "c2", 4.0),
        ("c2", "c3", 6.0),
        ("c3", "c3", 5.0),
    ]
    assert edges.total() == 34.0
    assert edges.edges[0].is_loop
    assert not edges.edges[1].is_loop

  def test_zero_matrix(self):
    m = ProjectionMatrix.zeros(["a", "b"], ProjectionKind.STRICT_FRACTIONAL)

    assert to_undirected_halved(m).edges == ()

  def test_rejects_authors_counting(self, example_network):
    with pytest.raises(AsymmetricMatrixError):
      to_undirected_halved(project_counting(example_network))

  def test_rejects_asymmetric_entries(self):
    m = ProjectionMatrix(
        categories=["a", "b"],
        entries=np.array([[0.0, 1.0], [2.0, 0.0]]),
        kind=ProjectionKind.WORKS_COUNTING,
    )

    with pytest.raises(AsymmetricMatrixError):
      to_undirected_halved(m)

  @pytest.mark.parametrize("dense_threshold", [0, 512])
  def test_round_trip(self, example_network, dense_threshold):
    config = ProjectionConfig(dense_threshold=dense_threshold)
    for m in (
        project_works_counting(example_network, config=config),
        project_standard_fractional(example_network, config=config),
        project_strict_fractional(example_network, config=config),
    ):
      back = from_undirected(to_undirected_halved(m), config=config)

      assert back.kind is m.kind
      assert back.is_sparse is m.is_sparse
      np.testing.assert_allclose(back.to_dense(), m.to_dense(), atol=1e-9)

  def test_repeated_edges_are_summed(self):
    edges = UndirectedEdgeList(
        categories=ProjectionMatrix.zeros(
            ["a", "b"], ProjectionKind.WORKS_COUNTING
        ).categories,
        edges=(
            UndirectedEdge("a", "b", 2.0),
            UndirectedEdge("a", "b", 4.0),
        ),
        kind=ProjectionKind.WORKS_COUNTING,
    )

    m = from_undirected(edges)

    np.testing.assert_array_equal(m.to_dense(), [[0.0, 3.0], [3.0, 0.0]])


class TestStreamingAgreement:
  """Batch operators agree with the streaming bundle."""

  @pytest.mark.parametrize("seed", range(20))
  def test_random_networks(self, random_network, seed):
    net = random_network(seed)

    bundle = project_all_streaming(net.works, net.categories)

    np.testing.assert_array_equal(
        bundle.co_b.to_dense(), project_works_counting(net).to_dense()
    )
    np.testing.assert_array_equal(
        bundle.co_c.to_dense(), project_counting(net).to_dense()
    )
    np.testing.assert_allclose(
        bundle.co_n.to_dense(),
        project_standard_fractional(net).to_dense(),
        rtol=0,
        atol=1e-9,
    )
    np.testing.assert_allclose(
        bundle.co_N.to_dense(),
        project_strict_fractional(net).to_dense(),
        rtol=0,
        atol=1e-9,
    )
