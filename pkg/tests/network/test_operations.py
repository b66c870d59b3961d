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

"""Tests for network operations."""

import math

import pytest

from bipro import AffiliationError
from bipro import BiproError
from bipro import NetworkError
from bipro import NotBinaryError
from bipro.network import add_others_category
from bipro.network import AffiliationMatrix
from bipro.network import binarize
from bipro.network import compose_affiliation
from bipro.network import degrees
from bipro.network import filter_multi_category
from bipro.network import iter_multi_category
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord


class TestDegrees:
  """Tests for degrees."""

  def test_example_degrees(self, example_network):
    report = degrees(example_network)

    assert report.total_weight == 26.0
    assert list(report.work_wdeg.values()) == [3, 3, 5, 5, 6, 4]
    assert list(report.work_deg.values()) == [2, 2, 3, 2, 3, 2]
    assert report.category_wdeg == {"c1": 9.0, "c2": 9.0, "c3": 8.0}

  def test_totals_agree(self, random_network):
    for seed in range(10):
      report = degrees(random_network(seed))

      assert math.isclose(
          sum(report.category_wdeg.values()), report.total_weight
      )
      assert math.isclose(
          sum(report.work_wdeg.values()), report.total_weight
      )


class TestBinarize:
  """Tests for binarize."""

  def test_keeps_pattern(self, example_network):
    binary = binarize(example_network)

    assert binary.is_binary
    assert binary.work("w5").weights == {"c1": 1.0, "c2": 1.0, "c3": 1.0}
    assert (
        binary.incidence().nnz == example_network.incidence().nnz
    )

  def test_binary_network_unchanged(self, example_network):
    binary = binarize(example_network)

    assert binarize(binary) is binary


class TestFilterMultiCategory:
  """Tests for filter_multi_category and iter_multi_category."""

  def test_drops_single_category_works(self):
    net = TwoModeNetwork.from_labels(
        ["a", "b"],
        [
            WorkRecord("w1", {"a": 2.0}),
            WorkRecord("w2", {"a": 1.0, "b": 1.0}),
            WorkRecord("w3"),
        ],
    )

    filtered, dropped = filter_multi_category(net, 2)

    assert filtered.work_ids == ["w2"]
    assert dropped == ["w1", "w3"]
    assert filtered.categories == net.categories

  def test_min_deg_zero_keeps_all(self, example_network):
    filtered, dropped = filter_multi_category(example_network, 0)

    assert filtered.work_ids == example_network.work_ids
    assert dropped == []

  def test_negative_min_deg(self, example_network):
    with pytest.raises(BiproError):
      filter_multi_category(example_network, -1)

  def test_streaming_form(self):
    works = [WorkRecord("w1", {"a": 1.0}), WorkRecord("w2", {"a": 1, "b": 1})]
    dropped = []

    kept = list(iter_multi_category(works, 2, on_drop=dropped.append))

    assert [w.work_id for w in kept] == ["w2"]
    assert [w.work_id for w in dropped] == ["w1"]


class TestAddOthersCategory:
  """Tests for add_others_category."""

  def test_appends_category(self, example_network):
    extended = add_others_category(
        example_network, {"w1": 2.0, "w2": 0.0}, "Others"
    )

    assert extended.labels == ["c1", "c2", "c3", "Others"]
    assert extended.work("w1").weights["Others"] == 2.0
    assert "Others" not in extended.work("w2").weights
    assert extended.work("w6").weights == {"c1": 1.0, "c3": 3.0}

  def test_existing_label(self, example_network):
    with pytest.raises(NetworkError, match="already exists"):
      add_others_category(example_network, {}, "c1")

  def test_unknown_work(self, example_network):
    with pytest.raises(NetworkError, match="unknown work"):
      add_others_category(example_network, {"w99": 1.0}, "Others")

  def test_negative_remainder(self, example_network):
    with pytest.raises(NetworkError, match="non-negative"):
      add_others_category(example_network, {"w1": -1.0}, "Others")


class TestComposeAffiliation:
  """Tests for compose_affiliation."""

  @pytest.fixture
  def works_authors(self):
    return TwoModeNetwork.from_labels(
        ["a1", "a2", "a3"],
        [
            WorkRecord("w1", {"a1": 1.0, "a2": 1.0}),
            WorkRecord("w2", {"a2": 1.0, "a3": 1.0}),
        ],
    )

  def test_single_affiliations(self, works_authors):
    ac = AffiliationMatrix.from_rows(
        {"a1": {"x": 1.0}, "a2": {"x": 1.0}, "a3": {"y": 1.0}},
        categories=["x", "y"],
    )

    wc = compose_affiliation(works_authors, ac)

    assert wc.labels == ["x", "y"]
    assert wc.work("w1").weights == {"x": 2.0}
    assert wc.work("w2").weights == {"x": 1.0, "y": 1.0}

  def test_fractional_affiliations_keep_author_count(self, works_authors):
    ac = AffiliationMatrix.from_rows(
        {
            "a1": {"x": 0.5, "y": 0.5},
            "a2": {"y": 1.0},
            "a3": {"x": 0.25, "y": 0.75},
        },
        categories=["x", "y"],
    )

    wc = compose_affiliation(works_authors, ac)

    assert wc.work("w1").weights == {"x": 0.5, "y": 1.5}
    assert wc.work("w1").wdeg == 2.0
    assert wc.work("w2").wdeg == 2.0

  def test_missing_author(self, works_authors):
    ac = AffiliationMatrix.from_rows({"a1": {"x": 1.0}, "a2": {"x": 1.0}})

    with pytest.raises(AffiliationError) as excinfo:
      compose_affiliation(works_authors, ac)

    assert excinfo.value.author == "a3"

  def test_requires_binary(self, example_network):
    ac = AffiliationMatrix.from_rows({"c1": {"x": 1.0}})

    with pytest.raises(NotBinaryError):
      compose_affiliation(example_network, ac)
