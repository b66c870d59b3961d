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

"""Tests for Pajek two-mode networks."""

import pytest

from bipro import ParseError
from bipro.formats import IngestReport
from bipro.formats import parse_pajek_two_mode
from bipro.formats import write_pajek_two_mode
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord


class TestParsePajekTwoMode:
  """Tests for parse_pajek_two_mode."""

  def test_example(self, example_network, example_pajek_text):
    report = IngestReport()

    net = parse_pajek_two_mode(example_pajek_text, report=report)

    assert net == example_network
    assert report.works_parsed == 6
    assert report.lines_read == 27

  def test_bytes_with_bom_and_crlf(self, example_network, example_pajek_text):
    text = "\ufeff" + example_pajek_text.replace("\n", "\r\n")
    data = text.encode("utf-8")

    assert parse_pajek_two_mode(data) == example_network

  def test_reversed_edges_and_default_weight(self):
    net = parse_pajek_two_mode(
        "*vertices 3 1\n1 w\n2 a\n3 b\n*arcs\n2 1\n1 3 2.5\n"
    )

    assert net.work("w").weights == {"a": 1.0, "b": 2.5}

  def test_unlabeled_vertices(self):
    net = parse_pajek_two_mode("*vertices 2 1\n*edges\n1 2\n")

    assert net.work_ids == ["1"]
    assert net.labels == ["2"]

  def test_quoted_labels_with_spaces(self):
    net = parse_pajek_two_mode(
        '*vertices 2 1\n1 "paper one"\n2 "United Kingdom"\n*edges\n1 2 3\n'
    )

    assert net.work("paper one").weights == {"United Kingdom": 3.0}

  def test_apostrophe_in_unquoted_label(self):
    net = parse_pajek_two_mode(
        "*vertices 2 1\n1 w1\n2 Cote_d'Ivoire\n*edges\n1 2 4\n"
    )

    assert net.labels == ["Cote_d'Ivoire"]
    assert net.work("w1").weights == {"Cote_d'Ivoire": 4.0}

  def test_apostrophe_inside_quotes(self):
    net = parse_pajek_two_mode(
        '*vertices 2 1\n1 "w1"\n2 "Cote d\'Ivoire"\n*edges\n1 2\n'
    )

    assert net.labels == ["Cote d'Ivoire"]

  def test_hash_is_a_label_character(self):
    net = parse_pajek_two_mode("*vertices 2 1\n1 #7\n2 a\n*edges\n1 2\n")

    assert net.work_ids == ["#7"]

  def test_invalid_utf8_names_line(self):
    data = b"*vertices 2 1\n1 w1\n2 \"c\xff\"\n*edges\n1 2\n"

    with pytest.raises(ParseError, match="not valid UTF-8") as excinfo:
      parse_pajek_two_mode(data, source_name="bad.net")

    assert excinfo.value.source == "bad.net"
    assert excinfo.value.line_number == 3

  def test_duplicate_edges_summed(self):
    report = IngestReport()

    net = parse_pajek_two_mode(
        "*vertices 2 1\n*edges\n1 2 1\n2 1 2\n", report=report
    )

    assert net.work("1").weights == {"2": 3.0}
    assert report.duplicate_pairs_summed == 1

  @pytest.mark.parametrize(
      ("text", "message"),
      [
          ("*vertices 3 1\n*edges\n2 3\n", "joins two vertices of one mode"),
          ("*vertices 3 1\n*edges\n1 4\n", "outside 1..3"),
          ("*vertices 3 1\n*edges\n1 2 0\n", "must be positive"),
          ("*vertices 3 1\n*edges\n1 2 x\n", "unparsable weight"),
          ("*vertices 3\n", "two-mode header"),
          ("*vertices 3 5\n", "within 0..3"),
          ("*edges\n1 2\n", r"before \*vertices"),
          ("1 2\n", r"data before \*vertices"),
          ("*matrix\n", "unsupported section"),
          ("% nothing\n", r"missing \*vertices"),
          ('*vertices 3 1\n1 "w\n', "No closing quotation"),
      ],
  )
  def test_malformed(self, text, message):
    with pytest.raises(ParseError, match=message):
      parse_pajek_two_mode(text, source_name="bad.net")

  def test_error_names_line(self):
    with pytest.raises(ParseError) as excinfo:
      parse_pajek_two_mode("*vertices 3 1\n*edges\n1 2\n2 3\n", source_name="x")

    assert excinfo.value.line_number == 4
    assert str(excinfo.value).startswith("x:4:")

  def test_duplicate_category_label(self):
    with pytest.raises(ParseError, match="duplicate category label"):
      parse_pajek_two_mode("*vertices 3 1\n1 w\n2 a\n3 a\n")


class TestWritePajekTwoMode:
  """Tests for write_pajek_two_mode."""

  def test_round_trip(self, example_network):
    text = write_pajek_two_mode(example_network)

    assert parse_pajek_two_mode(text) == example_network

  def test_fractional_weights_exact(self):
    net = TwoModeNetwork.from_labels(
        ['say "hi"', "b"],
        [WorkRecord("w 1", {'say "hi"': 1 / 3, "b": 0.1})],
    )

    assert parse_pajek_two_mode(write_pajek_two_mode(net)) == net

  def test_work_without_categories(self):
    net = TwoModeNetwork.from_labels(["a"], [WorkRecord("w1")])

    text = write_pajek_two_mode(net)

    assert text == '*vertices 2 1\n1 "w1"\n2 "a"\n*edges\n'
    assert parse_pajek_two_mode(text) == net
