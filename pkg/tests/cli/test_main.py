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

"""Tests for the bipro command line."""

import json

import numpy as np
from pydantic import ValidationError
import pytest

from bipro.bench import CorpusSpec
from bipro.bench import generate
from bipro.cli import build_parser
from bipro.cli import CliConfig
from bipro.cli import Command
from bipro.cli import main
from bipro.formats import InputFormat
from bipro.formats import MatrixFormat
from bipro.formats import read_matrix
from bipro.projection import ProjectionKind


@pytest.fixture
def works_file(tmp_path, example_works_text):
  path = tmp_path / "works.tsv"
  path.write_text(example_works_text, encoding="utf-8")
  return path


@pytest.fixture
def pajek_file(tmp_path, example_pajek_text):
  path = tmp_path / "example.net"
  path.write_text(example_pajek_text, encoding="utf-8")
  return path


class TestProject:
  """Tests for `bipro project`."""

  def test_works_stream(self, works_file, tmp_path, expected_co_c):
    out = tmp_path / "out"

    code = main(["project", "--input", str(works_file), "--out-dir", str(out)])

    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == [
        "authors_counting.csv",
        "standard_fractional.csv",
        "strict_fractional.csv",
        "summary.json",
        "works_counting.csv",
    ]
    co_c = read_matrix(
        (out / "authors_counting.csv").read_text(encoding="utf-8"),
        MatrixFormat.CSV,
        kind=ProjectionKind.AUTHORS_COUNTING,
    )
    # Labels come in first-seen order c2, c3, c1.
    order = [co_c.labels.index(label) for label in ("c1", "c2", "c3")]
    np.testing.assert_array_equal(
        co_c.to_dense()[np.ix_(order, order)], expected_co_c
    )

  def test_summary(self, works_file, tmp_path):
    out = tmp_path / "out"

    main(["project", "--input", str(works_file), "--out-dir", str(out)])
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))

    assert summary["works_used"] == 6
    assert summary["works_dropped"] == 0
    assert summary["total_weight"] == 26.0
    assert summary["traces"]["authors_counting"] == 26.0
    assert summary["totals"]["strict_fractional"] == pytest.approx(6.0)
    assert summary["ingest"]["works_parsed"] == 6
    assert summary["oracle_max_deviation"] is None
    assert all(c["status"] != "fail" for c in summary["checks"]["checks"])

  def test_pajek_to_json(self, pajek_file, tmp_path, expected_co_N):
    out = tmp_path / "out"

    code = main([
        "project",
        "--input",
        str(pajek_file),
        "--out-dir",
        str(out),
        "--out-format",
        "json",
        "--kinds",
        "strict_fractional",
    ])

    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == [
        "strict_fractional.json",
        "summary.json",
    ]
    co_N = read_matrix(
        (out / "strict_fractional.json").read_text(encoding="utf-8"),
        MatrixFormat.JSON,
    )
    assert co_N.labels == ["c1", "c2", "c3"]
    np.testing.assert_allclose(co_N.to_dense(), expected_co_N, atol=1e-6)

  def test_min_deg_drops_works(self, tmp_path):
    source = tmp_path / "works.tsv"
    source.write_text("w1\ta=1\nw2\ta=1;b=2\nw3\tb=4\n", encoding="utf-8")
    out = tmp_path / "out"

    main(["project", "--input", str(source), "--out-dir", str(out)])
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))

    assert summary["works_used"] == 1
    assert summary["works_dropped"] == 2
    assert summary["dropped_sample"] == ["w1", "w3"]

  def test_min_deg_zero_keeps_single_category_works(self, tmp_path):
    source = tmp_path / "works.tsv"
    source.write_text("w1\ta=1\nw2\ta=1;b=2\n", encoding="utf-8")
    out = tmp_path / "out"

    main([
        "project",
        "--input",
        str(source),
        "--out-dir",
        str(out),
        "--min-deg",
        "0",
    ])
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))

    assert summary["works_used"] == 2
    assert summary["works_skipped_strict"] == 1

  def test_strict_error_policy(self, tmp_path):
    source = tmp_path / "works.tsv"
    source.write_text("w1\ta=1\nw2\ta=1;b=2\n", encoding="utf-8")

    code = main([
        "project",
        "--input",
        str(source),
        "--out-dir",
        str(tmp_path / "out"),
        "--strict-policy",
        "error",
    ])

    assert code == 2

  def test_author_totals_add_others(self, works_file, tmp_path):
    totals = tmp_path / "totals.tsv"
    totals.write_text("w1\t5\nw2\t3\n", encoding="utf-8")
    out = tmp_path / "out"

    main([
        "project",
        "--input",
        str(works_file),
        "--out-dir",
        str(out),
        "--author-totals",
        str(totals),
    ])
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))

    assert summary["categories"][-1] == "Others"
    assert summary["total_weight"] == 28.0

  def test_affiliations(self, tmp_path):
    network = tmp_path / "authors.net"
    network.write_text(
        "*vertices 5 2\n1 w1\n2 w2\n3 a1\n4 a2\n5 a3\n"
        "*edges\n1 3\n1 4\n2 4\n2 5\n",
        encoding="utf-8",
    )
    affiliations = tmp_path / "affiliations.tsv"
    affiliations.write_text(
        "a1\tx=1\na2\tx=0.5;y=0.5\na3\ty=1\n", encoding="utf-8"
    )
    out = tmp_path / "out"

    code = main([
        "project",
        "--input",
        str(network),
        "--affiliations",
        str(affiliations),
        "--out-dir",
        str(out),
    ])
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))

    assert code == 0
    assert summary["categories"] == ["x", "y"]
    assert summary["total_weight"] == 4.0
    assert summary["works_non_integral"] == 2

  def test_oracle_flag(self, works_file, tmp_path):
    out = tmp_path / "out"

    code = main([
        "project",
        "--input",
        str(works_file),
        "--out-dir",
        str(out),
        "--oracle",
    ])
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))

    assert code == 0
    assert summary["oracle_max_deviation"] <= 1e-9
    assert summary["checks"]["checks"][-1]["name"] == "oracle_equivalence"

  def test_missing_input(self, tmp_path):
    code = main([
        "project",
        "--input",
        str(tmp_path / "missing.tsv"),
        "--out-dir",
        str(tmp_path / "out"),
    ])

    assert code == 2

  def test_parse_error(self, tmp_path):
    source = tmp_path / "works.tsv"
    source.write_text("w1\ta=x\n", encoding="utf-8")

    code = main([
        "project",
        "--input",
        str(source),
        "--out-dir",
        str(tmp_path / "out"),
    ])

    assert code == 2

  @pytest.mark.parametrize(
      ("name", "data"),
      [
          ("works.tsv", b"w1\tc1=1;c2=1\nw2\tc\xff1=1;c2=1\n"),
          ("net.net", b"*vertices 3 1\n1 w1\n2 \"c\xff\"\n3 c2\n*edges\n1 2\n"),
      ],
  )
  def test_invalid_utf8(self, tmp_path, caplog, name, data):
    source = tmp_path / name
    source.write_bytes(data)

    code = main([
        "project",
        "--input",
        str(source),
        "--out-dir",
        str(tmp_path / "out"),
    ])

    assert code == 2
    assert "not valid UTF-8" in caplog.text
    assert str(source) in caplog.text

  def test_output_independent_of_threads(self, tmp_path):
    spec = CorpusSpec(works=3000, categories=12, max_categories=6, seed=11)
    source = tmp_path / "corpus.tsv"
    source.write_text(
        "".join(
            f"{work.work_id}\t"
            + ";".join(f"{label}={w!r}" for label, w in work.weights.items())
            + "\n"
            for work in generate(spec)
        ),
        encoding="utf-8",
    )
    runs = {}
    for name, threads in (("a", "1"), ("b", "4"), ("c", "1")):
      out = tmp_path / name
      code = main([
          "project",
          "--input",
          str(source),
          "--out-dir",
          str(out),
          "--chunk-size",
          "100",
          "--threads",
          threads,
      ])
      assert code == 0
      runs[name] = {p.name: p.read_bytes() for p in sorted(out.iterdir())}

    assert runs["a"] == runs["b"]
    assert runs["a"] == runs["c"]
    assert len(runs["a"]) == 5


class TestValidate:
  """Tests for `bipro validate`."""

  def test_example(self, pajek_file, capsys):
    code = main(["validate", "--input", str(pajek_file)])

    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0].split()[:2] == ["pass", "trace_identity:"]
    assert any(line.startswith("not_applicable") for line in lines)
    assert len(lines) == 12

  def test_writes_report(self, works_file, tmp_path):
    out = tmp_path / "out"

    code = main([
        "validate",
        "--input",
        str(works_file),
        "--out-dir",
        str(out),
        "--threads",
        "2",
        "--chunk-size",
        "2",
    ])
    report = json.loads((out / "validation.json").read_text(encoding="utf-8"))

    assert code == 0
    assert report["checks"][0]["name"] == "trace_identity"


class TestBench:
  """Tests for `bipro bench`."""

  def test_stdout(self, capsys):
    code = main([
        "bench",
        "--works",
        "200",
        "--categories-count",
        "6",
        "--seed",
        "3",
        "--oracle-sample",
        "50",
    ])

    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["works_used"] == 200
    assert report["spec"]["categories"] == 6
    assert report["oracle_passed"] is True

  def test_spec_file_with_override(self, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text('{"works": 50, "categories": 8, "seed": 1}')
    out = tmp_path / "out"

    code = main([
        "bench",
        "--bench-spec",
        str(spec),
        "--seed",
        "2",
        "--out-dir",
        str(out),
    ])
    report = json.loads((out / "bench.json").read_text(encoding="utf-8"))

    assert code == 0
    assert report["spec"]["works"] == 50
    assert report["spec"]["seed"] == 2

  def test_invalid_spec(self):
    assert main(["bench", "--min-categories", "9"]) == 2


class TestCliConfig:
  """Tests for CliConfig validation and the parser."""

  def test_infers_pajek(self, pajek_file, works_file):
    assert (
        CliConfig(command=Command.VALIDATE, input=pajek_file).resolved_format
        is InputFormat.PAJEK
    )
    assert (
        CliConfig(command=Command.VALIDATE, input=works_file).resolved_format
        is InputFormat.WORKS_TSV
    )

  def test_project_needs_out_dir(self, works_file):
    with pytest.raises(ValidationError, match="needs --out-dir"):
      CliConfig(command=Command.PROJECT, input=works_file)

  def test_affiliations_need_pajek(self, works_file):
    with pytest.raises(ValidationError, match="Pajek"):
      CliConfig(
          command=Command.VALIDATE, input=works_file, affiliations=works_file
      )

  def test_bench_needs_spec(self):
    with pytest.raises(ValidationError, match="corpus spec"):
      CliConfig(command=Command.BENCH)

  def test_raw_kind_rejected(self, works_file, tmp_path):
    with pytest.raises(ValidationError, match="not produced"):
      CliConfig(
          command=Command.PROJECT,
          input=works_file,
          out_dir=tmp_path,
          kinds=[ProjectionKind.RAW_BINARY],
      )

  def test_version(self, capsys):
    with pytest.raises(SystemExit) as excinfo:
      build_parser().parse_args(["--version"])

    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("bipro ")

  def test_unknown_kind_exits(self):
    with pytest.raises(SystemExit):
      main(["project", "--input", "x", "--out-dir", "y", "--kinds", "raw"])
