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

"""Line handling and number formatting shared by the readers and writers."""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Iterator
import math
from typing import Union

from bipro._errors import ParseError

TextSource = Union[str, bytes, Iterable[str], Iterable[bytes]]


def _split_document(document: str | bytes) -> list[str] | list[bytes]:
  """Split on LF only; a final terminator does not open an empty line."""
  if isinstance(document, bytes):
    parts = document.split(b"\n")
    if parts and not parts[-1]:
      parts.pop()
    return parts
  lines = document.split("\n")
  if lines and not lines[-1]:
    lines.pop()
  return lines


def _decode(raw: str | bytes, source_name: str, line_number: int) -> str:
  if isinstance(raw, str):
    return raw
  try:
    return raw.decode("utf-8")
  except UnicodeDecodeError as e:
    raise ParseError(
        source_name,
        line_number,
        f"not valid UTF-8 at byte {e.start}: {e.reason}",
    ) from None


def iter_lines(
    source: TextSource, source_name: str = "<input>"
) -> Iterator[tuple[int, str]]:
  """Yield (1-based line number, line without its terminator).

  Accepts a whole document as str or bytes, or any iterable of lines such
  as an open file. Bytes are decoded as UTF-8 line by line, so a decoding
  error names its line. A leading BOM is dropped and both LF and CRLF
  endings are accepted; no other character ends a line.

  Raises:
      ParseError: If the input is not valid UTF-8.
  """
  if isinstance(source, (str, bytes)):
    source = _split_document(source)
  number = 0
  try:
    for number, raw in enumerate(source, start=1):
      line = _decode(raw, source_name, number)
      if number == 1:
        line = line.lstrip("\ufeff")
      line = line.removesuffix("\n").removesuffix("\r")
      yield number, line
  except UnicodeDecodeError as e:
    # Text-mode files decode in blocks, so the line number is a lower bound.
    raise ParseError(
        source_name, number + 1, f"not valid UTF-8: {e.reason}"
    ) from None


def parse_float(text: str, source: str, line_number: int, what: str) -> float:
  """Parse a finite float or raise ParseError naming the line."""
  try:
    value = float(text)
  except ValueError:
    raise ParseError(
        source, line_number, f"unparsable {what} {text!r}"
    ) from None
  if not math.isfinite(value):
    raise ParseError(source, line_number, f"non-finite {what} {text!r}")
  return value


def parse_int(text: str, source: str, line_number: int, what: str) -> int:
  try:
    return int(text)
  except ValueError:
    raise ParseError(
        source, line_number, f"unparsable {what} {text!r}"
    ) from None


def format_value(value: float) -> str:
  """Nine significant digits, integral values without a decimal point."""
  return format(value + 0.0, ".9g")


def format_exact(value: float) -> str:
  """Shortest text that parses back to the same float."""
  if value.is_integer() and abs(value) < 2**53:
    return str(int(value))
  return repr(value)


def quote_label(label: str) -> str:
  """Double-quote a vertex label, escaping backslashes and quotes."""
  escaped = label.replace("\\", "\\\\").replace('"', '\\"')
  return f'"{escaped}"'
