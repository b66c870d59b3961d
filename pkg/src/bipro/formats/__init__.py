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

"""Readers and writers for networks, work streams and matrices."""

from bipro.formats._types import IngestReport
from bipro.formats._types import InputFormat
from bipro.formats._types import MatrixFormat
from bipro.formats.matrix import MatrixDocument
from bipro.formats.matrix import read_matrix
from bipro.formats.matrix import write_matrix
from bipro.formats.pajek import parse_pajek_two_mode
from bipro.formats.pajek import write_pajek_two_mode
from bipro.formats.works_stream import parse_affiliations
from bipro.formats.works_stream import parse_works_stream
from bipro.formats.works_stream import read_author_totals
from bipro.formats.works_stream import read_category_labels
from bipro.formats.works_stream import remainders_from_totals
from bipro.formats.works_stream import scan_categories
from bipro.formats.works_stream import with_others

__all__ = [
    # Types
    "IngestReport",
    "InputFormat",
    "MatrixDocument",
    "MatrixFormat",
    # Two-mode networks
    "parse_pajek_two_mode",
    "write_pajek_two_mode",
    # Line-oriented inputs
    "parse_affiliations",
    "parse_works_stream",
    "read_author_totals",
    "read_category_labels",
    "remainders_from_totals",
    "scan_categories",
    "with_others",
    # Matrices
    "read_matrix",
    "write_matrix",
]
