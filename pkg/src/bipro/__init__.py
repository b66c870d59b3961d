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

"""bipro: projections of weighted two-mode networks.

Given works linked to categories (for example countries) with the number
of authors from each category, bipro computes in one streaming pass:

Projections:
    - Co_b: works counting, bin(WC)^T . bin(WC)
    - Co_C: authors counting, WC^T . bin(WC) (not symmetric)
    - Co_n: standard fractional counting, n(WC)^T . n(WC)
    - Co_N: strict fractional counting, D0(WC^T . d_N . WC)

Packages:
    - bipro.network: two-mode networks, degrees, filtering, composition
    - bipro.projection: streaming accumulator and batch operators
    - bipro.formats: Pajek, works-stream and matrix files
    - bipro.bench: synthetic corpora and the benchmark
    - bipro.oracle: dense reference products used for verification

Example:
    ```python
    from bipro import TwoModeNetwork, WorkRecord, project_all_streaming

    net = TwoModeNetwork.from_labels(
        ["c1", "c2", "c3"],
        [
            WorkRecord("w1", {"c2": 2, "c3": 1}),
            WorkRecord("w2", {"c1": 2, "c2": 1}),
        ],
    )
    bundle = project_all_streaming(net.works, net.categories)
    print(bundle.co_N.total())  # 2.0
    ```
"""

from bipro._errors import AffiliationError
from bipro._errors import AsymmetricMatrixError
from bipro._errors import BiproError
from bipro._errors import DegenerateWorkError
from bipro._errors import DimensionMismatchError
from bipro._errors import NetworkError
from bipro._errors import NotBinaryError
from bipro._errors import ParseError
from bipro._errors import UnknownCategoryError
from bipro._version import __version__
# Network model
from bipro.network import AffiliationMatrix
from bipro.network import CategoryId
from bipro.network import DegreeReport
from bipro.network import TwoModeNetwork
from bipro.network import WorkRecord
from bipro.network import add_others_category
from bipro.network import binarize
from bipro.network import compose_affiliation
from bipro.network import degrees
from bipro.network import filter_multi_category
# Projections
from bipro.projection import ProjectionBundle
from bipro.projection import ProjectionConfig
from bipro.projection import ProjectionKind
from bipro.projection import ProjectionMatrix
from bipro.projection import StrictPolicy
from bipro.projection import merge_bundles
from bipro.projection import project_all_streaming
from bipro.projection import project_counting
from bipro.projection import project_sharded
from bipro.projection import project_standard_fractional
from bipro.projection import project_strict_fractional
from bipro.projection import project_works_counting
from bipro.projection import run_invariant_checks
from bipro.projection import to_undirected_halved
# Formats
from bipro.formats import MatrixFormat
from bipro.formats import parse_pajek_two_mode
from bipro.formats import parse_works_stream
from bipro.formats import write_matrix
# Benchmark
from bipro.bench import CorpusSpec
from bipro.bench import generate

__all__ = [
    # Version
    "__version__",
    # Errors
    "AffiliationError",
    "AsymmetricMatrixError",
    "BiproError",
    "DegenerateWorkError",
    "DimensionMismatchError",
    "NetworkError",
    "NotBinaryError",
    "ParseError",
    "UnknownCategoryError",
    # Network model
    "AffiliationMatrix",
    "CategoryId",
    "DegreeReport",
    "TwoModeNetwork",
    "WorkRecord",
    "add_others_category",
    "binarize",
    "compose_affiliation",
    "degrees",
    "filter_multi_category",
    # Projections
    "ProjectionBundle",
    "ProjectionConfig",
    "ProjectionKind",
    "ProjectionMatrix",
    "StrictPolicy",
    "merge_bundles",
    "project_all_streaming",
    "project_counting",
    "project_sharded",
    "project_standard_fractional",
    "project_strict_fractional",
    "project_works_counting",
    "run_invariant_checks",
    "to_undirected_halved",
    # Formats
    "MatrixFormat",
    "parse_pajek_two_mode",
    "parse_works_stream",
    "write_matrix",
    # Benchmark
    "CorpusSpec",
    "generate",
]
