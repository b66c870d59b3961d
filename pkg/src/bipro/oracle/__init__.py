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

"""Dense matrix-product reference for checking the projection code."""

from bipro.oracle.dense import binary
from bipro.oracle.dense import compare_bundle
from bipro.oracle.dense import contribution_matrix
from bipro.oracle.dense import DenseMatrix
from bipro.oracle.dense import diagonal_normalizer
from bipro.oracle.dense import DiagonalMatrix
from bipro.oracle.dense import incidence
from bipro.oracle.dense import matmul
from bipro.oracle.dense import oracle_projection

__all__ = [
    # Types
    "DenseMatrix",
    "DiagonalMatrix",
    # Operations
    "binary",
    "compare_bundle",
    "contribution_matrix",
    "diagonal_normalizer",
    "incidence",
    "matmul",
    "oracle_projection",
]
