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

"""Two-mode network model: types, degrees, filtering and composition."""

from bipro.network._types import AffiliationMatrix
from bipro.network._types import CategoryId
from bipro.network._types import DegreeReport
from bipro.network._types import TwoModeNetwork
from bipro.network._types import WorkRecord
from bipro.network.operations import add_others_category
from bipro.network.operations import binarize
from bipro.network.operations import compose_affiliation
from bipro.network.operations import degrees
from bipro.network.operations import filter_multi_category
from bipro.network.operations import iter_multi_category

__all__ = [
    # Types
    "AffiliationMatrix",
    "CategoryId",
    "DegreeReport",
    "TwoModeNetwork",
    "WorkRecord",
    # Operations
    "add_others_category",
    "binarize",
    "compose_affiliation",
    "degrees",
    "filter_multi_category",
    "iter_multi_category",
]
