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

"""Command-line interface of bipro."""

from bipro.cli._config import CliConfig
from bipro.cli._config import Command
from bipro.cli.main import build_parser
from bipro.cli.main import cmd_bench
from bipro.cli.main import cmd_project
from bipro.cli.main import cmd_validate
from bipro.cli.main import main
from bipro.cli.main import project_input
from bipro.cli.main import ProjectionSummary

__all__ = [
    # Config
    "CliConfig",
    "Command",
    # Commands
    "build_parser",
    "cmd_bench",
    "cmd_project",
    "cmd_validate",
    "main",
    "project_input",
    "ProjectionSummary",
]
