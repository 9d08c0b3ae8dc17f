# Copyright 2026 The qlock Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Fidelity uncertainty relations and quantum data locking."""

import json

from ._core import *  # noqa: F401,F403
from ._core import QlockError, run_experiment as _run_experiment

__version__ = version()  # noqa: F405


def run(config):
    """Run an experiment from a config dict; returns the report dict."""
    return json.loads(_run_experiment(json.dumps(config)))
