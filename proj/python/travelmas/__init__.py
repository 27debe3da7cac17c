# Copyright 2026 The travelmas Authors
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

"""Python bindings for the travelmas planning harness."""

from ._core import (
    Sandbox,
    TravelmasError,
    count_revisits,
    evaluate,
    evaluate_plan,
    load_tasks,
    parse_plan,
    report,
    run,
    run_episode,
    serialize_plan,
)

__all__ = [
    "Sandbox",
    "TravelmasError",
    "count_revisits",
    "evaluate",
    "evaluate_plan",
    "load_tasks",
    "parse_plan",
    "report",
    "run",
    "run_episode",
    "serialize_plan",
]
