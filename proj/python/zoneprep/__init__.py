# Copyright 2026 The zoneprep Authors
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

"""Minimal-stage scheduling of state preparation circuits on zoned neutral
atom architectures.

Architectures, circuits and schedules are plain dicts in the same JSON
layout the command-line tool reads and writes.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from . import _zoneprep as _native
from ._zoneprep import FormatError, InvariantError, NoScheduleError, SolverError

__all__ = [
    "FormatError",
    "InvariantError",
    "NoScheduleError",
    "SolverError",
    "builtin_code",
    "builtin_code_names",
    "compile",
    "estimate_asp",
    "preparation_circuit",
    "preset",
    "preset_names",
    "validate",
    "verify_preparation",
]

Json = dict[str, Any]


def builtin_code_names() -> list[str]:
    return list(_native.builtin_code_names())


def builtin_code(name: str) -> Json:
    return json.loads(_native.builtin_code(name))


def preparation_circuit(code: str | Json) -> Json:
    """CZ circuit preparing a codespace state of a builtin or given code."""
    if isinstance(code, str):
        code = builtin_code(code)
    return json.loads(_native.preparation_circuit(json.dumps(code)))


def verify_preparation(code: str | Json, circuit: Json) -> bool:
    """State-vector check that the circuit prepares a codespace state."""
    if isinstance(code, str):
        code = builtin_code(code)
    return _native.verify_preparation(json.dumps(code), json.dumps(circuit))


def preset_names() -> list[str]:
    return list(_native.preset_names())


def preset(name: str) -> tuple[Json, str]:
    """Architecture dict and idle-qubit rule of a named layout."""
    arch, layout = _native.preset(name)
    return json.loads(arch), layout


def compile(
    circuit: str | Json,
    arch: str | Json = "no-shielding",
    layout: Optional[str] = None,
    *,
    timeout: float = 300.0,
    s_start: Optional[int] = None,
    s_cap: Optional[int] = None,
    refine: float = 0.0,
    solver: str = "",
) -> Json:
    """Finds a schedule with the fewest stages.

    ``circuit`` is a builtin code name or a circuit dict, ``arch`` a preset
    name or an architecture dict. Returns the schedule, its minimality
    certificate, the fidelity report and the validator verdict.
    """
    if isinstance(circuit, str):
        circuit = preparation_circuit(circuit)
    if isinstance(arch, str):
        arch, default_layout = preset(arch)
        layout = layout or default_layout
    result = _native.compile(
        json.dumps(arch),
        json.dumps(circuit),
        layout or "shielded",
        timeout,
        s_start,
        s_cap,
        refine,
        solver,
    )
    return json.loads(result)


def validate(arch: Json, circuit: Json, schedule: Json, layout: str = "shielded") -> Json:
    """Rule-by-rule check of a schedule; ``ok`` is true when nothing fails."""
    return json.loads(
        _native.validate(json.dumps(arch), json.dumps(circuit), layout, json.dumps(schedule))
    )


def estimate_asp(arch: Json, circuit: Json, schedule: Json) -> Json:
    """Timeline and approximate success probability of a schedule."""
    return json.loads(
        _native.estimate_asp(json.dumps(arch), json.dumps(circuit), json.dumps(schedule))
    )
