"""Built-in objectives and the child-process objective.

External objectives speak a line protocol: the point's coordinates are
written to the program's stdin as whitespace-separated floats on one line,
and the program prints ``r`` floats on stdout.  One process is started per
evaluation, so the program needs no loop and no state.
"""

from __future__ import annotations

import subprocess
from typing import Sequence, Tuple

from .errors import ConfigError, EvaluationError
from .vertexdb import Evaluator

BUILTIN_NAMES = ("linear", "quadratic-offcenter", "constant", "command")


def linear(x: Tuple[float, ...]) -> Tuple[float]:
    return (x[0],)


def quadratic_offcenter(x: Tuple[float, ...]) -> Tuple[float]:
    return (sum((xi - 1.0 / 3.0) * (xi - 1.0 / 3.0) for xi in x),)


class CommandObjective:
    def __init__(self, argv: Sequence[str], timeout: float = 60.0) -> None:
        self.argv = list(argv)
        self.timeout = timeout

    def __call__(self, x: Tuple[float, ...]) -> Tuple[float, ...]:
        line = " ".join(repr(c) for c in x) + "\n"
        try:
            proc = subprocess.run(self.argv, input=line, capture_output=True,
                                  text=True, timeout=self.timeout, check=False)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise EvaluationError(f"objective command failed: {exc}") from exc
        if proc.returncode != 0:
            raise EvaluationError(
                f"objective command exited with {proc.returncode}: {proc.stderr.strip()}"
            )
        try:
            return tuple(float(tok) for tok in proc.stdout.split())
        except ValueError:
            raise EvaluationError(f"objective command printed {proc.stdout!r}") from None


def build_evaluator(spec: dict) -> Evaluator:
    """Evaluator from a config entry such as ``{"name": "constant", "value": 2}``."""
    name = spec.get("name")
    if name == "linear":
        return Evaluator(linear, 1, name)
    if name == "quadratic-offcenter":
        return Evaluator(quadratic_offcenter, 1, name)
    if name == "constant":
        value = float(spec.get("value", 1.0))
        return Evaluator(lambda x: (value,), 1, name)
    if name == "command":
        argv = spec.get("argv")
        if not argv or not isinstance(argv, list):
            raise ConfigError('command evaluator needs an "argv" list')
        r = int(spec.get("r", 1))
        if r < 1:
            raise ConfigError("command evaluator needs r >= 1")
        return Evaluator(CommandObjective(argv, float(spec.get("timeout", 60.0))), r, name)
    raise ConfigError(f"unknown evaluator {name!r}; valid: {', '.join(BUILTIN_NAMES)}")
