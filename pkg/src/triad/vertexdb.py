"""Store of trial points keyed by their exact coordinates.

Each distinct point is evaluated once; every later request for the same
point is answered from the store and counted as a hit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Tuple

from .errors import EvaluationError, VertexLookupError
from .geometry import Point, format_point


@dataclass(frozen=True)
class VertexRecord:
    id: int
    point: Point
    values: Tuple[float, ...]
    eval_iteration: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "id": self.id,
                "point": format_point(self.point),
                "values": list(self.values),
                "eval_iteration": self.eval_iteration,
            },
            separators=(",", ":"),
        )


class Evaluator:
    """Wrap a callable taking a tuple of floats and returning ``r`` reals.

    The callable sees only the float image of a point; exactness matters
    for identity in the store, not for the objective.
    """

    def __init__(self, fn: Callable[[Tuple[float, ...]], Sequence[float]], r: int = 1,
                 name: str = "custom") -> None:
        if r < 1:
            raise ValueError("an evaluator must return at least one component")
        self.fn = fn
        self.r = r
        self.name = name
        self.calls = 0

    def __call__(self, p: Point) -> Tuple[float, ...]:
        x = tuple(float(c) for c in p)
        self.calls += 1
        try:
            raw = self.fn(x)
        except EvaluationError:
            raise
        except Exception as exc:
            raise EvaluationError(f"objective failed at {x}: {exc}") from exc
        if isinstance(raw, (int, float)):
            raw = (raw,)
        try:
            values = tuple(float(y) for y in raw)
        except (TypeError, ValueError) as exc:
            raise EvaluationError(f"objective returned non-numeric output at {x}") from exc
        if len(values) != self.r:
            raise EvaluationError(
                f"objective returned {len(values)} components at {x}, expected {self.r}"
            )
        if not all(math.isfinite(y) for y in values):
            raise EvaluationError(f"objective returned non-finite values {values} at {x}")
        return values


class VertexDB:
    def __init__(self) -> None:
        self._index: dict[Point, int] = {}
        self._records: list[VertexRecord] = []
        self.hits = 0

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[VertexRecord]:
        return iter(self._records)

    def __contains__(self, p: Point) -> bool:
        return p in self._index

    @property
    def evaluations(self) -> int:
        return len(self._records)

    def lookup(self, p: Point) -> Optional[int]:
        return self._index.get(p)

    def ensure(self, p: Point, ev: Evaluator, iteration: int = 0) -> Tuple[int, bool]:
        """Return ``(vertex id, was_hit)``, evaluating ``p`` only if it is new."""
        vid = self._index.get(p)
        if vid is not None:
            self.hits += 1
            return vid, True
        values = ev(p)
        vid = len(self._records) + 1
        self._records.append(VertexRecord(vid, p, values, iteration))
        self._index[p] = vid
        return vid, False

    def record(self, vid: int) -> VertexRecord:
        if not isinstance(vid, int) or not 1 <= vid <= len(self._records):
            raise VertexLookupError(f"no vertex with id {vid!r}")
        return self._records[vid - 1]

    def value(self, vid: int) -> Tuple[float, ...]:
        return self.record(vid).values

    def point(self, vid: int) -> Point:
        return self.record(vid).point

    def stats(self) -> dict:
        return {"size": len(self._records), "hits": self.hits,
                "evaluations": self.evaluations}

    def dump(self) -> str:
        return "".join(rec.to_json() + "\n" for rec in self._records)
