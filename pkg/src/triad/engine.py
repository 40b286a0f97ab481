"""The partition loop: select a cell, split it, log the step, repeat."""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from . import geometry as geo
from . import strategies as st
from .errors import ConfigError, EvaluationError, ExactOverflowError, ScriptError
from .exactnum import ExactScalar
from .geometry import Point, format_point
from .strategies import PartitionState, SplitOutcome
from .vertexdb import Evaluator

# selection rules -----------------------------------------------------------


@dataclass(frozen=True)
class LargestDiameter:
    name = "largest-diameter"


@dataclass(frozen=True)
class Fifo:
    """Oldest alive cell first (creation order), giving a breadth-first sweep."""

    name = "fifo"


@dataclass(frozen=True)
class LowerBound:
    """Lipschitz-style bound ``f1(designated) - L * max distance to a corner``."""

    lipschitz: float
    name = "lower-bound"

    def __post_init__(self) -> None:
        if not self.lipschitz > 0:
            raise ConfigError("lower-bound rule needs a positive Lipschitz constant")


@dataclass(frozen=True)
class Scripted:
    cells: Tuple[int, ...]
    name = "scripted"

    def __init__(self, cells: Sequence[int]) -> None:
        object.__setattr__(self, "cells", tuple(int(c) for c in cells))


@dataclass(frozen=True)
class RandomChoice:
    """Uniform choice among alive cells from the run's seeded generator."""

    name = "random"


SelectionRule = object
RULE_NAMES = ("largest-diameter", "fifo", "lower-bound", "scripted", "random")


def _lower_bound(state: PartitionState, cell: geo.Cell, lipschitz: float) -> float:
    if cell.designated_vertex is None:
        return -math.inf
    rec = state.db.record(cell.designated_vertex)
    x = [float(c) for c in rec.point]
    reach = 0.0
    for corner in geo.corners(cell):
        reach = max(reach, math.dist(x, [float(c) for c in corner]))
    return rec.values[0] - lipschitz * reach


class Selector:
    """Stateful wrapper applying one rule across a run."""

    def __init__(self, rule, seed: int = 0) -> None:
        self.rule = rule
        self.rng = random.Random(seed)
        self._bounds: dict[int, float] = {}

    def __call__(self, state: PartitionState) -> int:
        return select(state, self.rule, rng=self.rng, cache=self._bounds)


def select(state: PartitionState, rule, rng: Optional[random.Random] = None,
           cache: Optional[dict] = None) -> int:
    """Id of the alive cell ``rule`` picks next."""
    if not state.cells:
        raise ValueError("no alive cells")
    if isinstance(rule, Scripted):
        if state.splits >= len(rule.cells):
            raise ScriptError(
                f"script exhausted after {len(rule.cells)} selections"
            )
        cid = rule.cells[state.splits]
        if cid not in state.cells:
            raise ScriptError(f"scripted cell {cid} is not alive at split {state.splits + 1}")
        return cid
    cells = state.alive_cells()
    if isinstance(rule, LargestDiameter):
        # max diameter, ties to the smallest id (cells are id-sorted)
        best = cells[0]
        best_d = best.squared_diameter()
        for c in cells[1:]:
            d = c.squared_diameter()
            if d > best_d:
                best, best_d = c, d
        return best.id
    if isinstance(rule, Fifo):
        return min(cells, key=lambda c: c.born).id
    if isinstance(rule, LowerBound):
        cache = {} if cache is None else cache
        best_id, best_val = None, math.inf
        for c in cells:
            val = cache.get(c.born)
            if val is None:
                val = cache[c.born] = _lower_bound(state, c, rule.lipschitz)
            if val < best_val or best_id is None:
                best_id, best_val = c.id, val
        return best_id
    if isinstance(rule, RandomChoice):
        rng = rng if rng is not None else random.Random(0)
        return cells[rng.randrange(len(cells))].id
    raise ConfigError(f"unknown selection rule {rule!r}")


def rule_from_dict(spec: dict):
    if not isinstance(spec, dict) or "rule" not in spec:
        raise ConfigError('selection must be an object with a "rule" field')
    name = spec["rule"]
    if name == "largest-diameter":
        return LargestDiameter()
    if name == "fifo":
        return Fifo()
    if name == "random":
        return RandomChoice()
    if name == "lower-bound":
        try:
            return LowerBound(float(spec["lipschitz"]))
        except (KeyError, TypeError, ValueError):
            raise ConfigError("lower-bound rule needs a numeric \"lipschitz\"") from None
    if name == "scripted":
        cells = spec.get("cells")
        if not isinstance(cells, list):
            raise ConfigError('scripted rule needs a "cells" list')
        return Scripted(cells)
    raise ConfigError(f"unknown selection rule {name!r}; valid: {', '.join(RULE_NAMES)}")


def rule_to_dict(rule) -> dict:
    out = {"rule": rule.name}
    if isinstance(rule, LowerBound):
        out["lipschitz"] = rule.lipschitz
    elif isinstance(rule, Scripted):
        out["cells"] = list(rule.cells)
    return out


# configuration -------------------------------------------------------------

STOP_KEYS = ("max_splits", "max_evaluations", "min_diameter")


@dataclass
class RunConfig:
    domain: Tuple[Tuple[ExactScalar, ExactScalar], ...]
    strategy: str
    selection: object
    stop: dict
    seed: int = 0
    evaluator: dict = field(default_factory=lambda: {"name": "linear"})

    def __post_init__(self) -> None:
        if self.strategy not in st.STRATEGY_NAMES:
            raise ConfigError(
                f"unknown strategy {self.strategy!r}; valid: {', '.join(st.STRATEGY_NAMES)}"
            )
        active = [k for k in STOP_KEYS if self.stop.get(k) is not None]
        unknown = set(self.stop) - set(STOP_KEYS)
        if unknown:
            raise ConfigError(f"unknown stop criteria {sorted(unknown)}")
        if len(active) != 1:
            raise ConfigError(
                f"exactly one stop criterion required, got {active or 'none'}"
            )
        key = active[0]
        value = self.stop[key]
        if key == "min_diameter":
            if not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError("min_diameter must be a positive number")
        elif not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ConfigError(f"{key} must be a non-negative integer")
        n = len(self.domain)
        if not 1 <= n <= geo.MAX_DIMENSION:
            raise ConfigError(f"dimension must be in 1..{geo.MAX_DIMENSION}, got {n}")

    @property
    def dimension(self) -> int:
        return len(self.domain)

    @property
    def stop_rule(self) -> Tuple[str, float]:
        key = next(k for k in STOP_KEYS if self.stop.get(k) is not None)
        return key, self.stop[key]

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        try:
            if "domain" in data:
                domain = tuple(
                    (ExactScalar.parse(lo), ExactScalar.parse(hi)) for lo, hi in data["domain"]
                )
            else:
                domain = tuple((ExactScalar(0), ExactScalar(1)) for _ in range(int(data["N"])))
        except KeyError:
            raise ConfigError('config needs "domain" or "N"') from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad domain: {exc}") from None
        if "N" in data and int(data["N"]) != len(domain):
            raise ConfigError(f"N={data['N']} disagrees with a {len(domain)}-D domain")
        for key in ("strategy", "selection", "stop"):
            if key not in data:
                raise ConfigError(f"config is missing {key!r}")
        if not isinstance(data["stop"], dict):
            raise ConfigError("stop must be an object")
        evaluator = data.get("evaluator", {"name": "linear"})
        if isinstance(evaluator, str):
            evaluator = {"name": evaluator}
        return cls(
            domain=domain,
            strategy=data["strategy"],
            selection=rule_from_dict(data["selection"]),
            stop=dict(data["stop"]),
            seed=int(data.get("seed", 0)),
            evaluator=evaluator,
        )

    def to_dict(self) -> dict:
        return {
            "N": self.dimension,
            "domain": [[str(lo), str(hi)] for lo, hi in self.domain],
            "strategy": self.strategy,
            "selection": rule_to_dict(self.selection),
            "stop": dict(self.stop),
            "seed": self.seed,
            "evaluator": dict(self.evaluator),
        }


# trace ---------------------------------------------------------------------


@dataclass(frozen=True)
class TraceEvent:
    k: int
    cell: int
    strategy: str
    dim: Optional[int]
    candidates: Tuple[Tuple[Point, bool], ...]
    children: Tuple[int, ...]
    evals: int
    cells: int
    domain: Optional[Tuple[Tuple[ExactScalar, ExactScalar], ...]] = None

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "cell": self.cell,
            "strategy": self.strategy,
            "dim": self.dim,
            "candidates": [{"point": format_point(p), "hit": hit} for p, hit in self.candidates],
            "children": list(self.children),
            "evals": self.evals,
            "cells": self.cells,
        }
        if self.domain is not None:
            out["domain"] = [[str(lo), str(hi)] for lo, hi in self.domain]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "TraceEvent":
        domain = d.get("domain")
        return cls(
            k=d["k"],
            cell=d["cell"],
            strategy=d["strategy"],
            dim=d["dim"],
            candidates=tuple((geo.parse_point(c["point"]), c["hit"]) for c in d["candidates"]),
            children=tuple(d["children"]),
            evals=d["evals"],
            cells=d["cells"],
            domain=None if domain is None else tuple(
                (ExactScalar.parse(lo), ExactScalar.parse(hi)) for lo, hi in domain
            ),
        )


def dump_trace(events: Sequence[TraceEvent]) -> str:
    return "".join(e.to_json() + "\n" for e in events)


def load_trace(text: str) -> list[TraceEvent]:
    return [TraceEvent.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


@dataclass
class RunStats:
    strategy: str
    N: int
    splits: int = 0
    evaluations: int = 0
    hits: int = 0
    cells: int = 1
    db_size: int = 0
    prop11_histogram: Optional[dict] = None
    aborted: bool = False
    error: Optional[str] = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "strategy": self.strategy,
            "N": self.N,
            "splits": self.splits,
            "evaluations": self.evaluations,
            "hits": self.hits,
            "cells": self.cells,
            "db_size": self.db_size,
            "aborted": self.aborted,
            "wall_time": self.wall_time,
        }
        if self.prop11_histogram is not None:
            out["prop11_histogram"] = {str(k): v for k, v in sorted(self.prop11_histogram.items())}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class RunResult:
    """Everything a run produced, including the final partition state."""

    trace: list
    stats: RunStats
    state: PartitionState
    prop11: list = field(default_factory=list)

    def __iter__(self):
        # allows ``trace, stats = run(...)``
        return iter((self.trace, self.stats))


def _event(state, k, cell_id, dim, candidates, children, domain=None) -> TraceEvent:
    return TraceEvent(
        k=k,
        cell=cell_id,
        strategy=state.strategy,
        dim=dim,
        candidates=tuple((p, hit) for p, _, hit in candidates),
        children=tuple(children),
        evals=state.db.evaluations,
        cells=state.cell_count,
        domain=domain,
    )


def _check_cell_count(state: PartitionState) -> None:
    per_split = (2 ** state.dimension - 1) if state.strategy == st.S2 else 2
    expected = 1 + per_split * state.splits
    if state.cell_count != expected:
        raise AssertionError(f"cell-count law broken: {state.cell_count} != {expected}")


def run(config: RunConfig, evaluator: Evaluator, audit: bool = True) -> RunResult:
    """Run the partition loop until the configured stop criterion fires.

    ``k = 1`` is the root initialisation; every later ``k`` is one split.
    An :class:`EvaluationError` or a coordinate overflow ends the run early; the partial trace is
    kept and ``stats.aborted`` is set.  With ``audit`` on, s2 splits are
    checked against the two-known-corner law as they happen.
    """
    started = time.perf_counter()
    state = st.new_state(config.strategy, config.domain, evaluator)
    stats = RunStats(strategy=config.strategy, N=config.dimension)
    selector = Selector(config.selection, config.seed)
    trace: list[TraceEvent] = []
    prop11: list[Tuple[int, int]] = []
    do_audit = audit and config.strategy == st.S2 and config.dimension <= geo.MAX_AUDIT_DIMENSION
    if do_audit:
        stats.prop11_histogram = {}
    stop_key, stop_value = config.stop_rule

    try:
        state.iteration = 1
        init = st.initialize(state)
        trace.append(_event(state, 1, state.root.id, None, init, [state.root.id],
                            domain=config.domain))
        while True:
            if stop_key == "max_splits" and state.splits >= stop_value:
                break
            if stop_key == "max_evaluations" and state.db.evaluations >= stop_value:
                break
            cid = selector(state)
            cell = state.cell(cid)
            if stop_key == "min_diameter" and math.sqrt(float(cell.squared_diameter())) < stop_value:
                break
            before = st.known_corner_count(state, cell) if do_audit else None
            state.iteration += 1
            outcome: SplitOutcome = st.split(state, cell)
            _check_cell_count(state)
            if do_audit:
                redundant = st.prop11_audit(state, outcome)
                prop11.append((before, redundant))
                stats.prop11_histogram[redundant] = stats.prop11_histogram.get(redundant, 0) + 1
            trace.append(_event(state, state.iteration, cid, outcome.split_dim,
                                outcome.candidates, [c for c, _ in outcome.children]))
    except (EvaluationError, ExactOverflowError) as exc:
        stats.aborted = True
        stats.error = str(exc)

    stats.splits = state.splits
    stats.evaluations = state.db.evaluations
    stats.hits = state.db.hits
    stats.cells = state.cell_count
    stats.db_size = len(state.db)
    stats.wall_time = time.perf_counter() - started
    return RunResult(trace=trace, stats=stats, state=state, prop11=prop11)


def minimize(config: RunConfig, evaluator: Evaluator) -> Tuple[Tuple[float, ...], float]:
    """Run, then return the stored trial point with the smallest first component."""
    result = run(config, evaluator, audit=False)
    if result.stats.aborted:
        raise EvaluationError(f"run aborted: {result.stats.error}")
    if not len(result.state.db):
        raise ValueError("no trial point was evaluated")
    best = min(result.state.db, key=lambda rec: (rec.values[0], rec.id))
    return tuple(float(c) for c in best.point), best.values[0]
