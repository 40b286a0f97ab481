"""Partition strategies operating on a shared :class:`PartitionState`.

Four strategies are available under their config names:

``s3-onepoint``
    Trisection along the longest edge; one evaluation at ``u`` per split,
    answered from the vertex store when ``u`` is already known.
``diagonal``
    Same geometry; both ``u`` and ``v`` are resolved, so every cell owns two
    evaluated opposite corners.
``s1-center``
    Trisection with evaluation at the centre of each new cell.  The middle
    child's centre is the parent's and is reused.
``s2-hyperplane``
    The centre is evaluated and the cell is cut into 2**N orthants through it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

from . import geometry as geo
from .geometry import Cell, Point
from .vertexdb import Evaluator, VertexDB

S1 = "s1-center"
S2 = "s2-hyperplane"
S3 = "s3-onepoint"
DIAGONAL = "diagonal"
STRATEGY_NAMES = (S1, S2, S3, DIAGONAL)
TRISECTION_STRATEGIES = (S1, S3, DIAGONAL)


@dataclass(frozen=True)
class SplitOutcome:
    parent_id: int
    split_dim: Optional[int]
    candidates: Tuple[Tuple[Point, int, bool], ...]
    children: Tuple[Tuple[int, Optional[int]], ...]
    evals_this_split: int
    hits_this_split: int


@dataclass
class PartitionState:
    strategy: str
    evaluator: Evaluator
    root: Cell
    cells: dict = field(default_factory=dict)
    db: VertexDB = field(default_factory=VertexDB)
    iteration: int = 0
    splits: int = 0
    _born: int = 0

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGY_NAMES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if not self.cells:
            self._register(self.root)

    @property
    def dimension(self) -> int:
        return self.root.dimension

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def next_id(self) -> int:
        # ids are 1..L(k) with no gaps: middle/all-low children inherit
        return len(self.cells) + 1

    def alive_cells(self) -> list[Cell]:
        return [self.cells[cid] for cid in sorted(self.cells)]

    def cell(self, cid: int) -> Cell:
        return self.cells[cid]

    def _register(self, cell: Cell) -> None:
        self._born += 1
        cell.born = self._born
        self.cells[cell.id] = cell

    def install(self, children: Sequence[Cell]) -> None:
        for c in children:
            self._register(c)


def new_state(strategy: str, domain, evaluator: Evaluator) -> PartitionState:
    return PartitionState(strategy=strategy, evaluator=evaluator, root=geo.root_cell(domain))


def initialize(state: PartitionState) -> Tuple[Tuple[Point, int, bool], ...]:
    """Evaluate the root's starting point(s); returns the candidates resolved."""
    root = state.root
    db, ev, k = state.db, state.evaluator, state.iteration
    if state.strategy == S3:
        vid, hit = db.ensure(root.a, ev, k)
        root.designated_vertex = vid
        return ((root.a, vid, hit),)
    if state.strategy == DIAGONAL:
        va, ha = db.ensure(root.a, ev, k)
        vb, hb = db.ensure(root.b, ev, k)
        root.designated_vertex, root.second_vertex = va, vb
        return ((root.a, va, ha), (root.b, vb, hb))
    if state.strategy == S1:
        c = geo.center(root)
        vid, hit = db.ensure(c, ev, k)
        root.designated_vertex = vid
        return ((c, vid, hit),)
    return ()


def split_geometry(strategy: str, cell: Cell, next_id: int):
    """Children of ``cell`` under ``strategy``, with no evaluation.

    Returns ``(dim, children, extra)`` where ``extra`` is ``(u, v)`` for the
    oriented trisection and the split point for s2.  Shared by the engine
    and by the SVG replay.
    """
    if strategy in (S3, DIAGONAL):
        i = geo.longest_edge(cell)
        u, v = geo.split_uv(cell, i)
        return i, geo.trisect(cell, i, u, v, next_id), (u, v)
    if strategy == S1:
        i = geo.longest_edge(cell)
        return i, geo.canonical_trisect(cell, i, next_id), None
    if strategy == S2:
        p = geo.center(cell)
        return None, geo.orthant_split(cell, p, next_id), p
    raise ValueError(f"unknown strategy {strategy!r}")


def _finish(state, cell, dim, children, candidates) -> SplitOutcome:
    state.install(children)
    state.splits += 1
    hits = sum(1 for _, _, hit in candidates if hit)
    return SplitOutcome(
        parent_id=cell.id,
        split_dim=dim,
        candidates=tuple(candidates),
        children=tuple((c.id, c.designated_vertex) for c in children),
        evals_this_split=len(candidates) - hits,
        hits_this_split=hits,
    )


def split_s3(state: PartitionState, cell: Cell) -> SplitOutcome:
    i, (lower, middle, upper), (u, v) = split_geometry(S3, cell, state.next_id())
    uid, hit = state.db.ensure(u, state.evaluator, state.iteration)
    lower.designated_vertex = cell.designated_vertex
    middle.designated_vertex = uid
    upper.designated_vertex = uid
    return _finish(state, cell, i, (lower, middle, upper), [(u, uid, hit)])


def split_diagonal(state: PartitionState, cell: Cell) -> SplitOutcome:
    i, (lower, middle, upper), (u, v) = split_geometry(DIAGONAL, cell, state.next_id())
    uid, uhit = state.db.ensure(u, state.evaluator, state.iteration)
    vid, vhit = state.db.ensure(v, state.evaluator, state.iteration)
    lower.designated_vertex, lower.second_vertex = cell.designated_vertex, vid
    middle.designated_vertex, middle.second_vertex = uid, vid
    upper.designated_vertex, upper.second_vertex = uid, cell.second_vertex
    return _finish(state, cell, i, (lower, middle, upper), [(u, uid, uhit), (v, vid, vhit)])


def split_s1(state: PartitionState, cell: Cell) -> SplitOutcome:
    i, (lower, middle, upper), _ = split_geometry(S1, cell, state.next_id())
    candidates = []
    for child in (lower, upper):
        c = geo.center(child)
        vid, hit = state.db.ensure(c, state.evaluator, state.iteration)
        child.designated_vertex = vid
        candidates.append((c, vid, hit))
    middle.designated_vertex = cell.designated_vertex
    return _finish(state, cell, i, (lower, middle, upper), candidates)


def split_s2(state: PartitionState, cell: Cell) -> SplitOutcome:
    _, children, p = split_geometry(S2, cell, state.next_id())
    pid, hit = state.db.ensure(p, state.evaluator, state.iteration)
    for child in children:
        child.designated_vertex = pid
    return _finish(state, cell, None, children, [(p, pid, hit)])


SPLITTERS: dict[str, Callable[[PartitionState, Cell], SplitOutcome]] = {
    S1: split_s1,
    S2: split_s2,
    S3: split_s3,
    DIAGONAL: split_diagonal,
}


def split(state: PartitionState, cell: Cell) -> SplitOutcome:
    return SPLITTERS[state.strategy](state, cell)


def known_corner_count(state: PartitionState, cell: Cell) -> int:
    """Number of the cell's 2**N corners already present in the vertex store."""
    return sum(1 for p in geo.corners(cell) if p in state.db)


def prop11_audit(state: PartitionState, outcome: SplitOutcome) -> int:
    """Children of an s2 split that own two evaluated corners."""
    return sum(
        1 for cid, _ in outcome.children
        if known_corner_count(state, state.cells[cid]) == 2
    )
