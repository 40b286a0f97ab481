"""Points, oriented cells and the three ways of cutting a cell.

A cell stores two diagonally opposite corners ``a`` and ``b``.  They are
*not* required to be the min/max corners: the trisection flips the pair for
the middle child, and that orientation is what keeps the evaluated vertex
of every child at its ``a`` corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DimensionError, DomainError, InteriorPointError
from .exactnum import ONE, ZERO, ExactScalar, affine_third, midpoint

Point = Tuple[ExactScalar, ...]

MAX_DIMENSION = 16
MAX_AUDIT_DIMENSION = 12


def point(*coords) -> Point:
    """Build a point from ExactScalars, ints or ``"num/den"`` strings."""
    if len(coords) == 1 and not isinstance(coords[0], (str, int, ExactScalar)):
        coords = tuple(coords[0])
    return tuple(ExactScalar.parse(c) for c in coords)


def format_point(p: Point) -> list[str]:
    return [str(c) for c in p]


def parse_point(items: Iterable) -> Point:
    return tuple(ExactScalar.parse(c) for c in items)


@dataclass(eq=False)
class Cell:
    id: int
    a: Point
    b: Point
    parent: Optional[int] = None
    depth: int = 0
    designated_vertex: Optional[int] = None
    second_vertex: Optional[int] = None
    alive: bool = True
    # global creation order, used by the FIFO rule and as a cache key
    born: int = 0

    @property
    def dimension(self) -> int:
        return len(self.a)

    def lo(self) -> Point:
        return tuple(min(x, y) for x, y in zip(self.a, self.b))

    def hi(self) -> Point:
        return tuple(max(x, y) for x, y in zip(self.a, self.b))

    def widths(self) -> Tuple[ExactScalar, ...]:
        return tuple(abs(y - x) for x, y in zip(self.a, self.b))

    def volume(self) -> ExactScalar:
        v = ONE
        for w in self.widths():
            v = v * w
        return v

    def squared_diameter(self) -> ExactScalar:
        d = ZERO
        for w in self.widths():
            d = d + w * w
        return d

    def box(self) -> Tuple[Point, Point]:
        """Unordered box as (min corner, max corner); orientation dropped."""
        return self.lo(), self.hi()


def root_cell(domain: Sequence[Tuple[object, object]]) -> Cell:
    """Cell spanning ``domain`` with ``a`` = all lower and ``b`` = all upper bounds."""
    n = len(domain)
    if n == 0:
        raise DomainError("domain has no dimensions")
    if n > MAX_DIMENSION:
        raise DimensionError(f"N={n} exceeds the engine cap of {MAX_DIMENSION}")
    lo = []
    hi = []
    for j, (l, h) in enumerate(domain):
        l, h = ExactScalar.parse(l), ExactScalar.parse(h)
        if not l < h:
            raise DomainError(f"dimension {j}: need lo < hi, got [{l}, {h}]")
        lo.append(l)
        hi.append(h)
    return Cell(id=1, a=tuple(lo), b=tuple(hi))


def longest_edge(cell: Cell) -> int:
    widths = cell.widths()
    best = 0
    for j in range(1, len(widths)):
        if widths[j] > widths[best]:
            best = j
    return best


def split_uv(cell: Cell, i: int) -> Tuple[Point, Point]:
    """Cut points for trisecting ``cell`` along dimension ``i``.

    ``u`` is ``a`` moved two thirds of the way towards ``b`` in coordinate
    ``i``; ``v`` is ``b`` moved two thirds of the way towards ``a``.
    """
    a, b = cell.a, cell.b
    u = a[:i] + (affine_third(a[i], b[i], 2),) + a[i + 1 :]
    v = b[:i] + (affine_third(b[i], a[i], 2),) + b[i + 1 :]
    return u, v


def trisect(
    cell: Cell, i: int, u: Point, v: Point, next_id: int
) -> Tuple[Cell, Cell, Cell]:
    """Replace ``cell`` by (a, v), (u, v), (u, b).

    The middle child keeps the parent's id; lower and upper get
    ``next_id`` and ``next_id + 1``.  The parent is marked dead.
    """
    depth = cell.depth + 1
    lower = Cell(id=next_id, a=cell.a, b=v, parent=cell.id, depth=depth)
    middle = Cell(id=cell.id, a=u, b=v, parent=cell.id, depth=depth)
    upper = Cell(id=next_id + 1, a=u, b=cell.b, parent=cell.id, depth=depth)
    cell.alive = False
    return lower, middle, upper


def canonical_trisect(cell: Cell, i: int, next_id: int) -> Tuple[Cell, Cell, Cell]:
    """Trisect along ``i`` with every child stored as (min corner, max corner)."""
    lo, hi = cell.box()
    c1 = affine_third(lo[i], hi[i], 1)
    c2 = affine_third(lo[i], hi[i], 2)
    depth = cell.depth + 1

    def child(cid: int, l: ExactScalar, h: ExactScalar) -> Cell:
        return Cell(
            id=cid,
            a=lo[:i] + (l,) + lo[i + 1 :],
            b=hi[:i] + (h,) + hi[i + 1 :],
            parent=cell.id,
            depth=depth,
        )

    lower = child(next_id, lo[i], c1)
    middle = child(cell.id, c1, c2)
    upper = child(next_id + 1, c2, hi[i])
    cell.alive = False
    return lower, middle, upper


def orthant_split(cell: Cell, p: Point, next_id: int) -> list[Cell]:
    """Cut ``cell`` into 2**N boxes by the axis hyperplanes through ``p``.

    Children are listed in sign-pattern order (all-low first); the all-low
    child inherits the parent's id and the rest take consecutive fresh ids.
    """
    lo, hi = cell.box()
    for j, (l, x, h) in enumerate(zip(lo, p, hi)):
        if not l < x < h:
            raise InteriorPointError(f"coordinate {j} of split point is not interior")
    depth = cell.depth + 1
    children = []
    fresh = next_id
    for pattern in product((0, 1), repeat=len(p)):
        a = tuple(l if s == 0 else x for s, l, x in zip(pattern, lo, p))
        b = tuple(x if s == 0 else h for s, x, h in zip(pattern, p, hi))
        if any(pattern):
            cid = fresh
            fresh += 1
        else:
            cid = cell.id
        children.append(Cell(id=cid, a=a, b=b, parent=cell.id, depth=depth))
    cell.alive = False
    return children


def center(cell: Cell) -> Point:
    return tuple(midpoint(x, y) for x, y in zip(cell.a, cell.b))


def corners(cell: Cell) -> set[Point]:
    if cell.dimension > MAX_AUDIT_DIMENSION:
        raise DimensionError(
            f"corner enumeration capped at N={MAX_AUDIT_DIMENSION}, got {cell.dimension}"
        )
    lo, hi = cell.box()
    return {
        tuple(h if s else l for s, l, h in zip(pattern, lo, hi))
        for pattern in product((0, 1), repeat=len(lo))
    }


def interiors_overlap(c1: Cell, c2: Cell) -> bool:
    lo1, hi1 = c1.box()
    lo2, hi2 = c2.box()
    return all(l1 < h2 and l2 < h1 for l1, h1, l2, h2 in zip(lo1, hi1, lo2, hi2))
