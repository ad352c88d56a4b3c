"""Reachability sweeps over a free-space diagram.

A sweep visits the cells row by row, left to right, and maintains for every
column ``i`` a deque ``Q(i)`` describing the reachable part of the current
horizontal edge ``T(i, j)`` together with a value function on it, plus one
register holding the reachable part of the vertical edge just crossed and
its (constant) value.

Values are opaque labels attached at the sources and carried along
monotone paths.  The sweep only ever copies them; the one rule it relies on
is that along a horizontal edge the value of a later point dominates the
value of an earlier one, and that a vertical edge is dominated by the
horizontal edge below its right neighbour.  That holds for the rightmost
bottom takeoff in the forward diagram and for the rightmost top landing in
the transposed reflection of it, so both passes run on this engine.

Values are stored in standard form, a deque of ``(beg, val, end)`` triples.
A triple is either constant (``f(x) = val`` on ``[beg, end]``) or the
identity (``f(x) = x``, stored with ``val == end``).
"""

import gc
import math
from collections import deque
from contextlib import contextmanager
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .free_space import (
    FreeInterval,
    FreeSpaceGrid,
    build_free_space,
    glued_intervals,
    glued_lookup,
    reflect_grid,
    transpose_grid,
)

__all__ = [
    "SpanTriple",
    "ReachDeque",
    "EdgeReach",
    "PassConfig",
    "PassResult",
    "BottomEntry",
    "ReachProfile",
    "InvariantViolation",
    "deque_cut_left",
    "deque_cut_right",
    "column_step",
    "right_edge_step",
    "initialize",
    "backward_seeds",
    "run_pass",
    "assemble_profile",
]


class InvariantViolation(AssertionError):
    """A structural property of the sweep failed to hold."""


class SpanTriple(NamedTuple):
    beg: float
    val: float
    end: float
    identity: bool = False

    @classmethod
    def from_bare(cls, beg, val, end):
        """Build from the bare ``(beg, val, end)`` form, where ``val == end`` means identity."""
        return cls(beg, val, end, val == end)

    def value_at(self, x):
        return x if self.identity else self.val

    @property
    def last(self):
        """Value at the right endpoint."""
        return self.end if self.identity else self.val


class ReachDeque:
    """Double-ended queue of sorted, contiguous span triples."""

    __slots__ = ("_q", "insertions")

    def __init__(self, triples=()):
        self._q = deque()
        self.insertions = 0
        for t in triples:
            self.push_right(t if isinstance(t, SpanTriple) else SpanTriple.from_bare(*t))

    def __len__(self):
        return len(self._q)

    def __bool__(self):
        return bool(self._q)

    def __iter__(self):
        return iter(self._q)

    def __repr__(self):
        return f"ReachDeque({list(self._q)!r})"

    def __eq__(self, other):
        if isinstance(other, ReachDeque):
            return list(self._q) == list(other._q)
        return list(self._q) == list(other)

    __hash__ = None

    @property
    def beg(self):
        return self._q[0].beg

    @property
    def end(self):
        return self._q[-1].end

    def last_value(self):
        return self._q[-1].last

    def push_left(self, t):
        self.insertions += 1
        self._q.appendleft(t)

    def push_right(self, t):
        self.insertions += 1
        self._q.append(t)

    def clear(self):
        self._q.clear()

    def cut_left(self, x):
        """Drop everything left of ``x``."""
        q = self._q
        while q and q[0].end < x:
            q.popleft()
        if q and q[0].beg < x:
            t = q[0]
            q[0] = SpanTriple(x, t.val, t.end, t.identity)

    def cut_right(self, x):
        """Drop everything right of ``x``; identity triples stay identity."""
        q = self._q
        while q and q[-1].beg > x:
            q.pop()
        if q and q[-1].end > x:
            t = q[-1]
            if t.identity:
                q[-1] = SpanTriple(t.beg, x, x, True)
            else:
                q[-1] = SpanTriple(t.beg, t.val, x, False)

    def triples(self):
        return list(self._q)


def deque_cut_left(q: ReachDeque, x) -> ReachDeque:
    q.cut_left(x)
    return q


def deque_cut_right(q: ReachDeque, x) -> ReachDeque:
    q.cut_right(x)
    return q


class EdgeReach(NamedTuple):
    """Reachable part of a vertical edge and the constant value on it."""

    interval: FreeInterval
    value: float


def column_step(q: ReachDeque, left_in: Optional[EdgeReach], free_top: Optional[FreeInterval]) -> ReachDeque:
    """Advance ``Q(i)`` from ``T(i, j-1)`` to ``T(i, j)`` in place.

    ``left_in`` is the reachable part of the left side of the cell with its
    value, ``free_top`` the free part ``[a, b]`` of the cell's top side.
    With ``[c, d]`` the span of ``q``, the new edge splits into a left part
    ``[a, c)`` reachable only through the left side, a middle part copied
    from ``q``, and a right part ``(d, b]`` carrying the value at ``d``.
    """
    if free_top is None:
        q.clear()
        return q
    a, b = free_top
    if not q:
        if left_in is not None:
            q.push_right(SpanTriple(a, left_in.value, b))
        return q
    c, d = q.beg, q.end
    if b < c:
        q.clear()
        if left_in is not None:
            q.push_right(SpanTriple(a, left_in.value, b))
    elif d < a:
        vald = q.last_value()
        q.clear()
        q.push_right(SpanTriple(a, vald, b))
    else:
        vald = q.last_value()
        q.cut_left(a)
        q.cut_right(b)
        if a < c and left_in is not None:
            q.push_left(SpanTriple(a, left_in.value, c))
        if d < b:
            q.push_right(SpanTriple(d, vald, b))
    return q


def right_edge_step(
    q: ReachDeque, left_in: Optional[EdgeReach], free_right: Optional[FreeInterval]
) -> Optional[EdgeReach]:
    """Reachable part of ``R(i, j)`` from the cell's bottom and left sides.

    Must be called with ``q`` still describing ``T(i, j-1)``.  Every point
    of the right side lies above and to the right of ``(d, j-1)``, so by
    convexity of the cell a
    nonempty bottom reaches the whole free right side and, being the
    dominant predecessor, fixes its value.  Otherwise only the part at or
    above the lowest reachable left point is reachable.
    """
    if free_right is None:
        return None
    if q:
        return EdgeReach(free_right, q.last_value())
    if left_in is None:
        return None
    lo = max(free_right.lo, left_in.interval.lo)
    if lo > free_right.hi:
        return None
    return EdgeReach(FreeInterval(lo, free_right.hi), left_in.value)


@dataclass(frozen=True)
class PassConfig:
    """Which pass to run and how the forward pass seeds the bottom row.

    ``init="identity"`` seeds ``r(u, 0) = u``.  ``init="seeded"`` seeds every
    bottom point with the right end of its glued bottom interval, crediting
    horizontal slides along the boundary.  The backward pass always credits
    slides along the top row (a path may run right along it after landing).
    """

    direction: str = "forward"
    init: str = "identity"

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.init not in ("identity", "seeded"):
            raise ValueError(f"unknown init {self.init!r}")
        if self.direction == "backward" and self.init != "seeded":
            raise ValueError("the backward pass needs seeded initialization")


def _left_column(grid, origin_free, value):
    """Seeds for the left boundary: a vertical climb from the origin."""
    seeds = [None] * (grid.height + 1)
    reach = origin_free
    for j in range(1, grid.height + 1):
        iv = grid.right[j][0]
        if reach and iv is not None and iv.lo == j - 1:
            seeds[j] = EdgeReach(iv, value)
            reach = iv.hi == j
        else:
            reach = False
    return seeds


def initialize(grid: FreeSpaceGrid, cfg: PassConfig = PassConfig()):
    """Initial deques ``Q(1..W)`` and left-boundary seeds of the forward pass.

    Returns ``(deques, seeds)``, both indexed from 1 (index 0 unused).
    """
    if cfg.direction != "forward":
        raise ValueError("initialize builds forward seeds; use backward_seeds for the backward pass")
    glued = glued_intervals(grid, "bottom") if cfg.init == "seeded" else None
    deques = [None]
    for i in range(1, grid.width + 1):
        iv = grid.top[0][i]
        if iv is None:
            deques.append(ReachDeque())
        elif glued is None:
            deques.append(ReachDeque([SpanTriple(iv.lo, iv.hi, iv.hi, True)]))
        else:
            deques.append(ReachDeque([SpanTriple(iv.lo, glued_lookup(glued, iv, "right"), iv.hi)]))
    first = grid.top[0][1]
    origin_free = first is not None and first.lo == 0.0
    origin_value = 0.0
    if origin_free and glued is not None:
        origin_value = glued_lookup(glued, first, "right")
    return deques, _left_column(grid, origin_free, origin_value)


def backward_seeds(grid: FreeSpaceGrid):
    """Transposed reflection of ``grid`` with its initial deques and seeds.

    In the transposed reflection the top row of the original diagram turns
    into the left boundary, and sweeping it with the forward engine computes
    the rightmost top landing reachable from each point.  Seed values are
    kept in original u coordinates: a landing at ``u`` may slide right
    along the free top row, so it is worth the right end of its glued top
    interval.
    """
    W = grid.width
    glued = glued_intervals(grid, "top")
    tgrid = transpose_grid(reflect_grid(grid))
    seeds = [None] * (tgrid.height + 1)
    for b in range(1, tgrid.height + 1):
        iv = tgrid.right[b][0]
        if iv is not None:
            original = grid.top[grid.height][W - b + 1]
            seeds[b] = EdgeReach(iv, glued_lookup(glued, original, "right"))
    first = tgrid.right[1][0]
    origin_free = first is not None and first.lo == 0.0
    # the transposed origin is the original corner (W, n), worth W
    deques = [None]
    reach = origin_free
    for a in range(1, tgrid.width + 1):
        iv = tgrid.top[0][a]
        if reach and iv is not None and iv.lo == a - 1:
            deques.append(ReachDeque([SpanTriple(iv.lo, float(W), iv.hi)]))
            reach = iv.hi == a
        else:
            deques.append(ReachDeque())
            reach = False
    return tgrid, deques, seeds


@dataclass
class PassResult:
    """Output of one sweep.

    ``top[i]`` lists the final triples of column ``i`` (the top row),
    ``right[j]`` the reachable part of the right boundary edge ``R(W, j)``.
    """

    top: list
    right: list
    insertions: int
    max_fill: float


def _check_deque(q, j, i):
    if len(q) > 2 * j + 1:
        raise InvariantViolation(f"Q({i}) holds {len(q)} triples after row {j}, bound {2 * j + 1}")
    prev = None
    for t in q:
        if t.beg > t.end:
            raise InvariantViolation(f"Q({i}) has a reversed triple {t}")
        if prev is not None:
            if prev.end != t.beg:
                raise InvariantViolation(f"Q({i}) is not contiguous at {prev} / {t}")
            if prev.last > t.value_at(t.beg):
                raise InvariantViolation(f"Q({i}) values decrease at {prev} / {t}")
        prev = t


def run_pass(grid: FreeSpaceGrid, deques, seeds, debug=False) -> PassResult:
    """Sweep the grid row by row, left to right.

    Step ``(i, j)`` sees the results of steps ``(i - 1, j)`` and
    ``(i, j - 1)``.  ``deques`` is consumed.  With ``debug`` the deque size
    bound, ordering and value monotonicity are asserted after every step.
    """
    W, H = grid.width, grid.height
    if len(deques) != W + 1 or len(seeds) != H + 1:
        raise ValueError("deques and seeds must match the grid shape")
    top, right = grid.top, grid.right
    right_col = [None] * (H + 1)
    max_fill = 0.0
    for j in range(1, H + 1):
        left = seeds[j]
        top_row = top[j]
        right_row = right[j]
        for i in range(1, W + 1):
            q = deques[i]
            new_left = right_edge_step(q, left, right_row[i])
            column_step(q, left, top_row[i])
            left = new_left
            if debug:
                _check_deque(q, j, i)
                max_fill = max(max_fill, len(q) / (2 * j + 1))
        right_col[j] = left
    insertions = sum(q.insertions for q in deques[1:])
    if debug:
        bound = 2 * W * H + W
        if insertions > bound:
            raise InvariantViolation(f"{insertions} insertions exceed the bound {bound}")
    return PassResult([None] + [q.triples() for q in deques[1:]], right_col, insertions, max_fill)


class BottomEntry(NamedTuple):
    """Reachable-from-top part ``[c, d]`` of a bottom edge and its constant value."""

    c: float
    d: float
    r_up: float


@dataclass
class ReachProfile:
    """The data the decision needs.

    ``bottom[i]`` (``1 <= i <= m``) is a :class:`BottomEntry` or ``None``;
    ``top[i]`` (``m < i <= 2m``) is the list of triples on ``T(i, n)``.
    """

    m: int
    n: int
    bottom: list
    top: dict
    forward: Optional[PassResult] = None
    backward: Optional[PassResult] = None


def _check_top_row(top, m):
    prev = None
    for i in range(1, 2 * m + 1):
        for t in top[i]:
            if prev is not None and prev > t.value_at(t.beg):
                raise InvariantViolation(f"top-row values decrease at column {i}")
            prev = t.last


def _snap(c, d, free):
    """Undo reflection rounding: ends that match the free edge up to rounding become exact."""
    tol = 8 * math.ulp(max(1.0, abs(free.hi)))
    if abs(c - free.lo) <= tol:
        c = free.lo
    if abs(d - free.hi) <= tol:
        d = free.hi
    return min(max(c, free.lo), free.hi), max(min(d, free.hi), free.lo)


@contextmanager
def _gc_paused():
    """Suspend the cyclic collector while a pass allocates its many small tuples.

    None of those objects form cycles, and with the collector running its
    full sweeps grow with the heap, which makes large inputs superlinearly
    slower.  The previous collector state is restored on exit.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def assemble_profile(X, Y, eps, init="identity", debug=False, grid=None) -> ReachProfile:
    """Run both passes and collect the top and bottom reachability data."""
    with _gc_paused():
        return _assemble(X, Y, eps, init, debug, grid)


def _assemble(X, Y, eps, init, debug, grid):
    if grid is None:
        grid = build_free_space(X, Y, eps)
    m, n = grid.m, grid.n
    deques, seeds = initialize(grid, PassConfig("forward", init))
    fwd = run_pass(grid, deques, seeds, debug=debug)
    tgrid, deques, seeds = backward_seeds(grid)
    bwd = run_pass(tgrid, deques, seeds, debug=debug)
    if debug:
        _check_top_row(fwd.top, m)

    W = 2 * m
    bottom = [None] * (m + 1)
    for i in range(1, m + 1):
        er = bwd.right[W - i + 1]
        if er is not None:
            lo, hi = er.interval
            bottom[i] = BottomEntry(*_snap(W - hi, W - lo, grid.top[0][i]), er.value)
    if debug:
        prev = None
        for entry in bottom[1:]:
            if entry is None:
                continue
            if prev is not None and prev > entry.r_up:
                raise InvariantViolation("bottom-row values decrease")
            prev = entry.r_up
    top = {i: fwd.top[i] for i in range(m + 1, W + 1)}
    return ReachProfile(m, n, bottom, top, fwd, bwd)
