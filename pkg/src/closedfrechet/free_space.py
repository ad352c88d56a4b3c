"""Free-space diagram edge intervals over the doubled parameter rectangle.

The diagram has ``width`` columns and ``height`` rows of unit cells.  For a
pair of closed curves X (m vertices) and Y (n vertices) the forward diagram
is ``2m`` by ``n``: the u axis runs twice around X so that a cyclic start
offset on X becomes a horizontal translation.

Edge storage follows the cell indexing used throughout the package:

* ``top[j][i]`` is the free part of the horizontal edge ``T(i, j)`` (the top
  side of cell ``(i, j)``), ``1 <= i <= width``, ``0 <= j <= height``, given
  in u coordinates inside ``[i - 1, i]``.  ``top[j][0]`` is always ``None``.
* ``right[j][i]`` is the free part of the vertical edge ``R(i, j)``,
  ``0 <= i <= width``, ``1 <= j <= height``, in v coordinates inside
  ``[j - 1, j]``.  ``right[0]`` is a row of ``None``.

A missing interval is ``None``.  Each cell's free region is convex, so one
closed interval per edge is enough.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .geometry import Curve

__all__ = [
    "FreeInterval",
    "FreeSpaceGrid",
    "clip_segment_by_ball",
    "build_free_space",
    "glued_intervals",
    "reflect_grid",
    "transpose_grid",
]

# relative tolerance under which a negative discriminant counts as tangency
DISC_TOL = 1e-12
# the diagram is built for eps * (1 + EPS_SLACK) so that exact ties, such as
# eps equal to a vertex distance computed along a different rounding path,
# count as free
EPS_SLACK = 1e-12


class FreeInterval(NamedTuple):
    lo: float
    hi: float

    def shifted(self, offset):
        return FreeInterval(self.lo + offset, self.hi + offset)

    def contains(self, x):
        return self.lo <= x <= self.hi


@dataclass(frozen=True, eq=False)
class FreeSpaceGrid:
    """Free edge intervals of a free-space diagram.

    ``m``, ``n`` and ``epsilon`` describe the curve pair the grid was built
    from and survive reflection and transposition unchanged; ``width`` and
    ``height`` describe the cell layout of this particular view.
    """

    m: int
    n: int
    epsilon: float
    width: int
    height: int
    top: tuple
    right: tuple

    def top_edge(self, i, j) -> Optional[FreeInterval]:
        return self.top[j][i]

    def right_edge(self, i, j) -> Optional[FreeInterval]:
        return self.right[j][i]

    def __eq__(self, other):
        if not isinstance(other, FreeSpaceGrid):
            return NotImplemented
        return (
            (self.width, self.height) == (other.width, other.height)
            and self.top == other.top
            and self.right == other.right
        )

    __hash__ = None


def _clip_many(P, Q, C, eps):
    """Vectorized clip of segments ``P[k]Q[k]`` against balls ``C[k]``.

    Returns ``(lo, hi, ok)`` arrays of segment-local parameters in ``[0, 1]``;
    ``ok`` is false where the intersection is empty.
    """
    d = Q - P
    w = P - C
    A = np.einsum("...i,...i->...", d, d)
    B = np.einsum("...i,...i->...", d, w)
    C0 = np.einsum("...i,...i->...", w, w) - eps * eps
    wq = Q - C
    C1 = np.einsum("...i,...i->...", wq, wq) - eps * eps

    disc = B * B - A * C0
    scale = np.maximum(B * B, np.abs(A * C0))
    disc = np.where((disc < 0.0) & (disc >= -DISC_TOL * scale), 0.0, disc)
    real = disc >= 0.0
    sq = np.sqrt(np.where(real, disc, 0.0))
    # larger-magnitude root first, the other one through the product of roots
    big = -(B + np.copysign(sq, B))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r1 = np.where(A > 0.0, big / A, 0.0)
        r2 = np.where(big != 0.0, C0 / big, 0.0)
    lo = np.minimum(r1, r2)
    hi = np.maximum(r1, r2)

    degenerate = A == 0.0
    ok = np.where(degenerate, C0 <= 0.0, real & (hi >= 0.0) & (lo <= 1.0))
    lo = np.where(degenerate, 0.0, np.clip(lo, 0.0, 1.0))
    hi = np.where(degenerate, 1.0, np.clip(hi, 0.0, 1.0))
    # endpoint membership is decided by the direct distance test so that
    # edges meeting at a cell corner agree on whether the corner is free
    lo = np.where(C0 <= 0.0, 0.0, lo)
    hi = np.where(C1 <= 0.0, 1.0, hi)
    ok = ok | (C0 <= 0.0) | (C1 <= 0.0)
    ok = ok & (lo <= hi)
    return lo, hi, ok


def clip_segment_by_ball(p, q, center, eps):
    """Part of segment ``pq`` within distance ``eps`` of ``center``.

    Parameters
    ----------
    p, q, center : array_like
        Points of a common dimension.
    eps : float
        Ball radius, ``eps >= 0``.

    Returns
    -------
    FreeInterval or None
        The set ``{t in [0, 1] : |(1 - t) p + t q - center| <= eps}`` in
        segment-local coordinates, or ``None`` when it is empty.

    Examples
    --------
    >>> clip_segment_by_ball([0, 0], [2, 0], [1, 0], 0.5)
    FreeInterval(lo=0.25, hi=0.75)
    >>> clip_segment_by_ball([0, 0], [2, 0], [5, 5], 1.0) is None
    True
    """
    p = np.asarray(p, dtype=float)[None, :]
    q = np.asarray(q, dtype=float)[None, :]
    c = np.asarray(center, dtype=float)[None, :]
    if not (p.shape == q.shape == c.shape):
        raise ValueError("points must share one dimension")
    lo, hi, ok = _clip_many(p, q, c, float(eps))
    if not ok[0]:
        return None
    return FreeInterval(float(lo[0]), float(hi[0]))


def _to_intervals(lo, hi, ok, offset):
    """Nested lists of intervals; ``offset(k, i)`` maps local [0, 1] into place."""
    return [
        [
            FreeInterval(float(lo[k, i]) + offset(k, i), float(hi[k, i]) + offset(k, i)) if ok[k, i] else None
            for i in range(lo.shape[1])
        ]
        for k in range(lo.shape[0])
    ]


def build_free_space(X: Curve, Y: Curve, eps: float) -> FreeSpaceGrid:
    """Free edge intervals of the doubled diagram ``[0, 2m] x [0, n]``.

    Distances are compared against ``eps`` inflated by the relative slack
    ``EPS_SLACK``, which leaves ``eps = 0`` exact.  Only the first copy
    (columns ``1..m``) is computed; the second copy is the first one
    translated by ``m``, copied so that periodicity holds exactly.
    """
    if X.dim != Y.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {Y.dim}")
    if not eps >= 0:
        raise ValueError("epsilon must be non-negative")
    m, n = X.m, Y.m
    xs = X.closed_vertices()  # m + 1 rows
    ys = Y.closed_vertices()  # n + 1 rows
    eps = float(eps)
    eps_eff = eps * (1.0 + EPS_SLACK)

    # T(i, j), i = 1..m: segment x_{i-1} x_i against the ball around y_j
    P = np.broadcast_to(xs[None, :-1, :], (n + 1, m, X.dim))
    Q = np.broadcast_to(xs[None, 1:, :], (n + 1, m, X.dim))
    C = np.broadcast_to(ys[:, None, :], (n + 1, m, X.dim))
    lo, hi, ok = _clip_many(P, Q, C, eps_eff)
    top_first = _to_intervals(lo, hi, ok, lambda j, i: i)

    # R(i, j), i = 0..m-1: segment y_{j-1} y_j against the ball around x_i
    P = np.broadcast_to(ys[:-1, None, :], (n, m, X.dim))
    Q = np.broadcast_to(ys[1:, None, :], (n, m, X.dim))
    C = np.broadcast_to(xs[None, :-1, :], (n, m, X.dim))
    lo, hi, ok = _clip_many(P, Q, C, eps_eff)
    right_first = _to_intervals(lo, hi, ok, lambda j, i: j)

    top = []
    for j in range(n + 1):
        row = top_first[j]
        top.append(tuple([None] + row + [iv.shifted(m) if iv is not None else None for iv in row]))
    right = [tuple([None] * (2 * m + 1))]
    for j in range(n):
        row = right_first[j]
        # columns 0..m-1, then m..2m-1 copied, then 2m (x_{2m} = x_0)
        right.append(tuple(row + row + row[:1]))
    return FreeSpaceGrid(m, n, eps, 2 * m, n, tuple(top), tuple(right))


def glued_intervals(grid: FreeSpaceGrid, row="bottom"):
    """Maximal free intervals of the bottom (or top) boundary row.

    Edge intervals that share an endpoint merge into one interval.
    """
    if row not in ("bottom", "top"):
        raise ValueError("row must be 'bottom' or 'top'")
    j = 0 if row == "bottom" else grid.height
    out = []
    for i in range(1, grid.width + 1):
        iv = grid.top[j][i]
        if iv is None:
            continue
        if out and out[-1].hi >= iv.lo:
            out[-1] = FreeInterval(out[-1].lo, max(out[-1].hi, iv.hi))
        else:
            out.append(iv)
    return out


def glued_lookup(glued, iv, end="right"):
    """Endpoint of the glued interval containing edge interval ``iv``."""
    for g in glued:
        if g.lo <= iv.lo and iv.hi <= g.hi:
            return g.hi if end == "right" else g.lo
    raise ValueError(f"{iv} is not inside any glued interval")


def _flip(iv, total):
    if iv is None:
        return None
    return FreeInterval(total - iv.hi, total - iv.lo)


def reflect_grid(grid: FreeSpaceGrid) -> FreeSpaceGrid:
    """Grid of the point-reflected diagram ``(u, v) -> (W - u, H - v)``.

    The reflection negates both coordinate differences of any two points, so
    monotone paths map to monotone paths.
    """
    W, H = grid.width, grid.height
    top = []
    for j in range(H + 1):
        top.append(tuple([None] + [_flip(grid.top[H - j][W - i + 1], W) for i in range(1, W + 1)]))
    right = [tuple([None] * (W + 1))]
    for j in range(1, H + 1):
        right.append(tuple(_flip(grid.right[H - j + 1][W - i], H) for i in range(W + 1)))
    return FreeSpaceGrid(grid.m, grid.n, grid.epsilon, W, H, tuple(top), tuple(right))


def transpose_grid(grid: FreeSpaceGrid) -> FreeSpaceGrid:
    """Grid of the diagram with the two axes swapped, ``(u, v) -> (v, u)``.

    Horizontal edges become vertical ones and vice versa; interval
    coordinates are unchanged.  Monotone paths stay monotone.
    """
    W, H = grid.width, grid.height
    # new top[b][a] = old right[a][b], for rows b = 0..W and columns a = 1..H
    top = [tuple([None] + [grid.right[a][b] for a in range(1, H + 1)]) for b in range(W + 1)]
    right = [tuple([None] * (H + 1))]
    for b in range(1, W + 1):
        right.append(tuple(grid.top[a][b] for a in range(H + 1)))
    return FreeSpaceGrid(grid.m, grid.n, grid.epsilon, H, W, tuple(top), tuple(right))
