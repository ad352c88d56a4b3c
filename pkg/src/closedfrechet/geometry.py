"""Closed polygonal curves and elementary distance utilities."""

import math

import numpy as np

__all__ = [
    "Curve",
    "point_at",
    "cyclic_shift_param",
    "max_vertex_pair_distance",
    "hausdorff_distance",
    "point_segment_distance",
]


class Curve:
    """A closed polygonal curve in k-dimensional Euclidean space.

    The closing vertex is implicit: ``vertices[m]`` is never stored, the
    parameterization over ``[0, m]`` wraps back to ``vertices[0]``.

    Parameters
    ----------
    vertices : array_like
        An ``m`` by ``k`` array of vertex coordinates, ``m >= 1``, ``k >= 1``.
    """

    __slots__ = ("_vertices",)

    def __init__(self, vertices):
        arr = np.array(vertices, dtype=float)
        if arr.ndim == 1 and arr.size > 0:
            # a flat list of scalars is a 1-d curve
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("a curve needs at least one vertex with at least one coordinate")
        if not np.all(np.isfinite(arr)):
            raise ValueError("vertex coordinates must be finite")
        arr.setflags(write=False)
        self._vertices = arr

    @property
    def vertices(self):
        return self._vertices

    @property
    def m(self):
        return self._vertices.shape[0]

    @property
    def dim(self):
        return self._vertices.shape[1]

    def __len__(self):
        return self.m

    def vertex(self, i):
        """Vertex ``i`` taken cyclically, so ``vertex(m) == vertex(0)``."""
        return self._vertices[i % self.m]

    def edges(self):
        """Yield the m edges ``(x_i, x_{i+1})`` including the closing one."""
        for i in range(self.m):
            yield self._vertices[i], self._vertices[(i + 1) % self.m]

    def closed_vertices(self):
        """Vertex array with the closing vertex appended (``m + 1`` rows)."""
        return np.vstack([self._vertices, self._vertices[:1]])

    def rolled(self, shift):
        """The same closed curve with vertex ``shift`` relabeled as vertex 0."""
        return Curve(np.roll(self._vertices, -shift, axis=0))

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self._vertices.shape == other._vertices.shape and bool(
            np.array_equal(self._vertices, other._vertices)
        )

    def __hash__(self):
        return hash((self._vertices.shape, self._vertices.tobytes()))

    def __repr__(self):
        if self.m <= 16:
            return f"Curve({self._vertices.tolist()!r})"
        return f"Curve(m={self.m}, dim={self.dim})"


def _check_same_dim(X, Y):
    if X.dim != Y.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {Y.dim}")


def point_at(curve, t):
    """Evaluate the curve parameterization at ``t`` in ``[0, m]``.

    >>> point_at(Curve([[0, 0], [1, 0], [1, 1], [0, 1]]), 1.5).tolist()
    [1.0, 0.5]
    """
    m = curve.m
    if not 0 <= t <= m:
        raise ValueError(f"parameter {t} outside [0, {m}]")
    i = min(int(math.floor(t)), m - 1)
    alpha = t - i
    x_i = curve.vertex(i)
    x_next = curve.vertex(i + 1)
    return (1.0 - alpha) * x_i + alpha * x_next


def cyclic_shift_param(t, tau, m):
    """Shift the parameter ``t`` by ``tau`` cyclically within ``[0, m]``."""
    if not (0 <= t <= m and 0 <= tau <= m):
        raise ValueError("t and tau must lie in [0, m]")
    s = t + tau
    return s if s <= m else s - m


def max_vertex_pair_distance(X, Y):
    """Largest distance between a vertex of X and a vertex of Y.

    This bounds the Frechet distance from above: the distance between two
    points moving linearly along segments is convex in time, so every
    traverse stays below the farthest vertex pair.
    """
    _check_same_dim(X, Y)
    diff = X.vertices[:, None, :] - Y.vertices[None, :, :]
    return float(np.sqrt((diff * diff).sum(axis=-1)).max())


def point_segment_distance(p, a, b):
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.linalg.norm(p - a))
    t = min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return float(np.linalg.norm(p - (a + t * ab)))


def _sq_dist_pieces(p0, d, a, b):
    """Squared distance from ``p0 + t*d`` to segment ``ab`` as quadratic pieces in t.

    Returns ``(t_lo, t_hi, (A, B, C))`` triples covering the real line; on
    each piece the squared distance is ``A t^2 + B t + C``.
    """
    u = b - a
    L = float(u @ u)
    w0 = p0 - a
    dd = float(d @ d)

    def to_point(c):
        w = p0 - c
        return (dd, 2.0 * float(w @ d), float(w @ w))

    if L == 0.0:
        return [(-math.inf, math.inf, to_point(a))]
    du = float(d @ u)
    wu = float(w0 @ u)
    line = (
        dd - du * du / L,
        2.0 * (float(w0 @ d) - wu * du / L),
        float(w0 @ w0) - wu * wu / L,
    )
    if du == 0.0:
        s = wu / L
        coeffs = to_point(a) if s <= 0.0 else to_point(b) if s >= 1.0 else line
        return [(-math.inf, math.inf, coeffs)]
    t0 = -wu / du
    t1 = (L - wu) / du
    if du > 0.0:
        return [(-math.inf, t0, to_point(a)), (t0, t1, line), (t1, math.inf, to_point(b))]
    return [(-math.inf, t1, to_point(b)), (t1, t0, line), (t0, math.inf, to_point(a))]


def _quadratic_roots(A, B, C):
    if abs(A) < 1e-15:
        if abs(B) < 1e-15:
            return []
        return [-C / B]
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    return [(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)]


def _directed_segment_hausdorff(p0, p1, Y):
    """Max over points of segment p0p1 of the distance to polygon Y.

    The distance to each edge of Y is convex along p0p1 and the distance to
    the polygon is their lower envelope, so the maximum sits at an endpoint
    or where two edge distances cross.  Crossings are found exactly by
    intersecting the piecewise-quadratic squared distances.
    """
    d = p1 - p0
    edges = list(Y.edges())
    pieces = [_sq_dist_pieces(p0, d, a, b) for a, b in edges]
    candidates = {0.0, 1.0}
    for k in range(len(pieces)):
        for l in range(k + 1, len(pieces)):
            for lo1, hi1, c1 in pieces[k]:
                for lo2, hi2, c2 in pieces[l]:
                    lo = max(lo1, lo2, 0.0)
                    hi = min(hi1, hi2, 1.0)
                    if lo > hi:
                        continue
                    for t in _quadratic_roots(c1[0] - c2[0], c1[1] - c2[1], c1[2] - c2[2]):
                        if lo - 1e-12 <= t <= hi + 1e-12:
                            candidates.add(min(1.0, max(0.0, t)))

    def envelope(t):
        p = p0 + t * d
        return min(point_segment_distance(p, a, b) for a, b in edges)

    return max(envelope(t) for t in candidates)


def hausdorff_distance(X, Y):
    """Symmetric Hausdorff distance between the point sets of two closed curves."""
    _check_same_dim(X, Y)
    if X == Y:
        return 0.0

    def directed(A, B):
        if A.m == 1:
            p = A.vertex(0)
            return min(point_segment_distance(p, a, b) for a, b in B.edges())
        return max(_directed_segment_hausdorff(a, b, B) for a, b in A.edges())

    return max(directed(X, Y), directed(Y, X))
