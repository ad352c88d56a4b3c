"""Decision procedure and bisection for the closed-curve Frechet distance."""

import math
from typing import NamedTuple, Optional

from .geometry import Curve, max_vertex_pair_distance
from .reach_pass import ReachProfile, assemble_profile
from .validation import check_eps, check_tol

__all__ = ["Witness", "DecisionReport", "decide_from_profile", "decide", "compute_distance", "witness_holds"]

# bisection never needs more halvings than the mantissa can resolve
MAX_BISECTIONS = 128


class Witness(NamedTuple):
    """Column ``i`` of the bottom row, index of the top triple, and start offset ``u``."""

    i: int
    interval: int
    u: float


class DecisionReport(NamedTuple):
    answer: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.answer


def _pair_bounds(entry, triple, m):
    """Feasible range of ``u + m`` for one bottom entry and one top triple.

    The comparison runs in top-row coordinates: the top row is a copy of
    the bottom row shifted by ``m``, and shifting the bottom data the same
    way reproduces those values bit for bit.
    """
    r_down = triple.end if triple.identity else triple.val + m
    lo = max(entry.c + m, triple.beg)
    hi = min(entry.d + m, triple.end, entry.r_up, r_down)
    return lo, hi


def decide_from_profile(profile: ReachProfile, m: int) -> DecisionReport:
    """Search the reachability profile for a start offset ``u``.

    A start ``u`` on the bottom edge of column ``i`` works when ``(u, 0)``
    reaches the top row at or beyond ``u + m`` and ``(u + m, n)`` is reached
    from the bottom row at or beyond ``u``.  Both value functions are
    constant or the identity on each piece, so every (entry, triple) pair
    gives an interval of feasible ``u`` and only its left end is tested.
    """
    for i in range(1, m + 1):
        entry = profile.bottom[i]
        if entry is None:
            continue
        for k, triple in enumerate(profile.top[i + m]):
            lo, hi = _pair_bounds(entry, triple, m)
            if lo <= hi:
                return DecisionReport(True, Witness(i, k, lo - m))
    return DecisionReport(False)


def witness_holds(profile: ReachProfile, m: int, witness: Witness) -> bool:
    """Re-check the four reachability clauses at the witness offset.

    The offset is stored as ``u``; recovering ``u + m`` may round, so the
    check allows two units in the last place of ``2m``.
    """
    entry = profile.bottom[witness.i]
    if entry is None:
        return False
    triple = profile.top[witness.i + m][witness.interval]
    tol = 2 * math.ulp(2.0 * m)
    u = witness.u
    x = u + m
    return (
        entry.c - tol <= u <= entry.d + tol
        and triple.beg - tol <= x <= triple.end + tol
        and x <= entry.r_up + tol
        and u <= triple.value_at(x) + tol
    )


def _check_inputs(X, Y, eps):
    if not isinstance(X, Curve) or not isinstance(Y, Curve):
        raise TypeError("X and Y must be Curve instances")
    if X.dim != Y.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {Y.dim}")
    check_eps(eps, "epsilon")


def decide(X: Curve, Y: Curve, eps: float, *, init="identity", debug=False) -> DecisionReport:
    """Decide whether the Frechet distance of two closed curves is at most ``eps``.

    Parameters
    ----------
    X, Y : Curve
        Closed curves of equal dimension.
    eps : float
        Threshold, ``eps >= 0``.
    init : {"identity", "seeded"}
        Bottom-row initialization of the forward sweep.  Both give the same
        verdict; ``"seeded"`` exists for cross-checking.
    debug : bool
        Assert the sweep invariants while running.

    Returns
    -------
    DecisionReport
        The verdict and, when it is true, a witness start offset on X.

    Examples
    --------
    >>> sq = Curve([[0, 0], [1, 0], [1, 1], [0, 1]])
    >>> decide(sq, sq, 0.0)
    DecisionReport(answer=True, witness=Witness(i=1, interval=0, u=0.0))
    """
    _check_inputs(X, Y, eps)
    profile = assemble_profile(X, Y, float(eps), init=init, debug=debug)
    return decide_from_profile(profile, X.m)


def compute_distance(X: Curve, Y: Curve, tol: float = 1e-6) -> float:
    """Frechet distance of two closed curves to within ``tol``, by bisection.

    The returned value ``D`` always satisfies ``decide(X, Y, D)``; the true
    distance lies in ``(D - tol, D]``.
    """
    check_tol(tol)
    _check_inputs(X, Y, 0.0)
    if decide(X, Y, 0.0).answer:
        return 0.0
    lo, hi = 0.0, max_vertex_pair_distance(X, Y)
    # rounding in the free-space clip can leave the upper bound a hair short
    while not decide(X, Y, hi).answer:
        hi = hi * 2.0 + tol
    steps = min(MAX_BISECTIONS, max(0, math.ceil(math.log2((hi - lo) / tol))))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if decide(X, Y, mid).answer:
            hi = mid
        else:
            lo = mid
    return hi
