"""Timing harness for the decision procedure on growing inputs."""

import time
from typing import NamedTuple

import numpy as np

from .decision import decide_from_profile
from .geometry import Curve
from .reach_pass import assemble_profile

__all__ = ["BenchRecord", "smooth_closed_curve", "run_bench", "loglog_slope", "DEFAULT_CAP"]

# largest m * n the harness accepts
DEFAULT_CAP = 1_000_000
BENCH_EPS = 0.25


class BenchRecord(NamedTuple):
    m: int
    n: int
    wall_time_s: float
    deque_insertions: int


def smooth_closed_curve(m, rng):
    """A circle of radius 1 with a few random low-frequency radial ripples."""
    t = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    r = np.ones(m)
    for k in range(2, 6):
        amp = rng.uniform(0.0, 0.15 / k)
        r += amp * np.sin(k * t + rng.uniform(0.0, 2.0 * np.pi))
    return Curve(np.column_stack([r * np.cos(t), r * np.sin(t)]))


def run_bench(sizes, repeats=3, seed=0, eps=BENCH_EPS, cap=DEFAULT_CAP):
    """Time one full decision per size and repeat.

    Curves for each size are drawn once from ``seed``; each repeat reruns
    the decision on the same pair.
    """
    sizes = [int(s) for s in sizes]
    for s in sizes:
        if s < 1:
            raise ValueError(f"size {s} must be positive")
        if s * s > cap:
            raise ValueError(f"size {s} gives m*n = {s * s}, above the cap {cap}")
    rng = np.random.default_rng(seed)
    records = []
    for s in sizes:
        X, Y = smooth_closed_curve(s, rng), smooth_closed_curve(s, rng)
        for _ in range(repeats):
            start = time.perf_counter()
            profile = assemble_profile(X, Y, eps)
            decide_from_profile(profile, X.m)
            elapsed = time.perf_counter() - start
            ins = profile.forward.insertions + profile.backward.insertions
            records.append(BenchRecord(s, s, elapsed, ins))
    return records


def loglog_slope(records):
    """Least-squares slope of log(time) against log(m * n)."""
    x = np.log([r.m * r.n for r in records])
    y = np.log([r.wall_time_s for r in records])
    if np.ptp(x) == 0:
        raise ValueError("need at least two distinct sizes")
    return float(np.polyfit(x, y, 1)[0])
