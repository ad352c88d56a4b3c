"""Shared test data and random instance generators."""

import numpy as np

from closedfrechet.geometry import Curve

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def random_curve(rng, m, dim=2):
    return Curve(rng.random((m, dim)))


def random_pair(rng, max_m=12, dim=2):
    m, n = rng.integers(1, max_m + 1, size=2)
    return random_curve(rng, int(m), dim), random_curve(rng, int(n), dim)
