"""Frechet distance between closed polygonal curves.

The decision ``decide(X, Y, eps)`` runs in time proportional to the product
of the vertex counts; ``compute_distance`` bisects over it.
"""

from .decision import DecisionReport, Witness, compute_distance, decide
from .estimator import FrechetDistanceTransformer, FrechetThresholdMatcher
from .geometry import Curve, hausdorff_distance

__all__ = [
    "Curve",
    "DecisionReport",
    "Witness",
    "decide",
    "compute_distance",
    "hausdorff_distance",
    "FrechetDistanceTransformer",
    "FrechetThresholdMatcher",
]
