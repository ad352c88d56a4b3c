"""Scikit-learn style wrappers for comparing collections of closed curves.

Curves have varying vertex counts, so inputs are sequences of curves rather
than 2-d feature arrays.  ``fit`` stores the reference curves; ``transform``
maps query curves to a matrix with one column per reference.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decision import compute_distance, decide
from .validation import check_curves, check_eps, check_tol

__all__ = ["FrechetDistanceTransformer", "FrechetThresholdMatcher"]


class FrechetDistanceTransformer(TransformerMixin, BaseEstimator):
    """Closed-curve Frechet distances to a set of reference curves.

    Parameters
    ----------
    tol : float, default=1e-6
        Absolute accuracy of each distance.

    Attributes
    ----------
    references_ : list of Curve
    dim_ : int
        Dimension shared by all curves.

    Examples
    --------
    >>> sq = [[0, 0], [1, 0], [1, 1], [0, 1]]
    >>> t = FrechetDistanceTransformer(tol=1e-4).fit([sq])
    >>> D = t.transform([[[0.5, 0.5]]])
    >>> round(float(D[0, 0]), 3)
    0.707
    """

    def __init__(self, tol=1e-6):
        self.tol = tol

    def fit(self, X, y=None):
        check_tol(self.tol)
        self.references_ = check_curves(X, name="X")
        self.dim_ = self.references_[0].dim
        return self

    def transform(self, X):
        check_is_fitted(self, "references_")
        tol = check_tol(self.tol)
        queries = check_curves(X, dim=self.dim_, name="X")
        out = np.empty((len(queries), len(self.references_)))
        for a, q in enumerate(queries):
            for b, r in enumerate(self.references_):
                out[a, b] = compute_distance(q, r, tol)
        return out


class FrechetThresholdMatcher(BaseEstimator):
    """Flag reference curves within Frechet distance ``eps`` of each query.

    ``predict`` returns a boolean matrix; ``decision_function`` is not
    provided since the decision carries no margin.

    Parameters
    ----------
    eps : float, default=0.1
        Matching threshold.
    """

    def __init__(self, eps=0.1):
        self.eps = eps

    def fit(self, X, y=None):
        check_eps(self.eps)
        self.references_ = check_curves(X, name="X")
        self.dim_ = self.references_[0].dim
        return self

    def predict(self, X):
        check_is_fitted(self, "references_")
        eps = check_eps(self.eps)
        queries = check_curves(X, dim=self.dim_, name="X")
        return np.array(
            [[decide(q, r, eps).answer for r in self.references_] for q in queries],
            dtype=bool,
        ).reshape(len(queries), len(self.references_))
