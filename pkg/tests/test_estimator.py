import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from closedfrechet import Curve, FrechetDistanceTransformer, FrechetThresholdMatcher
from closedfrechet.validation import check_curves, check_eps

from helpers import UNIT_SQUARE


def test_distance_transformer():
    refs = [UNIT_SQUARE, UNIT_SQUARE + [0.3, 0.0]]
    t = FrechetDistanceTransformer(tol=1e-6).fit(refs)
    D = t.transform([Curve(UNIT_SQUARE), [[0.5, 0.5]]])
    assert D.shape == (2, 2)
    assert D[0] == pytest.approx([0.0, 0.3], abs=1e-6)
    assert D[1, 0] == pytest.approx(math.sqrt(0.5), abs=1e-6)
    assert np.array_equal(FrechetDistanceTransformer(tol=1e-6).fit_transform(refs)[0], [0.0, D[0, 1]])


def test_params_roundtrip():
    t = FrechetDistanceTransformer(tol=1e-3)
    assert t.get_params() == {"tol": 1e-3}
    assert clone(t.set_params(tol=1e-4)).tol == 1e-4
    assert FrechetThresholdMatcher(eps=0.2).get_params() == {"eps": 0.2}


def test_matcher():
    m = FrechetThresholdMatcher(eps=0.35).fit([UNIT_SQUARE, UNIT_SQUARE + [0.3, 0.0], UNIT_SQUARE + 5])
    pred = m.predict([UNIT_SQUARE])
    assert pred.dtype == bool and pred.tolist() == [[True, True, False]]


def test_not_fitted_and_validation():
    with pytest.raises(NotFittedError):
        FrechetThresholdMatcher().predict([UNIT_SQUARE])
    with pytest.raises(ValueError):
        FrechetThresholdMatcher(eps=-1).fit([UNIT_SQUARE])
    with pytest.raises(ValueError):
        FrechetDistanceTransformer(tol=0).fit([UNIT_SQUARE])
    t = FrechetDistanceTransformer().fit([UNIT_SQUARE])
    with pytest.raises(ValueError):
        t.transform([np.zeros((3, 3))])


def test_check_helpers():
    with pytest.raises(ValueError):
        check_curves(UNIT_SQUARE)
    with pytest.raises(ValueError):
        check_curves([])
    assert len(check_curves(np.stack([UNIT_SQUARE, UNIT_SQUARE]))) == 2
    with pytest.raises(ValueError):
        check_eps(True)
    assert check_eps(np.float32(0.5)) == 0.5
