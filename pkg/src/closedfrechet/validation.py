"""Input checks shared by the estimators and the command line."""

import math
import numbers

import numpy as np

from .geometry import Curve

__all__ = ["check_curve", "check_curves", "check_eps", "check_tol"]


def check_curve(obj, name="curve"):
    """Return ``obj`` as a :class:`Curve`, accepting any ``(m, k)`` array-like."""
    if isinstance(obj, Curve):
        return obj
    try:
        return Curve(obj)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}: {exc}") from exc


def check_curves(objs, dim=None, name="curves"):
    """Convert a sequence of curves and require a common dimension.

    Parameters
    ----------
    objs : iterable
        Curves or vertex arrays.
    dim : int, optional
        Required dimension; inferred from the first curve when omitted.
    """
    if isinstance(objs, Curve) or (isinstance(objs, np.ndarray) and objs.ndim == 2):
        raise ValueError(f"{name} must be a sequence of curves, got a single array")
    curves = [check_curve(c, f"{name}[{k}]") for k, c in enumerate(objs)]
    if not curves:
        raise ValueError(f"{name} is empty")
    if dim is None:
        dim = curves[0].dim
    for k, c in enumerate(curves):
        if c.dim != dim:
            raise ValueError(f"{name}[{k}] has dimension {c.dim}, expected {dim}")
    return curves


def check_eps(eps, name="eps"):
    if isinstance(eps, bool) or not isinstance(eps, numbers.Real) or not math.isfinite(eps) or eps < 0:
        raise ValueError(f"{name} must be a finite non-negative number, got {eps!r}")
    return float(eps)


def check_tol(tol, name="tol"):
    if isinstance(tol, bool) or not isinstance(tol, numbers.Real) or not math.isfinite(tol) or tol <= 0:
        raise ValueError(f"{name} must be a finite positive number, got {tol!r}")
    return float(tol)
