"""SVG drawing of the doubled free-space diagram and its reachability profile."""

from xml.sax.saxutils import escape

import numpy as np

from .free_space import build_free_space
from .reach_pass import assemble_profile

__all__ = ["free_region_polygon", "render_svg"]

RAYS = 48


def _dist(X, Y, u, v):
    """Distance between X(u) and Y(v) for arrays of parameters inside one cell."""
    m, n = X.m, Y.m
    i = np.minimum(np.floor(u).astype(int), 2 * m - 1)
    j = np.minimum(np.floor(v).astype(int), n - 1)
    a, b = u - i, v - j
    xs, ys = X.closed_vertices(), Y.closed_vertices()
    pu = (1 - a)[:, None] * xs[i % m] + a[:, None] * xs[i % m + 1]
    pv = (1 - b)[:, None] * ys[j] + b[:, None] * ys[j + 1]
    return np.linalg.norm(pu - pv, axis=1)


def free_region_polygon(X, Y, eps, i, j):
    """Boundary polygon of the free part of cell ``(i, j)`` (1-based), or None.

    The free part is convex, so it is star-shaped around any free point; the
    boundary is found by bisecting along rays from the freest sample.
    """
    g = np.linspace(0.0, 1.0, 9)
    gu, gv = np.meshgrid(g, g)
    u = (i - 1) + gu.ravel()
    v = (j - 1) + gv.ravel()
    d = _dist(X, Y, u, v)
    k = int(np.argmin(d))
    if d[k] > eps:
        return None
    cu, cv = u[k], v[k]
    ang = np.linspace(0.0, 2 * np.pi, RAYS, endpoint=False)
    du, dv = np.cos(ang), np.sin(ang)
    # distance along each ray to the cell boundary
    with np.errstate(divide="ignore", invalid="ignore"):
        tu = np.where(du > 0, (i - cu) / du, np.where(du < 0, (i - 1 - cu) / du, np.inf))
        tv = np.where(dv > 0, (j - cv) / dv, np.where(dv < 0, (j - 1 - cv) / dv, np.inf))
    tmax = np.minimum(tu, tv)
    lo, hi = np.zeros(RAYS), tmax.copy()
    full = _dist(X, Y, cu + du * hi, cv + dv * hi) <= eps
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        ok = _dist(X, Y, cu + du * mid, cv + dv * mid) <= eps
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    t = np.where(full, tmax, lo)
    return list(zip(cu + du * t, cv + dv * t))


def render_svg(X, Y, eps, scale=40.0):
    """SVG document of the doubled diagram.

    Blocked space is shaded dark, free space light.  Reachable pieces of the
    bottom and top rows are drawn as thick segments labeled with their
    rightmost landing and rightmost takeoff values.
    """
    grid = build_free_space(X, Y, eps)
    profile = assemble_profile(X, Y, eps, grid=grid)
    W, H = grid.width, grid.height
    m = X.m

    def y(v):
        # v grows upward in the diagram
        return H - v

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" '
        f'width="{W * scale:g}" height="{H * scale:g}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#555"/>',
    ]
    for j in range(1, H + 1):
        for i in range(1, W + 1):
            poly = free_region_polygon(X, Y, eps, i, j)
            if poly:
                pts = " ".join(f"{pu:.4f},{y(pv):.4f}" for pu, pv in poly)
                parts.append(f'<polygon points="{pts}" fill="#eee"/>')
    for i in range(W + 1):
        parts.append(f'<line x1="{i}" y1="0" x2="{i}" y2="{H}" stroke="#999" stroke-width="0.01"/>')
    for j in range(H + 1):
        parts.append(f'<line x1="0" y1="{j}" x2="{W}" y2="{j}" stroke="#999" stroke-width="0.01"/>')
    fs = 0.18
    for i in range(1, m + 1):
        e = profile.bottom[i]
        if e is None:
            continue
        parts.append(
            f'<line x1="{e.c:.4f}" y1="{y(0)}" x2="{e.d:.4f}" y2="{y(0)}" stroke="#c22" stroke-width="0.06"/>'
        )
        parts.append(
            f'<text x="{e.c:.4f}" y="{y(0) - 0.08:.4f}" font-size="{fs}" fill="#c22">'
            f"{escape(f'r={e.r_up:.3g}')}</text>"
        )
    for i in range(m + 1, W + 1):
        for t in profile.top[i]:
            label = "r=u" if t.identity else f"r={t.val:.3g}"
            parts.append(
                f'<line x1="{t.beg:.4f}" y1="{y(H)}" x2="{t.end:.4f}" y2="{y(H)}" stroke="#22c" stroke-width="0.06"/>'
            )
            parts.append(
                f'<text x="{t.beg:.4f}" y="{y(H) + 0.25:.4f}" font-size="{fs}" fill="#22c">{escape(label)}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
