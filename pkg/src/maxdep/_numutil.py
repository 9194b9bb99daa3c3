"""Small numeric helpers shared across modules."""

from __future__ import annotations

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_max(f, a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section maximization of f on [a, b].

    Returns (x, f(x)).  Assumes a single interior maximum on the bracket;
    used as a refinement step around a grid argmax, where that holds.
    """
    a, b = (a, b) if a <= b else (b, a)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    steps = max(1, int(math.ceil(math.log(tol / h) / math.log(INV_PHI))))
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(steps):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
    x = c if yc > yd else d
    return x, max(yc, yd)


def bisect_increasing(f, target: float, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Solve f(x) = target for nondecreasing f by bisection on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if not (flo <= target <= fhi):
        raise ValueError("target not bracketed by [f(lo), f(hi)]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
