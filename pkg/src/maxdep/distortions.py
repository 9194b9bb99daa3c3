"""Limiting distortion functions D and the composite laws D(H(x)).

A distortion is a continuous distribution function on [0, 1] with D(0) = 0
and D(1) = 1.  Composed with a GEV cdf it yields the limit law of suitably
normalized dependent maxima; the variants here are the power distortion
u^theta, the Archimedean limit psi((-log u)^(1/rho)), the exchangeable
mixture limit (u^(1+theta) - u^(1-theta)) / (2*theta*log u), and quadrature
mixtures over a parametric family of distortions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_legendre

from ._numutil import bisect_increasing
from .generators import ArchGenerator, builtin_generator
from .gev import GevParams, gev_cdf


@dataclass(frozen=True)
class Distortion:
    """cdf/density/quantile bundle on [0, 1].

    density is defined on the open interval with boundary limits at 0 and 1
    (possibly infinite); quantile maps (0, 1) to (0, 1).
    """

    cdf: Callable
    density: Callable
    quantile: Callable
    tag: str = "distortion"


def _vec(fn):
    def wrapped(u):
        out = fn(np.asarray(u, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    return wrapped


def _numeric_quantile(cdf) -> Callable:
    def quantile(q):
        arr = np.atleast_1d(np.asarray(q, dtype=float))
        if np.any(arr <= 0) or np.any(arr >= 1):
            raise ValueError("quantile level must lie strictly in (0, 1)")
        out = np.array([bisect_increasing(cdf, v, 0.0, 1.0, tol=1e-13) for v in arr])
        return float(out[0]) if np.ndim(q) == 0 else out

    return quantile


def power(theta: float) -> Distortion:
    """D(u) = u^theta for theta > 0 (identity at theta = 1)."""
    if not theta > 0:
        raise ValueError(f"power exponent must be positive, got {theta}")
    return Distortion(
        cdf=_vec(lambda u: u**theta),
        density=_vec(lambda u: theta * u ** (theta - 1.0)),
        quantile=_vec(lambda q: q ** (1.0 / theta)),
        tag=f"power({theta})",
    )


def _arch_density_at_zero(g: ArchGenerator) -> float:
    # d(0) = lim_{y->inf} -psi'(y) * y^(1-rho) * e^(y^rho) / rho, probed in
    # log space at two points to classify divergence vs a finite limit.
    def h(y):
        p = float(-g.psi_prime(y))
        if p <= 0.0:  # derivative underflow: the e^(y^rho) factor cannot save it
            return -math.inf
        return math.log(p) + (1.0 - g.rho) * math.log(y) + y**g.rho - math.log(g.rho)

    h1, h2 = h(40.0), h(80.0)
    if h2 > h1 + 1.0 and h2 > 50.0:
        return math.inf
    return math.exp(h2) if h2 > -math.inf else 0.0


def _arch_density_at_one(g: ArchGenerator) -> float:
    # d(1) = -psi'(0) when rho = 1, else lim_{y->0} -psi'(y)*y^(1-rho)/rho.
    if g.rho == 1.0:
        return g.neg_psi_prime_0
    val = float(-g.psi_prime(1e-12)) * (1e-12) ** (1.0 - g.rho) / g.rho
    return math.inf if val > 1e12 else val


def archimedean_limit(g: ArchGenerator) -> Distortion:
    """D(u) = psi((-log u)^(1/rho)) with analytic density and quantile.

    Density d(u) = -psi'(y) * y^(1-rho) / (rho * u) at y = (-log u)^(1/rho),
    with the boundary limits d(1) = -psi'(0) when rho = 1 (else the y->0
    limit of the same expression) and d(0) the y->inf limit.

    Rescaling the generator shifts the distortion by a power of the argument:
    with psi_c(t) = psi(c*t) one has D_{psi_c}(u) = D_psi(u^(c^rho)).  For
    Clayton(theta), D(u) = (1 - log u)^(-1/theta) and the scaled generator
    (1 + c*t)^(-1/theta) gives (1 - c*log u)^(-1/theta) = D(u^c), since
    rho = 1 there.
    """
    rho = g.rho
    if not (0.0 < rho <= 1.0):
        raise ValueError(f"generator rho must lie in (0, 1], got {rho}")

    def cdf(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            y = (-np.log(np.where(u > 0, u, 0.5))) ** (1.0 / rho)
            core = np.asarray(g.psi(y), dtype=float)
        return np.where(u <= 0, 0.0, np.where(u >= 1, 1.0, core))

    d0 = _arch_density_at_zero(g)
    d1 = _arch_density_at_one(g)

    def density(u):
        u = np.asarray(u, dtype=float)
        inner = (u > 0) & (u < 1)
        uu = np.where(inner, u, 0.5)
        y = (-np.log(uu)) ** (1.0 / rho)
        core = -np.asarray(g.psi_prime(y), dtype=float) * y ** (1.0 - rho) / (rho * uu)
        return np.where(inner, core, np.where(u <= 0, d0, d1))

    def quantile(q):
        q = np.asarray(q, dtype=float)
        if np.any(q <= 0) or np.any(q >= 1):
            raise ValueError("quantile level must lie strictly in (0, 1)")
        return np.exp(-np.asarray(g.psi_inv(q), dtype=float) ** rho)

    return Distortion(_vec(cdf), _vec(density), _vec(quantile), tag=f"arch-limit[{g.tag}]")


def efgm_limit(theta: float) -> Distortion:
    """Exchangeable-mixture limit (u^(1+theta) - u^(1-theta))/(2*theta*log u).

    Symmetric in theta (the theta and -theta mixtures share one limit) and
    extended by continuity with D(1) = 1; near u = 1 the 0/0 form is replaced
    by the series u*(1 + (theta*log u)^2/6 + ...).
    """
    if not (-1.0 <= theta <= 1.0) or theta == 0.0:
        raise ValueError(f"theta must lie in [-1, 1] and differ from 0, got {theta}")

    def cdf(u):
        u = np.asarray(u, dtype=float)
        inner = (u > 0) & (u < 1)
        uu = np.where(inner, u, 0.5)
        L = np.log(uu)
        near1 = np.abs(L) < 1e-8
        Ls = np.where(near1, 1.0, L)
        direct = (uu ** (1.0 + theta) - uu ** (1.0 - theta)) / (2.0 * theta * Ls)
        series = uu * (1.0 + (theta * L) ** 2 / 6.0)
        core = np.where(near1, series, direct)
        return np.where(inner, core, np.where(u <= 0, 0.0, 1.0))

    def density(u):
        # d(u) = [((1+t)u^t - (1-t)u^-t) L - (u^t - u^-t)] / (2 t L^2), L = log u.
        # The u^-t term dominates near 0, so d(0+) = +inf; d(1) = 1.
        u = np.asarray(u, dtype=float)
        inner = (u > 0) & (u < 1)
        uu = np.where(inner, u, 0.5)
        L = np.log(uu)
        near1 = np.abs(L) < 1e-7
        Ls = np.where(near1, 1.0, L)
        a = uu**theta
        b = uu ** (-theta)
        direct = (((1.0 + theta) * a - (1.0 - theta) * b) * Ls - (a - b)) / (2.0 * theta * Ls**2)
        core = np.where(near1, 1.0, direct)
        return np.where(inner, core, np.where(u <= 0, np.inf, 1.0))

    dist_cdf = _vec(cdf)
    return Distortion(
        dist_cdf,
        _vec(density),
        _numeric_quantile(dist_cdf),
        tag=f"efgm({theta})",
    )


def parameter_mixture(components: Sequence[Distortion], weights: Sequence[float], tag: str = "mixture") -> Distortion:
    """Finite mixture sum_i w_i * D_i; weights must sum to 1."""
    w = np.asarray(weights, dtype=float)
    if len(components) != w.size or w.size == 0:
        raise ValueError("components and weights must have equal nonzero length")
    if abs(w.sum() - 1.0) > 1e-9 or np.any(w < 0):
        raise ValueError("weights must be nonnegative and sum to 1")
    comps = list(components)

    def cdf(u):
        return sum(wi * np.asarray(c.cdf(u), dtype=float) for wi, c in zip(w, comps))

    def density(u):
        return sum(wi * np.asarray(c.density(u), dtype=float) for wi, c in zip(w, comps))

    dist_cdf = _vec(cdf)
    return Distortion(dist_cdf, _vec(density), _numeric_quantile(dist_cdf), tag=tag)


def mixture_over_interval(make: Callable[[float], Distortion], a: float, b: float, nodes: int = 64, tag: str = "mixture") -> Distortion:
    """Uniform mixture over theta in (a, b) via Gauss-Legendre quadrature."""
    x, w = roots_legendre(nodes)
    thetas = 0.5 * (b - a) * x + 0.5 * (a + b)
    # the interval Jacobian (b-a)/2 and the uniform density 1/(b-a) reduce to
    # a flat factor 1/2 on the reference weights
    return parameter_mixture([make(t) for t in thetas], 0.5 * w, tag=tag)


def amh_uniform_mixture(nodes: int = 64) -> Distortion:
    """Uniform-parameter mixture of the AMH limit distortions on theta in (0,1).

    The closed form of this mixture is 1 - ((u-1)/u) * log(1-u); the
    quadrature construction here is kept as an independent route and checked
    against that expression in the tests.
    """
    return mixture_over_interval(
        lambda th: archimedean_limit(builtin_generator("amh", th)),
        0.0,
        1.0,
        nodes=nodes,
        tag="amh-uniform-mixture",
    )


def make_distortion(variant: str, **params) -> Distortion:
    v = variant.lower().replace("_", "-")
    if v == "power":
        return power(params["theta"])
    if v in ("archimedean", "arch-limit", "archimedean-limit"):
        g = params.get("generator")
        if g is None:
            g = builtin_generator(params["family"], params.get("theta"))
        return archimedean_limit(g)
    if v == "efgm":
        return efgm_limit(params["theta"])
    if v in ("amh-mixture", "amh-uniform-mixture"):
        return amh_uniform_mixture(params.get("nodes", 64))
    raise ValueError(f"unknown distortion variant {variant!r}")


def distortion_density(D: Distortion, u):
    """Density of D at u, including boundary limits (may be infinite)."""
    return D.density(u)


def limit_law_cdf(D: Distortion, H: GevParams, x):
    """Composite limit law D(H(x)); a distribution function on the reals."""
    return D.cdf(gev_cdf(H, x))


def max_stability_defect(Gcdf: Callable, k: int, grid) -> float:
    """How far G is from being max-stable of its own type.

    Fits the affine map (a, b) sending the 0.25/0.75 quantiles of G^k onto
    those of G, then reports the grid supremum of |G(x)^k - G(a*x + b)|.
    Near zero iff G^k is an affine re-parameterization of G, i.e. G is
    max-stable.  Quantiles are inverted by bisection over the grid range.
    """
    if not (isinstance(k, (int, np.integer)) and k >= 2):
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    grid = np.asarray(grid, dtype=float)
    lo, hi = float(grid.min()), float(grid.max())
    gvals = np.asarray(Gcdf(grid), dtype=float)
    need = [0.25 ** (1.0 / k), 0.75 ** (1.0 / k), 0.25, 0.75]
    if not (gvals.min() <= min(need) and gvals.max() >= max(need)):
        raise ValueError("grid does not cover the quartile range of G and G^k")

    def ginv(q):
        return bisect_increasing(lambda x: float(Gcdf(x)), q, lo, hi, tol=1e-13)

    xq = [ginv(0.25 ** (1.0 / k)), ginv(0.75 ** (1.0 / k))]
    yq = [ginv(0.25), ginv(0.75)]
    if xq[1] - xq[0] <= 0:
        raise ValueError("degenerate cdf on grid")
    a = (yq[1] - yq[0]) / (xq[1] - xq[0])
    b = yq[0] - a * xq[0]
    diff = np.abs(np.asarray(Gcdf(grid), dtype=float) ** k - np.asarray(Gcdf(a * grid + b), dtype=float))
    return float(diff.max())
