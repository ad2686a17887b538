"""The additive Stieltjes transform E[(1 - zX)^(-d)] of interval beta laws.

Three independent routes: closed forms for the two shape families that
admit one, tanh-sinh quadrature against the density, and the power series
in z whose coefficients are the raw moments. Plus the algebraic bridge to
the generalized Stieltjes transform int (w - x)^(-d) dH(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from . import quadrature
from .distributions import IntervalBeta
from .errors import ConvergenceError, DomainError

Route = Literal["closed_form", "quadrature", "moment_series"]

SERIES_CAP = 10_000
SHAPE_TOL = 1e-12
_EPS = np.finfo(float).eps
_BLOCKS = (64, 512, 4096, SERIES_CAP)


@dataclass(frozen=True)
class AstQuery:
    dist: IntervalBeta
    d: float
    z: float

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError(f"transform order must be positive, got d={self.d}")
        if not abs(self.z) * self.dist.bound < 1.0:
            raise DomainError(
                f"|z| * max|support| must be < 1; got z={self.z} on "
                f"[{self.dist.a}, {self.dist.b}]"
            )


@dataclass(frozen=True)
class AstValue:
    value: float
    route: Route
    est_error: float = 0.0


def z_grid(bound: float, points: int = 21, reach: float = 0.9) -> np.ndarray:
    """Equally spaced z in [-reach/bound, reach/bound], endpoints included.

    Built from integer offsets so the grid is exactly symmetric and, for an
    odd point count, contains z = 0 exactly.
    """
    half = (points - 1) / 2.0
    return (np.arange(points) - half) / half * (reach / bound)


def ast_quadrature(q: AstQuery) -> AstValue:
    if q.z == 0.0:
        return AstValue(1.0, "quadrature", 0.0)
    dist, d, z = q.dist, q.d, q.z
    res = quadrature.integrate(
        lambda x: (1.0 - z * x) ** (-d),
        dist.a,
        dist.b,
        alpha=dist.p - 1.0,
        beta=dist.q - 1.0,
        log_scale=dist.log_norm,
    )
    return AstValue(res.value, "quadrature", res.error)


def ast_moment_series(q: AstQuery, tol: float = 1e-15) -> AstValue:
    """Sum_m (d)_m / m! * z^m * E[X^m], stopped once two successive terms
    fall below ``tol`` relative to the partial sum.

    Terms are carried as (d)_m/m! (zM)^m * E[X^m]/M^m with M = max|support|
    so nothing overflows. ``est_error`` is a geometric tail estimate from
    the last terms plus an accumulated-rounding allowance.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if q.z == 0.0:
        return AstValue(1.0, "moment_series", 0.0)
    dist, d = q.dist, q.d
    rho = q.z * dist.bound
    for count in _BLOCKS:
        m = np.arange(count - 1)
        coef = np.empty(count)
        coef[0] = 1.0
        coef[1:] = np.cumprod((d + m) / (m + 1.0) * rho)
        terms = coef * dist.scaled_moments(count)
        partial = np.cumsum(terms)
        small = np.abs(terms) < tol * np.abs(partial)
        done = np.flatnonzero(small[1:] & small[:-1])
        if done.size:
            stop = int(done[0]) + 2
            break
    else:
        raise ConvergenceError(f"moment series did not converge in {SERIES_CAP} terms")

    kept = terms[:stop]
    value = math.fsum(kept)
    # tail: continue the last nonzero pair geometrically at the limiting ratio
    ratio = min(abs(rho) * (d + stop) / (stop + 1.0), 0.999)
    last = max(abs(kept[-1]), abs(kept[-2]))
    tail = 2.0 * last / (1.0 - ratio)
    rounding = 4.0 * _EPS * (math.sqrt(stop) * float(np.sum(np.abs(kept))) + abs(value))
    return AstValue(value, "moment_series", tail + rounding)


def _check_closed_domain(a: float, b: float, z: float) -> tuple[float, float]:
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    lo, hi = 1.0 - z * a, 1.0 - z * b
    if not (lo > 0 and hi > 0):
        raise DomainError(f"z={z} outside the transform domain of [{a}, {b}]")
    return lo, hi


def ast_closed_symmetric(r: float, a: float, b: float, z: float) -> float:
    """Transform of order r of beta(r+1/2, r+1/2) on [a, b]:

        [4 / (2 - (a+b) z + 2 sqrt(1 - (a+b) z + ab z^2))]^r
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    _check_closed_domain(a, b, z)
    disc = 1.0 - (a + b) * z + a * b * z * z
    if disc < 0:
        raise DomainError("negative square-root argument")
    return (4.0 / (2.0 - (a + b) * z + 2.0 * math.sqrt(disc))) ** r


def ast_closed_general(s: float, r: float, a: float, b: float, z: float) -> float:
    """Transform of order r of beta(s, r-s) on [a, b]: (1-za)^(s-r) (1-zb)^(-s)."""
    if not 0 < s < r:
        raise DomainError(f"need 0 < s < r, got s={s}, r={r}")
    lo, hi = _check_closed_domain(a, b, z)
    return lo ** (s - r) * hi ** (-s)


def closed_form_for(dist: IntervalBeta, d: float) -> Callable[[float], float] | None:
    """The closed form that applies to ``dist`` at order ``d``, if any."""
    p, q, a, b = dist.p, dist.q, dist.a, dist.b
    if abs(p - (d + 0.5)) <= SHAPE_TOL and abs(q - (d + 0.5)) <= SHAPE_TOL:
        return lambda z: ast_closed_symmetric(d, a, b, z)
    if abs(p + q - d) <= SHAPE_TOL:
        return lambda z: ast_closed_general(p, d, a, b, z)
    return None


def ast(dist: IntervalBeta, d: float, z: float) -> AstValue:
    """Best available route: the closed form when one applies, else quadrature."""
    q = AstQuery(dist, d, z)
    closed = closed_form_for(dist, d)
    if closed is not None:
        return AstValue(closed(z), "closed_form", 0.0)
    return ast_quadrature(q)


def _real_power(z: float, d: float) -> float:
    if z > 0:
        return z**d
    if float(d).is_integer():
        return z ** int(d)
    raise DomainError("z^d is not real for z < 0 and non-integer d")


def gst_from_ast(ast_value: float, z: float, d: float) -> float:
    """int (w - x)^(-d) dH(x) at w = 1/z, given the transform value at z."""
    if z == 0:
        raise DomainError("the bridge is undefined at z = 0")
    return _real_power(z, d) * ast_value


def ast_from_gst(gst_value: float, z: float, d: float) -> float:
    """Inverse bridge: the transform at z from the GST value at w = 1/z."""
    if z == 0:
        raise DomainError("the bridge is undefined at z = 0")
    return gst_value / _real_power(z, d)
