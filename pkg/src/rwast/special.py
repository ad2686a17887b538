"""Scalar special functions: log-gamma, beta, incomplete beta, 2F1.

The Gauss hypergeometric function uses the argument order

    F(c, a; b; z) = sum_n (c)_n (a)_n / ((b)_n n!) z^n

so that the Euler integral reads

    F(c, a; b; z) = 1/B(a, b-a) * int_0^1 t^(a-1) (1-t)^(b-a-1) (1-zt)^(-c) dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import special as _sp

from . import quadrature
from .errors import ConvergenceError, DomainError

SERIES_CAP = 10_000
SERIES_RTOL = 1e-15

Route = Literal["series", "euler_integral"]


# (-1)^k zeta(k) / k for k = 2..40: Taylor coefficients of ln Gamma(1 + e)
_LGAMMA_TAYLOR = tuple(
    (-1) ** k * float(_sp.zeta(k)) / k for k in range(2, 41)
)
_ROOT_WINDOW = 0.25


def _lgamma_near_one(e: float) -> float:
    # ln Gamma(1 + e) = -gamma e + sum_k (-1)^k zeta(k)/k e^k, |e| < 1
    acc = 0.0
    for c in reversed(_LGAMMA_TAYLOR):
        acc = (acc + c) * e
    return (acc - np.euler_gamma) * e


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0.

    Near the zeros at x = 1 and x = 2 a Taylor series keeps the relative
    error small, which the libm routine does not.
    """
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    if abs(x - 1.0) < _ROOT_WINDOW:
        return _lgamma_near_one(x - 1.0)
    if abs(x - 2.0) < _ROOT_WINDOW:
        e = x - 2.0
        return math.log1p(e) + _lgamma_near_one(e)
    return math.lgamma(x)


def log_beta(p: float, q: float) -> float:
    if not (p > 0 and q > 0):
        raise DomainError(f"beta function needs p, q > 0, got ({p}, {q})")
    return log_gamma(p) + log_gamma(q) - log_gamma(p + q)


def beta_fn(p: float, q: float) -> float:
    """B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), evaluated in log space."""
    return math.exp(log_beta(p, q))


def rising_factorial(a: float, n: int) -> float:
    if n < 0:
        raise DomainError(f"rising factorial needs n >= 0, got {n}")
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def reg_inc_beta(x, p: float, q: float):
    """Regularized incomplete beta I_x(p, q); accepts scalars or arrays."""
    if not (p > 0 and q > 0):
        raise DomainError(f"incomplete beta needs p, q > 0, got ({p}, {q})")
    xa = np.asarray(x, dtype=float)
    if np.any(~((xa >= 0.0) & (xa <= 1.0))):
        raise DomainError("incomplete beta needs 0 <= x <= 1")
    out = _sp.betainc(p, q, xa)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Hyp2F1Params:
    c: float
    a: float
    b: float
    z: float

    def __post_init__(self):
        if not -1.0 < self.z < 1.0:
            raise DomainError(f"2F1 is only supported for |z| < 1, got z={self.z}")


def _nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def _series(c: float, a: float, b: float, z: float) -> float:
    term = 1.0
    total = 1.0
    for n in range(SERIES_CAP):
        ratio = (c + n) * (a + n) / ((b + n) * (n + 1)) * z
        term *= ratio
        total += term
        if term == 0.0:
            return total
        if abs(term) < SERIES_RTOL * abs(total) and abs(ratio) < 1.0:
            return total
    raise ConvergenceError(f"2F1 series did not converge in {SERIES_CAP} terms")


def hyp2f1(params: Hyp2F1Params, route: Route = "series") -> float:
    c, a, b, z = params.c, params.a, params.b, params.z
    if route == "series":
        if _nonpositive_integer(b):
            raise DomainError("2F1 series needs b not a non-positive integer")
        if z < 0.0:
            # Pfaff: keeps the summed argument in [0, 1/2) and the terms one-signed
            w = z / (z - 1.0)
            return (1.0 - z) ** (-c) * _series(c, b - a, b, w)
        return _series(c, a, b, z)
    if route == "euler_integral":
        if not b > a > 0:
            raise DomainError("Euler integral needs b > a > 0")
        res = quadrature.integrate(
            lambda t: (1.0 - z * t) ** (-c),
            0.0,
            1.0,
            alpha=a - 1.0,
            beta=b - a - 1.0,
            log_scale=-log_beta(a, b - a),
        )
        return res.value
    raise DomainError(f"unknown 2F1 route {route!r}")
