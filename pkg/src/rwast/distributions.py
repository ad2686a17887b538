"""Beta laws on an interval, the power-semicircle family, and RWA weights."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError
from .special import log_beta, reg_inc_beta

# per-chunk element budget for the order-statistics sort
_SORT_CHUNK = 4_000_000


@dataclass(frozen=True)
class IntervalBeta:
    """Beta(p, q) law rescaled to the interval [a, b]."""

    p: float
    q: float
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise DomainError(f"shape parameters must be positive, got ({self.p}, {self.q})")
        if not self.a < self.b:
            raise DomainError(f"need a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def bound(self) -> float:
        """max(|a|, |b|): the radius that fixes the valid transform domain."""
        return max(abs(self.a), abs(self.b))

    @property
    def log_norm(self) -> float:
        return -log_beta(self.p, self.q) - (self.p + self.q - 1.0) * math.log(self.width)

    def with_shapes(self, p: float, q: float) -> "IntervalBeta":
        return IntervalBeta(p, q, self.a, self.b)

    def pdf(self, x):
        """Density; 0 outside (a, b), +inf at an endpoint whose exponent is negative."""
        xa = np.asarray(x, dtype=float)
        out = np.zeros_like(xa)
        inside = (xa > self.a) & (xa < self.b)
        xi = xa[inside]
        out[inside] = np.exp(
            (self.p - 1.0) * np.log(xi - self.a)
            + (self.q - 1.0) * np.log(self.b - xi)
            + self.log_norm
        )
        for end, expo in ((self.a, self.p - 1.0), (self.b, self.q - 1.0)):
            at = xa == end
            if at.any():
                if expo < 0:
                    out[at] = math.inf
                elif expo == 0:
                    out[at] = math.exp(self.log_norm + (
                        (self.q - 1.0) if end == self.a else (self.p - 1.0)
                    ) * math.log(self.width))
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        t = np.clip((xa - self.a) / self.width, 0.0, 1.0)
        return reg_inc_beta(t if t.ndim else float(t), self.p, self.q)

    def raw_moment(self, m: int) -> float:
        """E[X^m] by binomial expansion of (a + (b-a)T)^m in exact rational arithmetic."""
        if m < 0:
            raise DomainError("moment order must be >= 0")
        p, q = Fraction(self.p), Fraction(self.q)
        a, w = Fraction(self.a), Fraction(self.width)
        total = Fraction(0)
        t_moment = Fraction(1)
        for j in range(m + 1):
            if j:
                t_moment *= (p + j - 1) / (p + q + j - 1)
            total += math.comb(m, j) * a ** (m - j) * w**j * t_moment
        return float(total)

    def scaled_moments(self, count: int) -> np.ndarray:
        """E[X^m] / bound**m for m = 0..count-1 (read-only array)."""
        return _scaled_moments(self.p, self.q, self.a, self.b, count)

    @property
    def mean(self) -> float:
        return self.a + self.width * self.p / (self.p + self.q)

    @property
    def variance(self) -> float:
        s = self.p + self.q
        return self.width**2 * self.p * self.q / (s * s * (s + 1.0))

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if count < 1:
            raise DomainError("count must be >= 1")
        gp = standard_gamma(rng, self.p, count)
        gq = standard_gamma(rng, self.q, count)
        t = gp / (gp + gq)
        return self.a + self.width * t


@lru_cache(maxsize=512)
def _scaled_moments(p: float, q: float, a: float, b: float, count: int) -> np.ndarray:
    # Pearson recurrence from d/dx[(x-a)(b-x) f] = f (p(b-x) - q(x-a)):
    # (m+p+q) mu_{m+1} = (m(a+b) + pb + qa) mu_m - m ab mu_{m-1}
    bound = max(abs(a), abs(b))
    s, t = (a + b) / bound, a * b / bound**2
    pb, qa = p * b / bound, q * a / bound
    nu = np.empty(count)
    nu[0] = 1.0
    prev, cur = 0.0, 1.0
    for m in range(count - 1):
        nxt = ((m * s + pb + qa) * cur - m * t * prev) / (m + p + q)
        nu[m + 1] = nxt
        prev, cur = cur, nxt
    nu.setflags(write=False)
    return nu


def standard_gamma(rng: np.random.Generator, shape, size: int | tuple) -> np.ndarray:
    """Gamma(shape, 1) draws; shapes below 1 use the boost G(s) = G(s+1) U^(1/s)."""
    shape = np.asarray(shape, dtype=float)
    small = shape < 1.0
    g = rng.standard_gamma(np.where(small, shape + 1.0, shape), size=size)
    if np.any(small):
        u = rng.random(size=size)
        boost = np.exp(np.log(u) / shape)
        g = np.where(small, g * boost, g)
    return g


def uniform(a: float = 0.0, b: float = 1.0) -> IntervalBeta:
    return IntervalBeta(1.0, 1.0, a, b)


def arcsine(a: float = -1.0, b: float = 1.0) -> IntervalBeta:
    return IntervalBeta(0.5, 0.5, a, b)


def wigner(sigma: float = 1.0) -> IntervalBeta:
    return ps_to_beta(PowerSemicircleParams(0.0, sigma))


@dataclass(frozen=True)
class PowerSemicircleParams:
    theta: float
    sigma: float

    def __post_init__(self):
        if not self.theta > -1.5:
            raise DomainError(f"power semicircle needs theta > -3/2, got {self.theta}")
        if not self.sigma > 0:
            raise DomainError(f"power semicircle needs sigma > 0, got {self.sigma}")


def ps_to_beta(params: PowerSemicircleParams) -> IntervalBeta:
    shape = params.theta + 1.5
    return IntervalBeta(shape, shape, -params.sigma, params.sigma)


@dataclass(frozen=True)
class CompositionSpec:
    """Sample size n and selected cut indices 0 < n_1 < ... < n_{k-1} < n."""

    n: int
    cuts: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(int(c) for c in self.cuts))
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        prev = 0
        for c in self.cuts:
            if not prev < c < self.n:
                raise DomainError(
                    f"cuts must be strictly increasing inside (0, {self.n}), got {self.cuts}"
                )
            prev = c

    @classmethod
    def all_cuts(cls, n: int) -> "CompositionSpec":
        """Every order statistic selected: the plain S_n weighting."""
        return cls(n, tuple(range(1, n)))

    @classmethod
    def from_blocks(cls, blocks: Sequence[int]) -> "CompositionSpec":
        if any(int(r) != r or r < 1 for r in blocks):
            raise DomainError(f"block sizes must be positive integers, got {tuple(blocks)}")
        ends = np.cumsum([int(r) for r in blocks]).tolist()
        return cls(ends[-1], tuple(ends[:-1]))

    @property
    def k(self) -> int:
        return len(self.cuts) + 1

    @property
    def blocks(self) -> tuple[int, ...]:
        ends = (0, *self.cuts, self.n)
        return tuple(ends[j + 1] - ends[j] for j in range(self.k))


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...] = field()

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if any(v < 0 for v in w):
            raise DomainError("weights must be nonnegative")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise DomainError(f"weights must sum to 1, got {math.fsum(w)!r}")

    def __len__(self) -> int:
        return len(self.weights)


def dirichlet_matrix(r: Sequence[float], rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` Dirichlet(r) draws as rows, via normalized gamma variates."""
    r = np.asarray(r, dtype=float)
    if r.ndim != 1 or r.size == 0 or np.any(~(r > 0)):
        raise DomainError(f"Dirichlet parameters must be positive, got {r.tolist()}")
    g = standard_gamma(rng, r, (count, r.size))
    return g / g.sum(axis=1, keepdims=True)


def dirichlet_sample(r: Sequence[float], rng: np.random.Generator) -> WeightVector:
    return WeightVector(tuple(dirichlet_matrix(r, rng, 1)[0]))


def order_statistic_matrix(
    spec: CompositionSpec, rng: np.random.Generator, count: int
) -> np.ndarray:
    """Spacings of sorted uniforms at the selected cuts, one replicate per row."""
    m = spec.n - 1
    out = np.empty((count, spec.k))
    if m == 0:
        out[:] = 1.0
        return out
    cols = np.asarray(spec.cuts, dtype=int) - 1
    rows = max(1, _SORT_CHUNK // m)
    for start in range(0, count, rows):
        stop = min(count, start + rows)
        u = rng.random((stop - start, m))
        u.sort(axis=1)
        picked = u[:, cols]
        edges = np.concatenate(
            [np.zeros((stop - start, 1)), picked, np.ones((stop - start, 1))], axis=1
        )
        out[start:stop] = np.diff(edges, axis=1)
    return out


def order_statistic_weights(spec: CompositionSpec, rng: np.random.Generator) -> WeightVector:
    w = order_statistic_matrix(spec, rng, 1)[0]
    # spacings sum to 1 only up to rounding; renormalize the single vector
    return WeightVector(tuple(w / math.fsum(w)))
