"""Randomly weighted averages S = sum_j V_j X_j and their predicted laws.

Weights come either from spacings of sorted uniforms at selected cuts
(integer block sizes only) or directly from a Dirichlet law (any positive
block sizes); the two constructions agree in distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import transforms
from .distributions import (
    CompositionSpec,
    IntervalBeta,
    dirichlet_matrix,
    order_statistic_matrix,
)
from .errors import DomainError

Path = Literal["order_statistics", "dirichlet"]
Source = Literal["thm_3_1", "thm_3_2", "cor_3_1", "cor_3_2", "none"]

SHAPE_TOL = 1e-12


@dataclass(frozen=True)
class RwaProblem:
    inputs: tuple[IntervalBeta, ...]
    blocks: tuple[float, ...]
    spec: CompositionSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "blocks", tuple(float(r) for r in self.blocks))
        if len(self.inputs) != len(self.blocks):
            raise DomainError(
                f"{len(self.inputs)} input laws for {len(self.blocks)} weight blocks"
            )
        if not self.blocks or any(not r > 0 for r in self.blocks):
            raise DomainError(f"block sizes must be positive, got {self.blocks}")
        if self.spec is not None and tuple(self.spec.blocks) != self.blocks:
            raise DomainError("composition spec disagrees with the block sizes")

    @classmethod
    def from_spec(cls, spec: CompositionSpec, inputs: Sequence[IntervalBeta]) -> "RwaProblem":
        return cls(tuple(inputs), tuple(spec.blocks), spec)

    @classmethod
    def from_blocks(cls, blocks: Sequence[float], inputs: Sequence[IntervalBeta]) -> "RwaProblem":
        """Attach a composition spec automatically when every block is an integer."""
        spec = None
        if all(float(r).is_integer() and r >= 1 for r in blocks):
            spec = CompositionSpec.from_blocks([int(r) for r in blocks])
        return cls(tuple(inputs), tuple(blocks), spec)

    @property
    def k(self) -> int:
        return len(self.inputs)

    @property
    def order(self) -> float:
        return math.fsum(self.blocks)

    def common_support(self) -> tuple[float, float] | None:
        a, b = self.inputs[0].a, self.inputs[0].b
        if all(x.a == a and x.b == b for x in self.inputs):
            return a, b
        return None

    @property
    def bound(self) -> float:
        return max(x.bound for x in self.inputs)


@dataclass(frozen=True)
class TheoremPrediction:
    result: IntervalBeta | None
    source: Source


def weight_matrix(
    problem: RwaProblem, path: Path, rng: np.random.Generator, count: int
) -> np.ndarray:
    if path == "order_statistics":
        if problem.spec is None:
            raise DomainError("order-statistics weights need integer block sizes")
        return order_statistic_matrix(problem.spec, rng, count)
    if path == "dirichlet":
        return dirichlet_matrix(problem.blocks, rng, count)
    raise DomainError(f"unknown weight path {path!r}")


def sample_rwa(
    problem: RwaProblem, path: Path, rng: np.random.Generator, count: int
) -> np.ndarray:
    """``count`` independent draws of sum_j V_j X_j, fresh weights per draw."""
    if count < 1:
        raise DomainError("count must be >= 1")
    weights = weight_matrix(problem, path, rng, count)
    xs = np.column_stack([dist.sample(rng, count) for dist in problem.inputs])
    s = np.einsum("ij,ij->i", weights, xs)
    lo = min(x.a for x in problem.inputs)
    hi = max(x.b for x in problem.inputs)
    # a convex combination can leave [lo, hi] only by rounding
    return np.clip(s, lo, hi)


def _close(u: float, v: float) -> bool:
    return abs(u - v) <= SHAPE_TOL


def predict_distribution(problem: RwaProblem) -> TheoremPrediction:
    """Match the inputs against the two closed families.

    All inputs beta(r_i+1/2, r_i+1/2) give beta(sum r + 1/2, sum r + 1/2).
    All inputs beta(s_i, r_i - s_i) give beta(sum s, sum r - sum s); that
    match is reported as the s_i = r_i/2 corollary when every input is
    symmetric, and as the power-semicircle corollary when in addition every
    input is arcsine on [-sigma, sigma] with unit blocks. The symmetric
    family is tried first; the two families cannot both match.
    """
    support = problem.common_support()
    if support is None:
        return TheoremPrediction(None, "none")
    a, b = support
    rs = problem.blocks
    total = problem.order

    if all(_close(x.p, r + 0.5) and _close(x.q, r + 0.5) for x, r in zip(problem.inputs, rs)):
        shape = total + 0.5
        return TheoremPrediction(IntervalBeta(shape, shape, a, b), "thm_3_1")

    if all(_close(x.p + x.q, r) and 0 < x.p < r for x, r in zip(problem.inputs, rs)):
        s_sum = math.fsum(x.p for x in problem.inputs)
        result = IntervalBeta(s_sum, total - s_sum, a, b)
        if not all(_close(x.p, x.q) for x in problem.inputs):
            return TheoremPrediction(result, "thm_3_2")
        arcsine_chain = (
            all(_close(r, 1.0) and _close(x.p, 0.5) for x, r in zip(problem.inputs, rs))
            and _close(a, -b)
        )
        return TheoremPrediction(result, "cor_3_2" if arcsine_chain else "cor_3_1")

    return TheoremPrediction(None, "none")


def ast_product(problem: RwaProblem, z: float) -> float:
    """prod_i AST[F_i; r_i](z), each factor by its best available route."""
    out = 1.0
    for dist, r in zip(problem.inputs, problem.blocks):
        out *= transforms.ast(dist, r, z).value
    return out


def _sqrt_arg(a: float, b: float, z: float) -> float:
    disc = 1.0 - z * (a + b) + a * b * z * z
    if disc < 0:
        raise DomainError(f"negative square-root argument at z={z}")
    return disc


def example_ast_4_1(m: int, a: float, b: float, z: float) -> float:
    """Printed transform of order m for R X_1 + (1-R) X_2 with arcsine X_1,
    beta(m-1/2, m-1/2) X_2 and R ~ beta(1, m-1)."""
    root = math.sqrt(_sqrt_arg(a, b, z))
    return (1.0 / root) * (4.0 / (2.0 - z * (a + b) + 2.0 * root)) ** (m - 1)


def example_ast_4_2(m: int, a: float, b: float, z: float) -> float:
    """Printed transform for X_1 ~ beta(3/2, 1/2), kept exactly as published.

    It equals sqrt(2) at z = 0, where every transform equals 1, so it is
    wrong as printed; the verification layer reports it against quadrature.
    """
    root = math.sqrt(_sqrt_arg(a, b, z))
    inner = 1.0 - z * a * b + root
    if inner <= 0:
        raise DomainError(f"negative square-root argument at z={z}")
    return 2.0 / math.sqrt(inner) * (4.0 / (2.0 - z * (a + b) + 2.0 * root)) ** (m - 1)


def example_4_1_problem(m: int, a: float = -1.0, b: float = 1.0) -> RwaProblem:
    return RwaProblem.from_blocks(
        (1, m - 1), (IntervalBeta(0.5, 0.5, a, b), IntervalBeta(m - 0.5, m - 0.5, a, b))
    )


def example_4_2_problem(m: int, a: float = -1.0, b: float = 1.0) -> RwaProblem:
    return RwaProblem.from_blocks(
        (1, m - 1), (IntervalBeta(1.5, 0.5, a, b), IntervalBeta(m - 0.5, m - 0.5, a, b))
    )
