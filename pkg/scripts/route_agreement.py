"""Tabulate the disagreement between transform routes over the shape grid.

Prints one row per (support, order): worst |quadrature - series|, worst
closed-form deviation, and the largest moment-series error estimate.
"""

import argparse
import itertools
import time

from rwast.distributions import IntervalBeta
from rwast.transforms import (
    AstQuery,
    ast_moment_series,
    ast_quadrature,
    closed_form_for,
    z_grid,
)

SHAPES = (0.5, 1.0, 1.5, 2.0, 3.5, 5.0)
SUPPORTS = ((0.0, 1.0), (-1.0, 1.0), (-2.0, 3.0))
ORDERS = (0.5, 1.0, 2.0, 3.5)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--reach", type=float, default=0.9, help="fraction of the radius 1/M")
    args = ap.parse_args()

    print(f"{'support':>10} {'d':>5} {'quad-series':>12} {'closed dev':>12} {'series est':>12}")
    start = time.perf_counter()
    for (a, b), d in itertools.product(SUPPORTS, ORDERS):
        pair = closed = est = 0.0
        for p, q in itertools.product(SHAPES, SHAPES):
            dist = IntervalBeta(p, q, a, b)
            form = closed_form_for(dist, d)
            for z in z_grid(dist.bound, args.points, args.reach):
                query = AstQuery(dist, d, float(z))
                v_quad = ast_quadrature(query).value
                series = ast_moment_series(query)
                pair = max(pair, abs(v_quad - series.value))
                est = max(est, series.est_error)
                if form is not None:
                    closed = max(closed, abs(form(float(z)) - v_quad))
        print(f"{f'[{a:g},{b:g}]':>10} {d:>5g} {pair:>12.2e} {closed:>12.2e} {est:>12.2e}")
    print(f"elapsed {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
