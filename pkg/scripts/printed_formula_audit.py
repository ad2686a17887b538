"""Compare the printed closed form for the arcsine + beta(m-1/2, m-1/2) mix
against the transform of its claimed law, then test that law by sampling.

The printed expression is kept verbatim; it does not equal 1 at z = 0, while
the product of the input transforms and the claimed law agree everywhere.
"""

import argparse

import numpy as np

from rwast import rwa
from rwast.distributions import IntervalBeta
from rwast.transforms import AstQuery, ast_quadrature, z_grid
from rwast.verification import VerifyConfig, parse_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    config = VerifyConfig(sample_count=args.samples)
    for m in args.m:
        problem = rwa.example_4_2_problem(m, -1.0, 1.0)
        law = IntervalBeta(m + 0.5, m - 0.5, -1.0, 1.0)
        zs = z_grid(1.0)
        printed = np.array([rwa.example_ast_4_2(m, -1.0, 1.0, z) for z in zs])
        product = np.array([rwa.ast_product(problem, z) for z in zs])
        claimed = np.array([ast_quadrature(AstQuery(law, m, z)).value for z in zs])
        report = parse_check(f"example4.2:m={m}").run(config, args.seed)
        print(f"m={m}")
        print(f"  printed at z=0          {rwa.example_ast_4_2(m, -1.0, 1.0, 0.0):.12f}")
        print(f"  max |printed - claimed| {np.max(np.abs(printed - claimed)):.3e}")
        print(f"  max |product - claimed| {np.max(np.abs(product - claimed)):.3e}")
        print(f"  ratio printed/claimed   {np.min(printed / claimed):.6f} .. {np.max(printed / claimed):.6f}")
        print(f"  KS vs claimed law       {report.ks_statistic:.5f} (critical {report.ks_critical:.5f})"
              f" -> {'PASS' if report.ks_ok else 'FAIL'}")


if __name__ == "__main__":
    main()
