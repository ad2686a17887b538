"""KS distance of each Monte Carlo sample from its predicted law and from
shape-perturbed alternatives, to show how much room the threshold leaves."""

import argparse

from rwast.verification import (
    DEFAULT_SUITE,
    VerifyConfig,
    draw_sorted,
    ks_critical,
    ks_statistic,
    parse_check,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--delta", type=float, default=0.25)
    args = ap.parse_args()

    config = VerifyConfig(sample_count=args.samples)
    crit = ks_critical(args.samples, config.alpha)
    h = args.delta
    print(f"critical value {crit:.5f}")
    print(f"{'check':<34} {'true':>8} {'p+':>8} {'p-':>8} {'q+':>8} {'q-':>8}")
    for name in DEFAULT_SUITE:
        check = parse_check(name)
        if check.law is None:
            continue
        x = draw_sorted(check.problem, check.path, config, args.seed, check.check_id)
        law = check.law
        alts = [law] + [law.with_shapes(law.p + dp, law.q + dq)
                        for dp, dq in ((h, 0), (-h, 0), (0, h), (0, -h))]
        row = " ".join(f"{ks_statistic(x, f.cdf):>8.5f}" for f in alts)
        print(f"{check.check_id:<34} {row}")


if __name__ == "__main__":
    main()
