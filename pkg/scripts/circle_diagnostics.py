"""Direct exponential sum over restricted primes against its small-denominator
reduction, the exceptional-rational scan, and the minor-arc ratios."""
import argparse

from rdprimes.circle import (ReductionParameters, compare_direct_vs_reduced,
                             exceptional_rational_scan, minor_arc_report)
from rdprimes.digits import new_digit_system, parse_digit_list
from rdprimes.frequency import parse_theta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", type=int, default=10)
    ap.add_argument("--exclude", default="7")
    ap.add_argument("--theta", default="golden")
    ap.add_argument("--Nmax", type=int, default=7)
    args = ap.parse_args()

    ds = new_digit_system(args.base, parse_digit_list(args.exclude))
    print(f"{ds.spec()}  alpha={ds.constants().alpha:.4f}")
    print(f"{'N':>3} {'|direct|':>14} {'|reduced|':>14} {'normalized':>12}")
    for N in range(3, args.Nmax + 1):
        th = parse_theta(args.theta, N, ds.base)
        c = compare_direct_vs_reduced(ds, N, th, ReductionParameters())
        print(f"{N:>3} {abs(c.direct):14.3f} {abs(c.reduced):14.3f} {c.normalized:12.6f}")

    N = 30
    scan = exceptional_rational_scan(ds, N, parse_theta(args.theta, N, ds.base), cutoff=20)
    print(f"\nexceptional scan N={N}: hits per u = {scan.distinct_v()}, unique={scan.unique_per_u}")

    for r in minor_arc_report(ds, 5, 2, 5, 316, parse_theta(args.theta, 5, ds.base)):
        print(f"minor arcs [{r.context['band']}]: ratio {r.ratio:.3e}")


if __name__ == "__main__":
    main()
