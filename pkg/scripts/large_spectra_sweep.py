"""Count of large Fourier points in an interval against |I|^(2 log 2/log b) lam^c_b.

At lam = 1 and theta = 0 every k = 0 mod b^N attains the maximum, so the
count grows like |I|/b^N once the interval is longer than b^N. This sweep
shows where that overtakes the power of |I|.
"""
import argparse
import math

from rdprimes.digits import new_digit_system, parse_digit_list
from rdprimes.fourier import large_spectra_count
from rdprimes.frequency import parse_theta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", type=int, default=10)
    ap.add_argument("--exclude", default="7")
    ap.add_argument("--theta", default="0")
    ap.add_argument("--lam", type=float, default=1.0)
    ap.add_argument("--Nmax", type=int, default=5)
    args = ap.parse_args()

    ds = new_digit_system(args.base, parse_digit_list(args.exclude))
    print(f"{ds.spec()}  theta={args.theta}  lambda={args.lam}")
    print(f"{'N':>3} {'|I|':>7} {'count':>7} {'rhs':>12} {'ok':>4}")
    for N in range(1, args.Nmax + 1):
        th = parse_theta(args.theta, N, ds.base)
        for e in range(0, 5):
            size = 10**e
            r = large_spectra_count(ds, N, th, (0, size), args.lam)
            rhs = f"{r.rhs:12.1f}" if math.isfinite(r.rhs) else f"e^{r.log_rhs:.0f}".rjust(12)
            print(f"{N:>3} {size:>7} {int(r.lhs):>7} {rhs} {'yes' if r.satisfied else 'NO':>4}")


if __name__ == "__main__":
    main()
