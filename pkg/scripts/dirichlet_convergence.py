"""Empirical Lambda-weighted counts of restricted prime powers in a residue
class against the exact density constant, for a range of N."""
import argparse

from rdprimes.density import kappa, verify_dirichlet
from rdprimes.digits import new_digit_system, parse_digit_list


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", type=int, default=10)
    ap.add_argument("--exclude", default="7")
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--Nmax", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    ds = new_digit_system(args.base, parse_digit_list(args.exclude))
    k = kappa(ds, args.q, args.t)
    print(f"{ds.spec()}  q={args.q} t={args.t}  kappa={k}")
    rep = verify_dirichlet(ds, args.q, args.t, range(1, args.Nmax + 1), args.workers)
    print(f"{'N':>3} {'empirical':>16} {'predicted':>16} {'ratio':>10}")
    for r in rep.rows:
        ratio = f"{r.ratio:10.6f}" if r.ratio is not None else "       n/a"
        print(f"{r.N:>3} {r.empirical:16.4f} {r.predicted:16.4f} {ratio}")
    if rep.small_prime_powers:
        print("obstructed class; prime powers found:", rep.small_prime_powers)


if __name__ == "__main__":
    main()
