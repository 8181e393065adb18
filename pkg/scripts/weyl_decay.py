"""Weyl averages of e(p theta) over restricted primes p < b^N, p = 1 mod m,
for irrational theta, alongside the van der Corput harmonics."""
import argparse

from rdprimes.digits import new_digit_system, parse_digit_list
from rdprimes.frequency import parse_theta
from rdprimes.recurrence import relative_density, vdc_harness, weyl_average


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base", type=int, default=10)
    ap.add_argument("--exclude", default="7")
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--thetas", default="golden,sqrt2")
    ap.add_argument("--Nmax", type=int, default=7)
    ap.add_argument("--q-index", type=int, default=3)
    args = ap.parse_args()

    ds = new_digit_system(args.base, parse_digit_list(args.exclude))
    names = args.thetas.split(",")
    print(f"{ds.spec()}  m={args.m}")
    print(f"{'N':>3} {'samples':>9} " + " ".join(f"{n:>12}" for n in names))
    for N in range(2, args.Nmax + 1):
        reps = [weyl_average(ds, args.m, N, parse_theta(n, N, ds.base)) for n in names]
        print(f"{N:>3} {reps[0].sample_count:>9} " + " ".join(f"{r.magnitude:12.6f}" for r in reps))
    print("relative density at Nmax:", relative_density(ds, args.m, args.Nmax))

    N = min(args.Nmax, 6)
    rep = vdc_harness(ds, args.q_index, [parse_theta(n, N + 1, ds.base) for n in names], N)
    print(f"\nshift set H_q, q! = {rep.modulus}, N={N}, |H_q| = {rep.size}")
    for r in rep.rows:
        print(f"  {r.theta:>8} h={r.harmonic}  |avg|={r.magnitude:.6f}")


if __name__ == "__main__":
    main()
