"""Compute the regression baselines from direct computation and write them
to tests/baselines.json. Run once on a known-good build; the regression and
acceptance tests compare against the frozen file afterwards."""
import argparse
import json
from fractions import Fraction
from pathlib import Path

from rdprimes.circle import ReductionParameters, compare_direct_vs_reduced, inversion_truncated
from rdprimes.density import verify_dirichlet
from rdprimes.digits import new_digit_system
from rdprimes.fourier import large_sieve_scan
from rdprimes.frequency import Frequency, parse_theta
from rdprimes.recurrence import vdc_harness, weyl_average

OUT = Path(__file__).resolve().parents[1] / "tests" / "baselines.json"


def compute() -> dict:
    ds = new_digit_system(10, [7])
    golden = lambda N: parse_theta("golden", N, 10)
    out = {}
    rep = verify_dirichlet(ds, 3, 1, range(4, 8))
    out["dirichlet_q3_t1_N7_empirical"] = rep.rows[-1].empirical
    out["dirichlet_q3_t1_ratios"] = [r.ratio for r in rep.rows]
    out["weyl_golden_N7_magnitude"] = weyl_average(ds, 1, 7, golden(7)).magnitude
    out["weyl_sqrt2_N7_magnitude"] = weyl_average(ds, 1, 7, parse_theta("sqrt2", 7, 10)).magnitude
    out["vdc_q3_golden_N6_magnitude"] = vdc_harness(ds, 3, [golden(6)], 6).rows[0].magnitude
    out["inversion_truncated_golden_N4_window20"] = \
        inversion_truncated(ds, 4, golden(4), Frequency(), window=20).normalized
    out["inversion_truncated_golden_N4_x13_window20"] = \
        inversion_truncated(ds, 4, golden(4), Frequency.rat(1, 3), window=20).normalized
    out["large_sieve_N3_D4_x03_ratio"] = \
        large_sieve_scan(ds, 3, 4, Frequency.from_fraction(Fraction(3, 10))).ratio
    out["reduce_golden_normalized"] = {
        str(N): compare_direct_vs_reduced(ds, N, golden(N), ReductionParameters()).normalized
        for N in range(4, 8)}
    d = out["reduce_golden_normalized"]
    out["reduce_golden_nonincreasing"] = all(d[str(n + 1)] <= d[str(n)] for n in range(4, 7))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    data = compute()
    args.out.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(json.dumps(data, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
