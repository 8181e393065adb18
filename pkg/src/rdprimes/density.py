"""Exact Dirichlet-type densities of digit-restricted prime powers in
residue classes, and their empirical verification."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import KappaDecomposition, euler_phi, kappa_decomposition
from .digits import DigitSystem
from .errors import budget, require
from .reduce import pairwise_sum
from .sieve import ResidueClass, _check_scale, restricted_prime_powers, segments

KAPPA_BUDGET = 10**8


@dataclass(frozen=True)
class KappaValue:
    value: Fraction
    decomposition: KappaDecomposition
    term_count: int

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


class Obstruction(enum.Enum):
    NONE = "none"
    UNIT = "unit"
    DIGIT = "digit"


def kappa(ds: DigitSystem, q: int, t: int, *, L: int | None = None,
          h: int | None = None) -> KappaValue:
    """kappa_{q,t} = b / ((b-s)^L phi(bv)) * #{n < b^L : n = t (mod u), n in C_L,
    gcd(bht + (1 - bh) n, bv) = 1}.

    C_L is the set of length-L digit strings over A. `L` and `h` may be
    overridden (L must keep u | b^L) to check that the value does not depend
    on those choices.
    """
    require(q >= 1, "q must be >= 1")
    require(0 <= t < q, f"t = {t} not in [0, {q})")
    b = ds.base
    dec = kappa_decomposition(q, b)
    if L is not None:
        require(L >= 1 and b**L % dec.u == 0, f"L = {L} does not satisfy u | b^L")
        dec = KappaDecomposition(dec.q, dec.u, dec.v, dec.h, L)
    if h is not None:
        require((b * h - 1) % dec.v == 0, f"h = {h} is not an inverse of b mod v")
        dec = KappaDecomposition(dec.q, dec.u, dec.v, h, dec.L)
    budget(b**dec.L <= KAPPA_BUDGET, f"b^L = {b}^{dec.L} exceeds the kappa budget 1e8")
    n = ds.members(dec.L)
    if dec.u > 1:
        n = n[n % dec.u == t % dec.u]
    bv = b * dec.v
    hh, tt = dec.h % bv, t % bv
    vals = (b * hh * tt + (1 - b * hh) % bv * n) % bv
    count = int(np.count_nonzero(np.gcd(vals, bv) == 1))
    value = Fraction(b * count, ds.size**dec.L * euler_phi(bv))
    return KappaValue(value, dec, count)


def obstruction(ds: DigitSystem, q: int, t: int) -> Obstruction:
    """Local reasons for kappa_{q,t} = 0: a shared factor of t and q, or a
    residue whose last j digits (b^j | q) leave the allowed set."""
    require(q >= 1 and 0 <= t < q, "need q >= 1 and 0 <= t < q")
    if math.gcd(t, q) > 1:
        return Obstruction.UNIT
    b, j = ds.base, 1
    while q % b**j == 0:
        low = t % b**j
        if not ds.contains_padded(np.array([low]), j)[0]:
            return Obstruction.DIGIT
        j += 1
    return Obstruction.NONE


def maynard_coefficient(ds: DigitSystem) -> Fraction:
    """b (phi(b) - s') / ((b - s) phi(b)), the leading constant of the
    unrestricted count; checked against kappa_{1,0}."""
    b = ds.base
    c = ds.constants()
    value = Fraction(b * (euler_phi(b) - c.s_prime), ds.size * euler_phi(b))
    k = kappa(ds, 1, 0).value
    assert value == k, (value, k)
    return value


@dataclass
class DirichletRow:
    N: int
    empirical: float
    predicted: float
    ratio: float | None
    deviation: float


@dataclass
class DirichletReport:
    system: str
    q: int
    t: int
    kappa: Fraction
    rows: list[DirichletRow] = field(default_factory=list)
    small_prime_powers: list[int] = field(default_factory=list)

    @property
    def monotone_approach(self) -> bool:
        devs = [abs(r.ratio - 1) if r.ratio is not None else r.deviation for r in self.rows]
        return all(b <= a for a, b in zip(devs, devs[1:]))

    @property
    def final_ratio(self) -> float | None:
        return self.rows[-1].ratio if self.rows else None

    def to_dict(self) -> dict:
        return {
            "system": self.system, "q": self.q, "t": self.t,
            "kappa": f"{self.kappa.numerator}/{self.kappa.denominator}",
            "kappaDecimal": float(self.kappa),
            "rows": [r.__dict__ for r in self.rows],
            "monotoneApproach": self.monotone_approach,
            "smallPrimePowers": self.small_prime_powers,
        }


def verify_dirichlet(ds: DigitSystem, q: int, t: int, Ns: range | list[int],
                     workers: int = 1) -> DirichletReport:
    """Compare sum_{n<b^N, n=t (q)} 1_C(n) Lambda(n) with kappa (b-s)^N for each N."""
    Ns = sorted(Ns)
    require(bool(Ns) and Ns[0] >= 0, "need a nonempty range of N >= 0")
    M = _check_scale(ds, Ns[-1])
    kv = kappa(ds, q, t).value
    n, p = restricted_prime_powers(ds, M, ResidueClass(q, t), workers)
    w = np.log(p.astype(np.float64))
    # per-segment partial sums of each prefix, combined pairwise
    bounds = [ds.base**N for N in Ns]
    partial_rows = []
    for lo, hi in segments(M):
        sel = (n >= lo) & (n < hi)
        nn, ww = n[sel], w[sel]
        partial_rows.append(np.array([np.sum(ww[nn < B]) for B in bounds]))
    sums = pairwise_sum(partial_rows) if partial_rows else np.zeros(len(Ns))
    rep = DirichletReport(ds.spec(), q, t, kv)
    for N, emp in zip(Ns, np.atleast_1d(sums)):
        pred = float(kv) * ds.size**N
        emp = float(emp)
        rep.rows.append(DirichletRow(N, emp, pred, emp / pred if kv > 0 else None,
                                     abs(emp - pred)))
    if kv == 0:
        rep.small_prime_powers = n.tolist()[:100]
    return rep
