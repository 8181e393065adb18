"""Discretised circle method on the grid a / b^N.

Every grid point x + m/b^N used here is handled through its integer m, so
"b^N l/d + eta is an integer" is built into the indexing rather than
checked in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .arith import convergents_of, dirichlet_approx, euler_phi, mobius
from .digits import DigitSystem
from .errors import PreconditionError, budget, require
from .fourier import BoundReport, REFERENCE_CONSTANT, chat, chat_points
from .frequency import Frequency, e
from .reduce import pairwise_sum
from .sieve import (ResidueClass, lambda_exp_sum, lambda_transform_grid,
                    lambda_weighted_sum, von_mangoldt_transform)

ARC_BUDGET = 10**4


@dataclass(frozen=True)
class ArcPoint:
    a: int
    ell: int
    d: int
    eta: Fraction
    N: int


@dataclass(frozen=True)
class ReductionParameters:
    A: float = 1.0
    Aprime: float = 1.0
    B: float = 2.0
    D0: int | None = None
    cutoff: float | None = None  # explicit d-cutoff, overrides log^A'(b^N)

    def arc_cutoff(self, b: int, N: int) -> float:
        if self.cutoff is not None:
            return self.cutoff
        return math.log(b**N) ** self.Aprime if N else 1.0

    def dirichlet_cutoff(self, b: int, N: int) -> int:
        return self.D0 if self.D0 is not None else max(1, math.isqrt(b**N))


def minimal_aprime(A: float, alpha: float) -> float:
    """Smallest admissible arc exponent, 4 + 2A/(1/5 - alpha); needs alpha < 1/5."""
    if alpha >= 0.2:
        raise PreconditionError(
            f"alpha = {alpha:.4f} >= 1/5: no arc exponent A' satisfies A' > 4 + 2A/(1/5 - alpha)")
    return 4 + 2 * A / (0.2 - alpha)


# -- arcs -------------------------------------------------------------------

def arc_point(a: int, N: int, b: int, D0: int) -> ArcPoint:
    """a/b^N = l/d + eta/b^N using the convergent of smallest d <= D0 with
    |a/b^N - l/d| <= 1/(d D0). The last convergent below D0 always qualifies."""
    require(D0 >= 1, "D0 must be >= 1")
    M = b**N
    x = Fraction(a, M)
    for c in convergents_of(x, 64):
        if c.denominator > D0:
            break
        if abs(x - c) <= Fraction(1, c.denominator * D0):
            return ArcPoint(a, c.numerator, c.denominator, M * (x - c), N)
    r = dirichlet_approx(x, D0)
    return ArcPoint(a, r.ell, r.d, M * (x - Fraction(r.ell, r.d)), N)


def arc_decomposition(ds: DigitSystem, N: int, D0: int | None = None) -> list[ArcPoint]:
    """Assign every a in [0, b^N) its Dirichlet approximation
    a/b^N = l/d + eta/b^N with d <= D0 (default floor(b^{N/2}))."""
    M = ds.base**N
    budget(M <= 10**7, f"b^N = {M} exceeds the arc enumeration budget 1e7")
    D0 = D0 if D0 is not None else max(1, math.isqrt(M))
    require(D0 >= 1, "D0 must be >= 1")
    return [arc_point(a, N, ds.base, D0) for a in range(M)]


# -- inversion --------------------------------------------------------------

def _geometric(eta: np.ndarray, f: float, M: int) -> np.ndarray:
    """sum_{k<M} e(-k eta / M) for eta = j - f with integer j (so e(-eta) = e(f))."""
    out = np.full(eta.shape, float(M), dtype=np.complex128)
    nz = eta != 0
    out[nz] = (1 - e(f)) / (1 - e(-eta[nz] / M))
    return out


def _inversion_terms(ds: DigitSystem, N: int, theta: Frequency, x: Frequency,
                     window: float | None):
    """Terms chat(theta + x + eta/b^N) * sum_k e(-k eta/b^N) for eta in
    [-b^N/2, b^N/2) with b^N x + eta integral, optionally only |eta| < window.

    Writing eta = j - f with f = frac(b^N x), the point theta + x + eta/b^N is
    theta + (floor(b^N x) + j)/b^N, an exact grid shift of theta.
    """
    M = ds.base**N
    mx = M * x.as_fraction()
    floor_mx = math.floor(mx)
    f = float(mx - floor_mx)
    lo = -(M // 2)
    js = np.arange(lo, lo + M + 1, dtype=np.int64)
    eta = js - f
    keep = (eta >= -M / 2) & (eta < M / 2)
    if window is not None:
        keep &= np.abs(eta) < window
    js, eta = js[keep], eta[keep]
    vals, errs = chat_points(ds, N, theta, [(js + floor_mx % M, M)])
    return vals, errs, _geometric(eta, f, M)


def inversion_complete(ds: DigitSystem, N: int, theta: Frequency, x: Frequency) -> BoundReport:
    """Completed inversion identity: sum_eta chat(theta+x+eta/b^N) sum_k e(-k eta/b^N)
    = b^N chat(theta+x); lhs is the deviation |lhs - rhs| relative to b^N (b-s)^N."""
    M = ds.base**N
    budget(M <= 10**5, f"b^N = {M} exceeds the inversion budget 1e5")
    vals, errs, geo = _inversion_terms(ds, N, theta, x, None)
    lhs = complex(pairwise_sum(list(vals * geo)))
    rhs = M * chat(ds, N, theta + x).value
    scale = M * ds.size**N
    dev = abs(lhs - rhs) / scale
    return BoundReport(dev, 1e-8, {"system": ds.spec(), "N": N, "theta": theta.spec(),
                                   "x": x.spec(), "lhs": [lhs.real, lhs.imag],
                                   "rhs": [rhs.real, rhs.imag], "relativeDeviation": dev})


@dataclass
class TruncationReport:
    truncated: complex
    target: complex
    deviation: float
    normalized: float
    window: float
    terms: int

    def to_dict(self) -> dict[str, Any]:
        return {"truncated": [self.truncated.real, self.truncated.imag],
                "target": [self.target.real, self.target.imag],
                "deviation": self.deviation, "normalizedDeviation": self.normalized,
                "window": self.window, "terms": self.terms}


def inversion_truncated(ds: DigitSystem, N: int, theta: Frequency, x: Frequency,
                        Bexp: float | None = None, A: float = 1.0,
                        window: float | None = None) -> TruncationReport:
    """Sum over |eta| < log^B(b^N) only; deviation from b^N chat(theta + x),
    normalised by b^N (b-s)^N / log^A(b^N)."""
    M = ds.base**N
    budget(M <= 10**5, f"b^N = {M} exceeds the inversion budget 1e5")
    if window is None:
        require(Bexp is not None, "give Bexp or window")
        window = math.log(M) ** Bexp if M > 1 else 1.0
    vals, _, geo = _inversion_terms(ds, N, theta, x, window)
    trunc = complex(pairwise_sum(list(vals * geo)))
    target = M * chat(ds, N, theta + x).value
    dev = abs(trunc - target)
    norm = M * ds.size**N / (math.log(M) ** A if M > 1 else 1.0)
    return TruncationReport(trunc, target, dev, dev / norm, window, int(vals.size))


# -- reduction to small denominators -----------------------------------------

def squarefree_upto(cutoff: float) -> list[int]:
    return [d for d in range(1, math.ceil(cutoff)) if d < cutoff and mobius(d) != 0]


def reduced_main_term(ds: DigitSystem, N: int, theta: Frequency,
                      params: ReductionParameters = ReductionParameters()) -> complex:
    """sum_{d < cutoff} mu(d)/phi(d) sum_{(l,d)=1} chat(theta + l/d)."""
    cutoff = params.arc_cutoff(ds.base, N)
    budget(cutoff <= ARC_BUDGET, f"arc cutoff {cutoff:.1f} exceeds the budget 1e4")
    parts = []
    for d in squarefree_upto(cutoff):
        ells = np.array([l for l in range(d) if math.gcd(l, d) == 1], dtype=np.int64)
        vals, _ = chat_points(ds, N, theta, [(ells, d)])
        parts.append(mobius(d) / euler_phi(d) * complex(pairwise_sum(list(vals))))
    return complex(pairwise_sum(parts)) if parts else 0j


def orthogonality_oracle(ds: DigitSystem, N: int, theta: Frequency, workers: int = 1) -> complex:
    """sum_t e(t p/q) * lambda_weighted_sum(q, t) for rational theta = p/q."""
    require(theta.is_rational, "oracle needs a rational theta")
    p, q = theta.rational.numerator, theta.rational.denominator
    terms = [complex(e((t * p % q) / q)) * lambda_weighted_sum(ds, N, ResidueClass(q, t), workers)
             for t in range(q)]
    return complex(pairwise_sum(terms))


@dataclass
class ReductionComparison:
    N: int
    direct: complex
    reduced: complex
    discrepancy: float
    normalized: float
    alpha_flag: bool
    oracle: complex | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {"N": self.N, "direct": [self.direct.real, self.direct.imag],
               "reducedMainTerm": [self.reduced.real, self.reduced.imag],
               "discrepancy": self.discrepancy, "normalizedDiscrepancy": self.normalized,
               "alphaFlag": self.alpha_flag}
        if self.oracle is not None:
            out["orthogonalityOracle"] = [self.oracle.real, self.oracle.imag]
        return out


def compare_direct_vs_reduced(ds: DigitSystem, N: int, theta: Frequency,
                              params: ReductionParameters = ReductionParameters(),
                              workers: int = 1) -> ReductionComparison:
    direct = lambda_exp_sum(ds, N, theta, workers)
    reduced = reduced_main_term(ds, N, theta, params)
    oracle = orthogonality_oracle(ds, N, theta, workers) if theta.is_rational \
        and theta.rational.denominator <= 64 else None
    disc = abs(direct - reduced)
    return ReductionComparison(N, direct, reduced, disc, disc / ds.size**N,
                               ds.constants().alpha < 0.2, oracle)


# -- minor arcs ----------------------------------------------------------------

def _arc_grid(b: int, N: int, D: int, eta_ok) -> np.ndarray:
    """Integers m with m/b^N = l/d + eta/b^N, d ~ D, (l, d) = 1, eta_ok(|eta|)."""
    M = b**N
    ms = []
    for d in range(D, 2 * D):
        for ell in range(d):
            if math.gcd(ell, d) != 1:
                continue
            centre = Fraction(M * ell, d)
            radius = eta_ok.radius
            for m in range(math.floor(centre - radius), math.ceil(centre + radius) + 1):
                if eta_ok(abs(m - centre)):
                    ms.append(m)
    return np.asarray(ms, dtype=np.int64)


class _Band:
    def __init__(self, lo: float, hi: float):
        self.lo, self.hi, self.radius = lo, hi, hi

    def __call__(self, r) -> bool:
        return self.lo <= r < self.hi


def minor_arc_report(ds: DigitSystem, N: int, D: int, B: float, D0: int,
                     theta: Frequency) -> tuple[BoundReport, BoundReport]:
    """Both minor-arc sums against N^4 b^N (b-s)^N (...); ratios only."""
    M = ds.base**N
    budget(M <= 10**7, f"b^N = {M} exceeds the minor-arc budget 1e7")
    require(1 <= D <= D0, f"need 1 <= D <= D0 (D={D}, D0={D0})")
    require(D0 * D0 <= M, f"need D0 <= b^(N/2) (D0={D0})")
    require(1 <= B and B * D0 * D <= M, f"need 1 <= B <= b^N/(D0 D) (B={B})")
    alpha = ds.constants().alpha
    pre = N**4 * M * ds.size**N
    ctx = {"system": ds.spec(), "N": N, "D": D, "B": B, "D0": D0, "theta": theta.spec(),
           "alpha": alpha, "alphaBelowFifth": alpha < 0.2}

    def side(ms):
        if ms.size == 0:
            return 0.0
        cv, _ = chat_points(ds, N, theta, [(ms, M)])
        lv = lambda_transform_grid(M, ms, sign=-1)
        return float(pairwise_sum(list(np.abs(cv * lv))))

    lhs1 = side(_arc_grid(ds.base, N, D, _Band(B, 2 * B)))
    rhs1 = pre * ((D * D * B) ** (alpha - 0.2) + M**alpha / math.sqrt(D0))
    lhs2 = side(_arc_grid(ds.base, N, D, _Band(0, 1)))
    rhs2 = pre * (D ** (alpha - 0.2) + D ** (2 * alpha + 0.5) / math.sqrt(M))
    return (BoundReport(lhs1, rhs1, dict(ctx, band="|eta| ~ B"), constant=REFERENCE_CONSTANT),
            BoundReport(lhs2, rhs2, dict(ctx, band="|eta| < 1"), constant=REFERENCE_CONSTANT))


# -- exceptional rationals -------------------------------------------------------

@dataclass
class ExceptionalScan:
    N: int
    threshold: float
    cutoff: float
    hits: list[tuple[int, int, int, float]] = field(default_factory=list)  # (u, v, l, |chat|)
    n0: int | None = None

    def distinct_v(self) -> dict[int, list[int]]:
        out: dict[int, set[int]] = {}
        for u, v, _, _ in self.hits:
            out.setdefault(u, set()).add(v)
        return {u: sorted(vs) for u, vs in out.items()}

    @property
    def unique_per_u(self) -> bool:
        return all(len(vs) <= 1 for vs in self.distinct_v().values())

    @property
    def uniqueness_checked(self) -> bool:
        return self.n0 is not None and self.N >= self.n0

    def to_dict(self) -> dict[str, Any]:
        return {"N": self.N, "threshold": self.threshold, "cutoff": self.cutoff,
                "hits": [list(h) for h in self.hits], "distinctV": self.distinct_v(),
                "uniquePerU": self.unique_per_u, "n0": self.n0,
                "uniquenessChecked": self.uniqueness_checked}


def exceptional_rational_scan(ds: DigitSystem, N: int, theta: Frequency,
                              Aprime: float = 1.0, cutoff: float | None = None,
                              n0: int | None = None) -> ExceptionalScan:
    """All (u, v, l) with u | b squarefree, v < cutoff/u, gcd(v, b) = 1 and
    (l, uv) = 1 where |chat(theta + l/(uv))| > (b-s)^N exp(-N^{2/3}/b)."""
    b = ds.base
    require(N >= 1, "N must be >= 1")
    if cutoff is None:
        cutoff = math.log(b**N) ** Aprime
    budget(cutoff <= ARC_BUDGET, f"cutoff {cutoff:.1f} exceeds the budget 1e4")
    thr = ds.size**N * math.exp(-(N ** (2 / 3)) / b)
    scan = ExceptionalScan(N, thr, cutoff, n0=n0)
    us = [u for u in range(1, b + 1) if b % u == 0 and mobius(u) != 0]
    for u in us:
        for v in range(1, math.ceil(cutoff / u) + 1):
            if v >= cutoff / u or math.gcd(v, b) != 1:
                continue
            q = u * v
            ells = np.array([l for l in range(q) if math.gcd(l, q) == 1], dtype=np.int64)
            vals, errs = chat_points(ds, N, theta, [(ells, q)])
            mags = np.abs(vals)
            for l, mag, err in zip(ells.tolist(), mags.tolist(), errs.tolist()):
                if mag + err > thr:
                    scan.hits.append((u, v, l, mag))
    return scan


# -- arc reduction main term -------------------------------------------------------

def arc_reduction_check(ds: DigitSystem, N: int, d: int, ell: int, eta: int = 0,
                        C: float = 1.0, workers: int = 1) -> BoundReport:
    """Lambda-hat(-l/d - eta/b^N) against mu(d)/phi(d) sum_k e(-eta k/b^N);
    the deviation is normalised by b^N / log^C(b^N)."""
    M = ds.base**N
    require(1 <= d <= 100, "d must lie in [1, 100]")
    require(math.gcd(ell, d) == 1, "l must be coprime to d")
    budget(M <= 10**8, f"b^N = {M} exceeds the budget 1e8")
    point = Frequency(-Fraction(ell, d) - Fraction(eta, M))
    lhs = von_mangoldt_transform(ds.base, N, point, workers)
    geo = M if eta % M == 0 else 0  # sum_k e(-eta k / M) for integer eta
    main = mobius(d) / euler_phi(d) * geo
    dev = abs(lhs - main)
    norm = M / math.log(M) ** C
    return BoundReport(dev, norm, {"N": N, "d": d, "ell": ell, "eta": eta, "C": C,
                                   "lambdaHat": [lhs.real, lhs.imag], "mainTerm": main,
                                   "squarefree": mobius(d) != 0},
                       constant=REFERENCE_CONSTANT)
