"""The Riesz-product Fourier transform of a digit-restricted set and the
bound checks built on it.

    chat(ds, N, theta) = prod_{i<N} sum_{d in A} e(d b^i theta)

Each level is evaluated in closed form as the full geometric series minus
one geometric series per excluded run, with direct summation when the
denominator 1 - e(phase) is nearly singular.
"""
from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .arith import euler_phi
from .digits import DigitSystem
from .errors import BudgetExceeded, PreconditionError, budget, require
from .frequency import EPS, Frequency, dist_to_int, e
from .reduce import pairwise_sum

NEAR_SINGULAR = 2.0**-20
REL_TOL = 1e-9
REFERENCE_CONSTANT = 10.0
CHUNK = 1 << 16


@dataclass(frozen=True)
class EvaluatedTransform:
    value: complex
    abs_error_bound: float
    levels: int
    system: DigitSystem


@dataclass
class BoundReport:
    lhs: float
    rhs: float
    context: dict[str, Any] = field(default_factory=dict)
    constant: float = 1.0
    log_rhs: float | None = None

    @property
    def ratio(self) -> float:
        if self.log_rhs is not None and not math.isfinite(self.rhs):
            return 0.0 if self.lhs == 0 else math.exp(math.log(self.lhs) - self.log_rhs)
        if self.rhs == 0:
            return 0.0 if self.lhs == 0 else math.inf
        return self.lhs / self.rhs

    @property
    def satisfied(self) -> bool:
        if self.log_rhs is not None and not math.isfinite(self.rhs):
            return self.lhs <= 0 or math.log(self.lhs) <= self.log_rhs + math.log(self.constant) + REL_TOL
        return self.lhs <= self.constant * self.rhs * (1 + REL_TOL)

    def to_dict(self) -> dict[str, Any]:
        def clean(v):
            if isinstance(v, float) and not math.isfinite(v):
                return str(v)
            return v

        return {
            "lhs": clean(self.lhs),
            "rhs": clean(self.rhs),
            "ratio": clean(self.ratio),
            "satisfied": self.satisfied,
            "referenceConstant": self.constant,
            "logRhs": self.log_rhs,
            "context": {k: clean(v) for k, v in self.context.items()},
        }


# -- phases -----------------------------------------------------------------

Shift = tuple  # (numerators: int array, denominator: int or int array)


def level_phases(b: int, N: int, theta: Frequency, shifts: Sequence[Shift] = (),
                 npoints: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Phases b^i (theta + sum num/den) mod 1 for i < N, shape (N, P).

    Each component is reduced exactly in integers before conversion to
    float. Returns the phases and a per-level bound on their absolute error.
    """
    if npoints is None:
        npoints = max((np.size(num) for num, _ in shifts), default=1)
    phases = np.empty((N, npoints), dtype=np.float64)
    curs = []
    for num, den in shifts:
        den_a = np.asarray(den, dtype=np.int64)
        if np.any(den_a >= 2**57 // max(b, 2)):
            raise BudgetExceeded("shift denominator too large for int64 reduction")
        curs.append([np.asarray(num, dtype=np.int64) % den_a, den_a])
    trunc = theta.truncation_error()
    err = np.empty(N, dtype=np.float64)
    for i in range(N):
        acc = np.full(npoints, theta.frac_power(b, i))
        for c in curs:
            acc = acc + c[0] / c[1]
            c[0] = (c[0] * b) % c[1]
        phases[i] = acc % 1.0
        err[i] = (2 + len(curs)) * EPS + trunc * float(b) ** i
    return phases, err


def level_sums(ds: DigitSystem, phi: np.ndarray, dphi: float | np.ndarray = 0.0
               ) -> tuple[np.ndarray, np.ndarray]:
    """sum_{d in A} e(d phi) elementwise, with an absolute error bound."""
    b = ds.base
    phi = np.asarray(phi, dtype=np.float64)
    denom = 1.0 - e(phi)
    adenom = np.abs(denom)
    near = adenom < NEAR_SINGULAR
    safe = np.where(near, 1.0, denom)
    runs = ds.excluded_runs
    val = (1.0 - e(b * phi)) / safe
    for lo, hi in runs:
        val = val - (e(lo * phi) - e((hi + 1) * phi)) / safe
    lipschitz = 2 * np.pi * sum(ds.allowed) * np.asarray(dphi)
    err = (len(runs) + 1) * (2 * np.pi * b + 8) * 2 * EPS / np.where(near, 1.0, adenom)
    if near.any():
        p = phi[near]
        direct = np.zeros(p.shape, dtype=np.complex128)
        for d in ds.allowed:
            direct += e(d * p)
        val = val.copy()
        val[near] = direct
        err = np.where(near, ds.size * (2 * np.pi * b + 4) * EPS, err)
    return val, err + lipschitz


def _product(ds: DigitSystem, phases: np.ndarray, dphi: np.ndarray
             ) -> tuple[np.ndarray, np.ndarray]:
    N, P = phases.shape
    M = float(ds.size)
    value = np.ones(P, dtype=np.complex128)
    growth = np.ones(P, dtype=np.float64)
    for i in range(N):
        v, err = level_sums(ds, phases[i], dphi[i])
        value *= v
        growth *= 1.0 + err / M + 2 * EPS
    return value, M**N * (growth - 1.0)


def chat_points(ds: DigitSystem, N: int, theta: Frequency, shifts: Sequence[Shift] = (),
                npoints: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised chat at theta + shift_j for every point j; values and error bounds."""
    require(N >= 0, "N must be nonnegative")
    theta = theta.ensure_precision(N, ds.base)
    phases, dphi = level_phases(ds.base, N, theta, shifts, npoints)
    return _product(ds, phases, dphi)


def chat(ds: DigitSystem, N: int, theta: Frequency) -> EvaluatedTransform:
    vals, errs = chat_points(ds, N, theta)
    return EvaluatedTransform(complex(vals[0]), float(errs[0]), N, ds)


def _norms(ds: DigitSystem, N: int, theta: Frequency) -> np.ndarray:
    theta = theta.ensure_precision(N, ds.base)
    return np.array([dist_to_int(theta.frac_power(ds.base, i)) for i in range(N)], dtype=float)


def envelope(ds: DigitSystem, N: int, theta: Frequency) -> float:
    """prod_i min(b - s, (k + 1) / (2 ||b^i theta||)); a zero norm gives b - s."""
    M = ds.size
    k = len(ds.excluded_runs)
    out = 1.0
    for nrm in _norms(ds, N, theta):
        out *= M if nrm == 0 else min(M, (k + 1) / (2 * nrm))
    return out


def decay_envelope(ds: DigitSystem, N: int, theta: Frequency) -> float:
    """(b - s)^N exp(-(1/b) sum_i ||b^i theta||^2); needs two consecutive allowed digits."""
    if not ds.has_consecutive_pair:
        raise PreconditionError(f"{ds.spec()}: allowed digits contain no consecutive pair")
    nrm = _norms(ds, N, theta)
    return ds.size**N * math.exp(-float(np.sum(nrm**2)) / ds.base)


def _chunked_abs_sum(ds, N, theta, shifts_fn, total: int) -> float:
    parts = []
    for start in range(0, total, CHUNK):
        stop = min(start + CHUNK, total)
        vals, _ = chat_points(ds, N, theta, shifts_fn(start, stop))
        parts.append(float(np.sum(np.abs(vals))))
    return float(pairwise_sum(parts)) if parts else 0.0


# -- bound checks ---------------------------------------------------------

def l1_scan(ds: DigitSystem, N: int, x: Frequency) -> BoundReport:
    """sum_{a < b^N} |chat(x + a/b^N)| against (C0 b log b)^N."""
    M = ds.base**N
    budget(M <= 10**7, f"b^N = {M} exceeds the L1 scan budget 1e7")
    c = ds.constants()
    lhs = _chunked_abs_sum(ds, N, x, lambda lo, hi: [(np.arange(lo, hi), M)], M)
    rhs = (c.C0 * ds.base * math.log(ds.base)) ** N
    return BoundReport(lhs, rhs, {"system": ds.spec(), "N": N, "x": x.spec(), "C0": c.C0})


def _coprime_pairs(D: int) -> tuple[np.ndarray, np.ndarray]:
    ells, ds_ = [], []
    for d in range(D, 2 * D):
        for ell in range(d):
            if math.gcd(ell, d) == 1:
                ells.append(ell)
                ds_.append(d)
    return np.asarray(ells, dtype=np.int64), np.asarray(ds_, dtype=np.int64)


def large_sieve_scan(ds: DigitSystem, N: int, D: int, x: Frequency) -> BoundReport:
    """sum_{d~D} sum_{(l,d)=1} sup_eps |chat(l/d + x + eps)| against (D^2 + b^N)(C0 log b)^N.

    The sup over |eps| < 1/(10 D^2) is taken on the grid eps = j/(50 D^2),
    j = -4..4, which under-estimates the left side.
    """
    require(D >= 1, "D must be >= 1")
    evals = 9 * sum(euler_phi(d) for d in range(D, 2 * D))
    budget(evals <= 10**6, f"large sieve scan needs {evals} evaluations (> 1e6)")
    ells, dens = _coprime_pairs(D)
    grid = 50 * D * D
    best = np.zeros(ells.size)
    for j in range(-4, 5):
        vals, _ = chat_points(ds, N, x, [(ells, dens), (np.full(ells.size, j), grid)])
        best = np.maximum(best, np.abs(vals))
    c = ds.constants()
    lhs = float(pairwise_sum(list(best))) if best.size else 0.0
    rhs = (D * D + ds.base**N) * (c.C0 * math.log(ds.base)) ** N
    return BoundReport(lhs, rhs, {"system": ds.spec(), "N": N, "D": D, "x": x.spec(),
                                  "epsGrid": f"j/(50*D^2), j=-4..4"},
                       constant=REFERENCE_CONSTANT)


def hybrid_points(b: int, N: int, D: int, B: float) -> np.ndarray:
    """Integers m = b^N l/d + eta with d ~ D, (l, d) = 1, |eta| < B."""
    M = b**N
    Bf = Fraction(B)
    ms = []
    for d in range(D, 2 * D):
        for ell in range(d):
            if math.gcd(ell, d) != 1:
                continue
            centre = Fraction(M * ell, d)
            for m in range(math.floor(centre - Bf), math.ceil(centre + Bf) + 1):
                if abs(m - centre) < Bf:
                    ms.append(m)
    return np.asarray(ms, dtype=np.int64)


def hybrid_scan(ds: DigitSystem, N: int, D: int, B: float, x: Frequency) -> BoundReport:
    """sum over d ~ D, (l, d) = 1, |eta| < B with b^N l/d + eta integral of
    |chat(x + l/d + eta/b^N)|, against (b - s)^N (D^2 B)^alpha."""
    M = ds.base**N
    require(D >= 1 and B > 0, "D >= 1 and B > 0 required")
    require(B < M / (10 * D * D), f"hybrid estimate needs B < b^N/(10 D^2) = {M / (10 * D * D)}")
    c = ds.constants()
    require(c.alpha <= 1, f"hybrid estimate needs alpha <= 1 (alpha = {c.alpha:.4f})")
    ms = hybrid_points(ds.base, N, D, B)
    budget(ms.size <= 10**7, "hybrid scan exceeds 1e7 evaluations")
    lhs = _chunked_abs_sum(ds, N, x, lambda lo, hi: [(ms[lo:hi], M)], ms.size)
    rhs = ds.size**N * (D * D * B) ** c.alpha
    return BoundReport(lhs, rhs, {"system": ds.spec(), "N": N, "D": D, "B": B,
                                  "x": x.spec(), "alpha": c.alpha, "points": int(ms.size)},
                       constant=REFERENCE_CONSTANT)


def spectra_constant(b: int) -> float:
    """c_b = 4 b^3 log((b - 2)/2)."""
    return 4 * b**3 * math.log((b - 2) / 2)


def large_spectra_count(ds: DigitSystem, N: int, theta: Frequency,
                        interval: tuple[int, int], lam: float) -> BoundReport:
    """#{k in [lo, hi): |chat(theta + k/b^N)| >= (b - s)^N / lam} against
    |I|^(2 log 2 / log b) lam^(c_b).

    A point counts when its computed value plus its error bound reaches the
    threshold, so rounding can only raise the count.
    """
    b = ds.base
    require(b >= 4, "large-spectra bound needs b >= 4")
    require(lam >= 1, "lambda must be >= 1")
    lo, hi = interval
    size = hi - lo
    require(size >= 1, "interval must be nonempty")
    budget(size <= 10**6, f"|I| = {size} exceeds 1e6")
    M = b**N
    thr = ds.size**N / lam
    count = 0
    for start in range(lo, hi, CHUNK):
        ks = np.arange(start, min(start + CHUNK, hi), dtype=np.int64)
        vals, errs = chat_points(ds, N, theta, [(ks, M)])
        count += int(np.count_nonzero(np.abs(vals) + errs >= thr))
    cb = spectra_constant(b)
    log_rhs = 2 * math.log(2) / math.log(b) * math.log(size) + cb * math.log(lam)
    rhs = math.exp(log_rhs) if log_rhs < 700 else math.inf
    return BoundReport(float(count), rhs, {"system": ds.spec(), "N": N, "theta": theta.spec(),
                                           "interval": [lo, hi], "lambda": lam, "c_b": cb},
                       log_rhs=log_rhs)
