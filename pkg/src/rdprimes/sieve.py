"""Segmented sieve, the von Mangoldt function, and Lambda-weighted sums over
digit-restricted prime powers.

All sums are produced per fixed-size segment and combined with a pairwise
tree, so results are bit-identical for any worker count.
"""
from __future__ import annotations

import math
from fractions import Fraction
from collections import Counter
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterator

import numpy as np

from .arith import RationalApprox, small_primes
from .digits import DigitSystem, new_digit_system
from .errors import budget, require
from .fourier import BoundReport
from .frequency import Frequency
from .reduce import ordered_map, pairwise_sum

SIEVE_LIMIT = 10**10
SEGMENT_MAX = 10**8
SEGMENT_SIZE = 1 << 22


@dataclass(frozen=True)
class ResidueClass:
    q: int = 1
    t: int = 0

    def __post_init__(self):
        require(self.q >= 1, "modulus must be >= 1")
        require(0 <= self.t < self.q, f"residue {self.t} not in [0, {self.q})")


@dataclass
class SieveSegment:
    lo: int
    hi: int
    is_prime: np.ndarray
    pp_n: np.ndarray  # prime powers p^j (j >= 2) in range
    pp_p: np.ndarray
    pp_j: np.ndarray

    def primes(self) -> np.ndarray:
        return self.lo + np.flatnonzero(self.is_prime).astype(np.int64)

    def prime_powers(self) -> tuple[np.ndarray, np.ndarray]:
        """All n in range with Lambda(n) > 0, sorted, with their prime p."""
        pr = self.primes()
        n = np.concatenate([pr, self.pp_n])
        p = np.concatenate([pr, self.pp_p])
        order = np.argsort(n, kind="stable")
        return n[order], p[order]

    def von_mangoldt(self) -> np.ndarray:
        """Lambda on [lo, hi) as a float array."""
        out = np.zeros(self.hi - self.lo)
        out[self.is_prime] = np.log(self.primes().astype(np.float64))
        out[self.pp_n - self.lo] = np.log(self.pp_p.astype(np.float64))
        return out


_base_cache: dict[int, np.ndarray] = {}


def _base_primes(hi: int) -> np.ndarray:
    r = math.isqrt(max(hi - 1, 0)) + 1
    key = 1 << max(r - 1, 1).bit_length()
    if key not in _base_cache:
        _base_cache[key] = small_primes(key + 1)
    bp = _base_cache[key]
    return bp[bp < r + 1]


def sieve_range(lo: int, hi: int) -> SieveSegment:
    require(0 <= lo < hi, "need 0 <= lo < hi")
    budget(hi <= SIEVE_LIMIT, f"hi = {hi} exceeds the sieve limit 1e10")
    budget(hi - lo <= SEGMENT_MAX, f"segment length {hi - lo} exceeds 1e8")
    flags = np.ones(hi - lo, dtype=bool)
    flags[: max(0, 2 - lo)] = False
    pp_n, pp_p, pp_j = [], [], []
    for p in _base_primes(hi):
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        flags[start - lo :: p] = False
        pj, j = p * p, 2
        while pj < hi:
            if pj >= lo:
                pp_n.append(pj)
                pp_p.append(p)
                pp_j.append(j)
            pj *= p
            j += 1
    as_arr = partial(np.asarray, dtype=np.int64)
    return SieveSegment(lo, hi, flags, as_arr(pp_n), as_arr(pp_p), as_arr(pp_j))


def segments(hi: int, size: int = SEGMENT_SIZE) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, hi)) for lo in range(0, hi, size)]


def _map_segments(hi: int, fn: Callable[[SieveSegment], object], workers: int) -> list:
    budget(hi <= SIEVE_LIMIT, f"range {hi} exceeds the sieve limit 1e10")
    return ordered_map(lambda seg: fn(sieve_range(*seg)), segments(hi), workers)


def _filter(ds: DigitSystem, rc: ResidueClass, n: np.ndarray) -> np.ndarray:
    keep = np.ones(n.shape, dtype=bool)
    if rc.q > 1:
        keep &= n % rc.q == rc.t
    if ds.s:
        keep[keep] = ds.contains_array(n[keep])
    return keep


def restricted_prime_powers(ds: DigitSystem, hi: int, rc: ResidueClass = ResidueClass(),
                            workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """(n, p) for all prime powers n = p^j < hi in C with n = t mod q."""
    def work(seg):
        n, p = seg.prime_powers()
        keep = _filter(ds, rc, n)
        return n[keep], p[keep]

    parts = _map_segments(hi, work, workers)
    if not parts:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate([a for a, _ in parts]), np.concatenate([b for _, b in parts])


def _check_scale(ds: DigitSystem, N: int) -> int:
    require(N >= 0, "N must be nonnegative")
    M = ds.base**N
    budget(M <= SIEVE_LIMIT, f"b^N = {M} exceeds the sieve budget 1e10")
    return M


def lambda_weighted_sum(ds: DigitSystem, N: int, rc: ResidueClass = ResidueClass(),
                        workers: int = 1) -> float:
    """sum_{n < b^N, n in C, n = t mod q} Lambda(n)."""
    M = _check_scale(ds, N)

    def work(seg):
        n, p = seg.prime_powers()
        keep = _filter(ds, rc, n)
        return float(np.sum(np.log(p[keep].astype(np.float64))))

    return float(pairwise_sum(_map_segments(M, work, workers)))


def lambda_weighted_terms(ds: DigitSystem, N: int, rc: ResidueClass = ResidueClass(),
                          workers: int = 1) -> Counter:
    """The same sum kept symbolic: {p: number of contributing powers of p}."""
    M = _check_scale(ds, N)
    _, p = restricted_prime_powers(ds, M, rc, workers)
    return Counter(p.tolist())


def restricted_primes(ds: DigitSystem, limit: int, rc: ResidueClass = ResidueClass(),
                      workers: int = 1) -> np.ndarray:
    """Primes p < limit with p in C and p = t mod q, increasing."""
    budget(limit <= SIEVE_LIMIT, f"limit {limit} exceeds the sieve budget 1e10")
    if limit <= 2:
        return np.zeros(0, dtype=np.int64)

    def work(seg):
        pr = seg.primes()
        return pr[_filter(ds, rc, pr)]

    return np.concatenate(_map_segments(limit, work, workers))


def iter_restricted_primes(ds: DigitSystem, limit: int,
                           rc: ResidueClass = ResidueClass()) -> Iterator[int]:
    budget(limit <= SIEVE_LIMIT, f"limit {limit} exceeds the sieve budget 1e10")
    for lo, hi in segments(limit):
        pr = sieve_range(lo, hi).primes()
        yield from pr[_filter(ds, rc, pr)].tolist()


def lambda_exp_sum(ds: DigitSystem, N: int, theta: Frequency, workers: int = 1) -> complex:
    """sum_{n < b^N} 1_C(n) Lambda(n) e(n theta)."""
    M = _check_scale(ds, N)
    theta = theta.ensure_precision(N, ds.base)

    def work(seg):
        n, p = seg.prime_powers()
        keep = _filter(ds, ResidueClass(), n)
        ph = theta.frac_times_array(n[keep])
        return complex(np.sum(np.log(p[keep].astype(np.float64)) * np.exp(2j * np.pi * ph)))

    return complex(pairwise_sum(_map_segments(M, work, workers)))


def von_mangoldt_transform(b: int, N: int, theta: Frequency, workers: int = 1) -> complex:
    """Unrestricted sum_{n < b^N} Lambda(n) e(n theta)."""
    return lambda_exp_sum(new_digit_system(b, ()), N, theta, workers)


def lambda_transform_grid(M: int, ms: np.ndarray, sign: int = -1) -> np.ndarray:
    """sum_{n < M} Lambda(n) e(sign * n m / M) for each integer m, by direct summation."""
    budget(M <= 10**7, f"direct Lambda transform limited to M <= 1e7 (got {M})")
    ms = np.asarray(ms, dtype=np.int64) % M
    out = np.zeros(ms.size, dtype=np.complex128)
    parts: list[list[complex]] = [[] for _ in range(ms.size)]
    for lo, hi in segments(M):
        n, p = sieve_range(lo, hi).prime_powers()
        w = np.log(p.astype(np.float64))
        for start in range(0, ms.size, 64):
            blk = ms[start : start + 64]
            ph = (np.outer(blk, n) % M) / M
            vals = np.exp(sign * 2j * np.pi * ph) @ w
            for j, v in enumerate(vals):
                parts[start + j].append(v)
    for j, ps in enumerate(parts):
        out[j] = pairwise_sum(ps)
    return out


def lambda_fourier_check(x: int, approx: RationalApprox) -> BoundReport:
    """|sum_{n<x} Lambda(n) e(n alpha)| for alpha = l/d + beta against
    (x^{4/5} + x^{1/2}/|d beta|^{1/2} + x |d beta|^{1/2}) (log x)^4.

    With beta = 0 the middle term is marked not applicable and omitted.
    """
    require(2 <= x <= 10**8, "x must lie in [2, 1e8]")
    beta = approx.beta_exact if approx.beta_exact is not None else Fraction(approx.beta)
    require(abs(beta) < Fraction(1, approx.d**2) or beta == 0,
            "hypothesis |beta| < 1/d^2 violated")
    alpha = Frequency.from_fraction(beta).shift(Fraction(approx.ell, approx.d))

    def work(seg):
        n, p = seg.prime_powers()
        ph = alpha.frac_times_array(n)
        return complex(np.sum(np.log(p.astype(np.float64)) * np.exp(2j * np.pi * ph)))

    lhs = abs(complex(pairwise_sum(_map_segments(x, work, 1))))
    dbeta = abs(approx.d * float(beta))
    lx = math.log(x)
    first, third = x**0.8, x * math.sqrt(dbeta)
    middle = x**0.5 / math.sqrt(dbeta) if dbeta > 0 else None
    rhs = (first + (middle or 0.0) + third) * lx**4
    ctx = {"x": x, "ell": approx.ell, "d": approx.d, "beta": float(beta),
           "middleTerm": "not-applicable" if middle is None else middle}
    return BoundReport(lhs, rhs, ctx, constant=10.0)
