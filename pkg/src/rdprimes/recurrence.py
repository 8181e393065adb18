"""Weyl averages over restricted primes, relative densities, Sarkozy-type
witness search and a van der Corput style equidistribution harness."""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

from .digits import DigitSystem
from .errors import budget, require
from .frequency import Frequency
from .reduce import ordered_map, pairwise_sum
from .sieve import ResidueClass, _check_scale, iter_restricted_primes, restricted_primes

VDC_THRESHOLD = 0.1
HARMONICS = 5


@dataclass
class WeylReport:
    m: int
    N: int
    sample_count: int
    average: complex
    magnitude: float

    def to_dict(self) -> dict:
        return {"m": self.m, "N": self.N, "sampleCount": self.sample_count,
                "average": [self.average.real, self.average.imag],
                "magnitude": self.magnitude}


def _exp_mean(values: np.ndarray, theta: Frequency) -> tuple[complex, int]:
    if values.size == 0:
        return complex("nan"), 0
    ph = theta.frac_times_array(values)
    # chunked so the reduction order does not depend on array layout
    chunks = [np.sum(np.exp(2j * np.pi * ph[i : i + 65536]))
              for i in range(0, ph.size, 65536)]
    return complex(pairwise_sum(chunks)) / values.size, int(values.size)


def _progression_primes(ds: DigitSystem, m: int, N: int, workers: int) -> np.ndarray:
    require(m >= 1, "m must be >= 1")
    M = _check_scale(ds, N)
    rc = ResidueClass(m, 1 % m)
    return restricted_primes(ds, M, rc, workers)


def weyl_average(ds: DigitSystem, m: int, N: int, theta: Frequency,
                 workers: int = 1) -> WeylReport:
    """Mean of e(p theta) over restricted primes p < b^N with p = 1 mod m.

    An empty sample gives a NaN average and sample_count 0.
    """
    theta = theta.ensure_precision(N, ds.base)
    primes = _progression_primes(ds, m, N, workers)
    if theta.as_fraction() == 0 and primes.size:
        return WeylReport(m, N, int(primes.size), 1 + 0j, 1.0)
    avg, count = _exp_mean(primes, theta)
    return WeylReport(m, N, count, avg, abs(avg) if count else float("nan"))


def relative_density(ds: DigitSystem, m: int, N: int, workers: int = 1) -> float:
    """#(P_C below b^N) / #(P_C below b^N, = 1 mod m); inf if the latter is empty."""
    M = _check_scale(ds, N)
    num = restricted_primes(ds, M, ResidueClass(), workers).size
    den = _progression_primes(ds, m, N, workers).size
    return num / den if den else math.inf


@dataclass(frozen=True)
class WitnessQuery:
    elements: tuple[int, ...]
    search_limit: int

    def __post_init__(self):
        els = tuple(int(a) for a in self.elements)
        require(len(els) > 0, "set must be nonempty")
        require(els[0] >= 0, "set must be nonnegative")
        require(all(a < b for a, b in zip(els, els[1:])), "set must be strictly increasing")
        require(self.search_limit >= 0, "search limit must be nonnegative")
        object.__setattr__(self, "elements", els)


def sarkozy_witness(ds: DigitSystem, query: WitnessQuery) -> tuple[int, int, int] | None:
    """First (a1, a2, p) with p a restricted prime, p <= limit and a2 - a1 = p - 1.

    Ordered by p, then a1. Primes with p - 1 beyond the span of the set
    cannot help, so the search stops there.
    """
    A = query.elements
    members = set(A)
    span = A[-1] - A[0]
    limit = min(query.search_limit, span + 1)
    budget(limit <= 10**10, "search limit exceeds the sieve budget 1e10")
    for p in iter_restricted_primes(ds, limit + 1):
        g = p - 1
        for a1 in A[: bisect.bisect_right(A, A[-1] - g)]:
            if a1 + g in members:
                return a1, a1 + g, p
    return None


@dataclass
class HarmonicRow:
    theta: str
    harmonic: int
    average: complex
    magnitude: float
    below_threshold: bool


@dataclass
class VdcReport:
    system: str
    q_index: int
    modulus: int
    N: int
    size: int
    rows: list[HarmonicRow] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return self.size == 0

    def to_dict(self) -> dict:
        return {
            "system": self.system, "qIndex": self.q_index, "modulus": self.modulus,
            "N": self.N, "size": self.size, "empty": self.empty,
            "threshold": VDC_THRESHOLD,
            "rows": [{"theta": r.theta, "harmonic": r.harmonic,
                      "average": [r.average.real, r.average.imag],
                      "magnitude": r.magnitude, "belowThreshold": r.below_threshold}
                     for r in self.rows],
        }


def shift_set(ds: DigitSystem, q_index: int, N: int, workers: int = 1) -> np.ndarray:
    """H_q = {p - 1 : p restricted prime below b^N, p = 1 mod q!}."""
    require(1 <= q_index <= 8, "qIdx must lie in [1, 8]")
    return _progression_primes(ds, math.factorial(q_index), N, workers) - 1


def vdc_harness(ds: DigitSystem, q_index: int, thetas: list[Frequency], N: int,
                workers: int = 1, harmonics: int = HARMONICS) -> VdcReport:
    """Weyl sums of h theta over H_q for each theta and h = 1..harmonics."""
    H = shift_set(ds, q_index, N, workers)
    rep = VdcReport(ds.spec(), q_index, math.factorial(q_index), N, int(H.size))
    jobs = [(th.ensure_precision(N + 1, ds.base), h)
            for th in thetas for h in range(1, harmonics + 1)]

    def one(job):
        th, h = job
        return _exp_mean(H, th.scaled(h))[0]

    for (th, h), avg in zip(jobs, ordered_map(one, jobs, workers)):
        mag = abs(avg) if H.size else float("nan")
        rep.rows.append(HarmonicRow(th.spec(), h, avg, mag, bool(mag < VDC_THRESHOLD)))
    return rep
