"""Exact arithmetic: Möbius, totient, Ramanujan sums, u*v splitting of a
modulus relative to the base, and continued-fraction approximation."""
from __future__ import annotations

import math
import threading
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from .errors import PreconditionError, require

if TYPE_CHECKING:
    from .frequency import Frequency

PRIME_TABLE_LIMIT = 10**6
FACTOR_LIMIT = 10**12

_table_lock = threading.Lock()
_prime_table: np.ndarray | None = None


def small_primes(limit: int) -> np.ndarray:
    """Primes below `limit` by a plain sieve."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def prime_table() -> np.ndarray:
    global _prime_table
    if _prime_table is None:
        with _table_lock:
            if _prime_table is None:
                table = small_primes(PRIME_TABLE_LIMIT + 1)
                table.setflags(write=False)
                _prime_table = table
    return _prime_table


def factorize(n: int) -> dict[int, int]:
    require(n >= 1, "factorize needs n >= 1")
    require(n <= FACTOR_LIMIT, f"n = {n} exceeds the factorisation limit 1e12")
    return dict(_factor_items(n))


@lru_cache(maxsize=1 << 16)
def _factor_items(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in prime_table():
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(out.items())


@lru_cache(maxsize=1 << 16)
def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=1 << 16)
def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    return list(_divisors(n))


@lru_cache(maxsize=1 << 16)
def _divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return tuple(sorted(divs))


def radical(n: int) -> int:
    return math.prod(factorize(n)) if n > 1 else 1


# -- the modulus decomposition used by the density constant ------------

@dataclass(frozen=True)
class KappaDecomposition:
    q: int
    u: int
    v: int
    h: int
    L: int


def uv_split(q: int, b: int) -> tuple[int, int]:
    """q = u*v with every prime of u dividing b and gcd(v, b) = 1."""
    require(q >= 1 and b >= 2, "uv_split needs q >= 1, b >= 2")
    u = 1
    v = q
    g = math.gcd(v, b)
    while g > 1:
        v //= g
        u *= g
        g = math.gcd(v, b)
    return u, v


def unit_inverse_h(b: int, v: int) -> int:
    require(v >= 1, "v must be positive")
    if math.gcd(b, v) != 1:
        raise PreconditionError(f"gcd(b={b}, v={v}) > 1; no inverse")
    if v == 1:
        return 0
    return pow(b, -1, v)


def power_level_L(u: int, b: int) -> int:
    """Smallest L >= 1 with u | b^L."""
    require(u >= 1, "u must be positive")
    if uv_split(u, b)[1] != 1:
        raise PreconditionError(f"u = {u} has a prime factor not dividing b = {b}")
    L, bl = 1, b
    while bl % u:
        L += 1
        bl *= b
    return L


def kappa_decomposition(q: int, b: int) -> KappaDecomposition:
    u, v = uv_split(q, b)
    return KappaDecomposition(q=q, u=u, v=v, h=unit_inverse_h(b, v), L=power_level_L(u, b))


# -- Ramanujan sums -------------------------------------------------------

def ramanujan_sum(d: int, k: int) -> int:
    """c_d(k) via mu(d/g) * phi(d) / phi(d/g), g = gcd(d, k)."""
    require(d >= 1, "d must be positive")
    g = math.gcd(d, k)
    m = d // g
    return mobius(m) * euler_phi(d) // euler_phi(m)


def ramanujan_sum_direct(d: int, k: int) -> complex:
    """Root-of-unity sum; test oracle only."""
    ell = np.array([l for l in range(d) if math.gcd(l, d) == 1] or [0], dtype=np.int64)
    return complex(np.exp(2j * np.pi * ((ell * k) % d) / d).sum())


def brauer_rademacher(j: int, k: int) -> tuple[Fraction, bool]:
    """sum_{d | j} mu(d)/phi(d) c_d(k), and whether it equals (j/phi(j)) 1((j,k)=1)."""
    require(j >= 1, "j must be positive")
    lhs = Fraction(0)
    for d in divisors(j):
        mu = mobius(d)
        if mu:
            lhs += Fraction(mu * ramanujan_sum(d, k), euler_phi(d))
    rhs = Fraction(j, euler_phi(j)) if math.gcd(j, k) == 1 else Fraction(0)
    return lhs, lhs == rhs


# -- rational approximation ----------------------------------------------

@dataclass(frozen=True)
class RationalApprox:
    ell: int
    d: int
    beta: float
    beta_exact: Fraction | None = None

    def __post_init__(self):
        if self.d < 1 or math.gcd(self.ell, self.d) != 1:
            raise PreconditionError(f"{self.ell}/{self.d} is not a reduced fraction")


def _cf_terms(x: Fraction, count: int) -> list[int]:
    terms = []
    while len(terms) < count:
        a = math.floor(x)
        terms.append(a)
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    return terms


def convergents_of(x: Fraction, count: int) -> list[Fraction]:
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    for a in _cf_terms(x, count):
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def convergents(theta: "Frequency | Fraction", count: int) -> list[Fraction]:
    """The first `count` continued-fraction convergents of theta (stops early
    for rationals). Irrational inputs are expanded from their exact rational
    representative, which is accurate for convergents far beyond `count`
    at the precision materialised."""
    require(count >= 1, "count must be >= 1")
    return convergents_of(_as_fraction(theta), count)


def _as_fraction(theta) -> Fraction:
    if isinstance(theta, Fraction):
        return theta
    if isinstance(theta, int):
        return Fraction(theta)
    return theta.as_fraction()


def dirichlet_approx(x: "Frequency | Fraction", D0: int) -> RationalApprox:
    """ell/d with d <= D0 and |x - ell/d| <= 1/(d*D0).

    Takes the last continued-fraction convergent whose denominator is <= D0;
    for that convergent the next denominator exceeds D0, which yields the
    bound. x is treated as a real number (not reduced mod 1).
    """
    require(D0 >= 1, "D0 must be >= 1")
    xf = _as_fraction(x)
    best = None
    p0, q0, p1, q1 = 0, 1, 1, 0
    y = xf
    while True:
        a = math.floor(y)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > D0:
            break
        best = Fraction(p1, q1)
        frac = y - a
        if frac == 0:
            break
        y = 1 / frac
    assert best is not None
    beta = xf - best
    assert abs(beta) <= Fraction(1, best.denominator * D0), (xf, D0, best)
    return RationalApprox(best.numerator, best.denominator, float(beta), beta)
