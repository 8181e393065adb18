"""Brute-force reference computations used by the tests. Kept deliberately
naive: plain loops over explicit members and exact rational reduction."""
import cmath
import math
from fractions import Fraction


def chat_direct(ds, N, theta: Fraction) -> complex:
    q, p = theta.denominator, theta.numerator
    return sum(cmath.exp(2j * math.pi * ((n * p) % q) / q) for n in ds.enumerate(N))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def von_mangoldt(n: int) -> float:
    if n < 2:
        return 0.0
    for p in range(2, n + 1):
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return math.log(p) if m == 1 else 0.0
    return 0.0


def restricted_primes_direct(ds, limit, q=1, t=0):
    return [p for p in range(limit) if is_prime(p) and ds.contains(p) and p % q == t]
