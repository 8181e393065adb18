"""Exact representations of points on the circle R/Z.

A Frequency is a rational part plus an optional binary fixed-point part
mantissa / 2**bits. Pure rationals reduce every multiple exactly; the
fixed-point part is either an exact dyadic value (``exact=True``, e.g. a
float) or a truncation of an irrational, in which case it carries the
guard-bit requirement checked at evaluation sites.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from .errors import InsufficientPrecision, PreconditionError

GUARD_BITS = 64
EPS = float(np.finfo(np.float64).eps)

NAMED = ("golden", "sqrt2")


def named_mantissa(name: str, bits: int) -> int:
    """floor(value * 2**bits) for a named irrational in (0, 1)."""
    if name.startswith("-"):
        return -named_mantissa(name[1:], bits)
    one = 1 << bits
    if name == "golden":  # (sqrt 5 - 1) / 2
        return (math.isqrt(5 << (2 * bits)) - one) >> 1
    if name == "sqrt2":  # sqrt 2 - 1
        return math.isqrt(2 << (2 * bits)) - one
    raise PreconditionError(f"unknown named irrational {name!r}")


def required_bits(N: int, b: int) -> int:
    return math.ceil(N * math.log2(b)) + GUARD_BITS


@dataclass(frozen=True)
class Frequency:
    rational: Fraction = Fraction(0)
    mantissa: int = 0
    bits: int = 0
    exact: bool = True
    name: str | None = None

    def __post_init__(self):
        r = Fraction(self.rational) % 1
        object.__setattr__(self, "rational", r)
        if self.bits:
            object.__setattr__(self, "mantissa", self.mantissa % (1 << self.bits))
        elif self.mantissa:
            raise PreconditionError("fixed-point mantissa needs bits > 0")

    # -- constructors ---------------------------------------------------
    @classmethod
    def rat(cls, p: int, q: int = 1) -> "Frequency":
        if q == 0:
            raise PreconditionError("zero denominator")
        return cls(Fraction(p, q))

    @classmethod
    def fixed(cls, mantissa: int, bits: int, exact: bool = False) -> "Frequency":
        if bits < 1:
            raise PreconditionError("bits must be positive")
        return cls(Fraction(0), mantissa, bits, exact)

    @classmethod
    def named_at(cls, name: str, bits: int) -> "Frequency":
        return cls(Fraction(0), named_mantissa(name, bits), bits, False, name)

    @classmethod
    def from_float(cls, x: float) -> "Frequency":
        f = Fraction(x) % 1
        if f.denominator == 1:
            return cls()
        bits = f.denominator.bit_length() - 1
        return cls(Fraction(0), f.numerator, bits, True)

    @classmethod
    def from_fraction(cls, r: Fraction) -> "Frequency":
        """Exact value; large dyadic denominators go to the fixed-point part."""
        r = Fraction(r) % 1
        den = r.denominator
        if den >= 2**31 and den & (den - 1) == 0:
            return cls(Fraction(0), r.numerator, den.bit_length() - 1, True)
        return cls(r)

    # -- properties -----------------------------------------------------
    @property
    def kind(self) -> str:
        if self.name:
            return "named"
        return "rational" if self.bits == 0 else "fixed"

    @property
    def is_rational(self) -> bool:
        return self.bits == 0

    def as_fraction(self) -> Fraction:
        out = self.rational
        if self.bits:
            out += Fraction(self.mantissa, 1 << self.bits)
        return out % 1

    def __float__(self) -> float:
        return float(self.as_fraction())

    def __neg__(self) -> "Frequency":
        name = None
        if self.name:
            name = self.name[1:] if self.name.startswith("-") else "-" + self.name
        return replace(self, rational=-self.rational, mantissa=-self.mantissa, name=name)

    def shift(self, r: Fraction | int) -> "Frequency":
        """self + r for an exact rational r."""
        return replace(self, rational=self.rational + Fraction(r))

    def __add__(self, other: "Frequency | Fraction | int") -> "Frequency":
        if not isinstance(other, Frequency):
            return self.shift(other)
        if self.bits and other.bits:
            bits = max(self.bits, other.bits)
            m = (self.mantissa << (bits - self.bits)) + (other.mantissa << (bits - other.bits))
            return Frequency(self.rational + other.rational, m, bits,
                             self.exact and other.exact, None)
        base, extra = (self, other) if self.bits or not other.bits else (other, self)
        return replace(base, rational=base.rational + extra.rational)

    def scaled(self, c: int) -> "Frequency":
        """c * self for an integer c."""
        return replace(self, rational=self.rational * c, mantissa=self.mantissa * c,
                       name=None if c != 1 else self.name)

    # -- precision --------------------------------------------------------
    def ensure_precision(self, N: int, b: int) -> "Frequency":
        """Return a representation good for N levels of base b, re-materialising
        named irrationals; raise if a truncated fixed-point part is too short."""
        if self.bits == 0 or self.exact:
            return self
        need = required_bits(N, b)
        if self.bits >= need:
            return self
        if self.name:
            return replace(Frequency.named_at(self.name, need), rational=self.rational)
        raise InsufficientPrecision(
            f"frequency carries {self.bits} bits, {need} needed for N={N}, b={b}")

    def truncation_error(self) -> float:
        """Absolute error of the stored value as an approximation of the intended one."""
        if self.bits == 0 or self.exact:
            return 0.0
        return 2.0 ** (-self.bits)

    # -- reductions -------------------------------------------------------
    def frac_times(self, n: int) -> float:
        """(n * self) mod 1 as a float, reduced exactly."""
        out = 0.0
        r = self.rational
        if r:
            out = (n * r.numerator % r.denominator) / r.denominator
        if self.bits:
            out += ((n * self.mantissa) & ((1 << self.bits) - 1)) / (1 << self.bits)
        return out % 1.0

    def frac_power(self, b: int, i: int) -> float:
        """(b**i * self) mod 1 as a float, reduced exactly."""
        out = 0.0
        r = self.rational
        if r:
            q = r.denominator
            out = (pow(b, i, q) * r.numerator % q) / q
        if self.bits:
            mod = 1 << self.bits
            out += (pow(b, i, mod) * self.mantissa % mod) / mod
        return out % 1.0

    def frac_times_array(self, n: np.ndarray) -> np.ndarray:
        """(n * self) mod 1 for an int64 array 0 <= n < 2**34."""
        n = np.asarray(n, dtype=np.int64)
        out = np.zeros(n.shape, dtype=np.float64)
        r = self.rational
        if r:
            p, q = r.numerator, r.denominator
            if q < 2**31:
                out += ((n % q) * p % q) / q
            else:
                out += np.fromiter((float(Fraction(int(x) * p % q, q)) for x in n),
                                   dtype=np.float64, count=n.size).reshape(n.shape)
        if self.bits:
            if n.size and int(n.max()) >= 2**34:
                raise PreconditionError("frac_times_array needs n < 2**34")
            out += _fixed_frac_times(n, self.mantissa, self.bits)
        return out % 1.0

    def spec(self) -> str:
        if self.name:
            return self.name if not self.rational else f"{self.name}+{self.rational}"
        if self.bits == 0:
            return f"{self.rational.numerator}/{self.rational.denominator}"
        return f"fixed:{self.mantissa}/2^{self.bits}"


def _fixed_frac_times(n: np.ndarray, mantissa: int, bits: int) -> np.ndarray:
    # Keep the top 112 fractional bits in four 28-bit chunks; n < 2**34 keeps
    # every chunk product below 2**62.
    K = 112
    M = mantissa << (K - bits) if bits <= K else mantissa >> (bits - K)
    chunks = [(M >> (K - 28 * (j + 1))) & ((1 << 28) - 1) for j in range(4)]
    c1, c2, c3, c4 = (np.int64(c) for c in chunks)
    out = ((n * c1) & ((1 << 28) - 1)) / 2.0**28
    out = out + ((n * c2) & ((1 << 56) - 1)) / 2.0**56
    out = out + (n * c3) / 2.0**84
    out = out + (n * c4) / 2.0**112
    return out % 1.0


def dist_to_int(x):
    """||x||, distance to the nearest integer; exact ties give 1/2."""
    r = np.asarray(x, dtype=np.float64) % 1.0
    return np.minimum(r, 1.0 - r)


def e(x):
    """e(x) = exp(2 pi i x), with x reduced mod 1 first."""
    return np.exp(2j * np.pi * (np.asarray(x, dtype=np.float64) % 1.0))


def parse_theta(spec: str, N: int = 0, b: int = 2, dec_bits: int | None = None) -> Frequency:
    """Parse 'p/q', 'dec:<digits>', 'golden' or 'sqrt2'.

    Named irrationals are materialised with enough guard bits for N levels
    of base b. Decimal strings are exact rationals.
    """
    spec = spec.strip()
    if spec in NAMED:
        return Frequency.named_at(spec, required_bits(max(N, 1), b))
    if spec.startswith("dec:"):
        try:
            return Frequency(Fraction(Decimal(spec[4:])))
        except (InvalidOperation, ValueError) as exc:
            raise PreconditionError(f"malformed decimal theta {spec!r}") from exc
    try:
        if "/" in spec:
            p, q = spec.split("/", 1)
            return Frequency.rat(int(p), int(q))
        return Frequency.rat(int(spec))
    except ValueError as exc:
        raise PreconditionError(f"malformed theta {spec!r}") from exc
