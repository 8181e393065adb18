"""Digit-restricted integer sets C(b, A).

A member of C is an integer whose base-b digits all lie in the allowed set A.
Enumeration at level N walks length-N digit strings over A, so when 0 is not
allowed the shorter integers never appear.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import BudgetExceeded, PreconditionError, require

INT_LIMIT = 2**127


@dataclass(frozen=True)
class StructuralConstants:
    s: int
    s_prime: int
    k: int
    C0: float
    alpha: float


@dataclass(frozen=True)
class ConditionReport:
    has_one: bool
    interval_count: int
    density_ok: bool
    alpha_below_fifth: bool
    epsilon: float

    def to_dict(self) -> dict:
        return {
            "hasOne": self.has_one,
            "intervalCount": self.interval_count,
            "densityOk": self.density_ok,
            "alphaBelowFifth": self.alpha_below_fifth,
            "epsilon": self.epsilon,
        }


def _runs(sorted_digits: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive integers as inclusive (lo, hi) pairs."""
    runs: list[tuple[int, int]] = []
    for d in sorted_digits:
        if runs and d == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], d)
        else:
            runs.append((d, d))
    return runs


@dataclass(frozen=True)
class DigitSystem:
    base: int
    allowed: tuple[int, ...]
    _allowed_mask: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        b = self.base
        if not isinstance(b, (int, np.integer)) or b < 2:
            raise PreconditionError(f"base must be an integer >= 2, got {b!r}")
        allowed = tuple(int(d) for d in self.allowed)
        if not allowed:
            raise PreconditionError("allowed digit set is empty")
        if len(set(allowed)) != len(allowed):
            raise PreconditionError("duplicate allowed digits")
        if any(d < 0 or d >= b for d in allowed):
            raise PreconditionError(f"allowed digits must lie in [0, {b})")
        allowed = tuple(sorted(allowed))
        object.__setattr__(self, "base", int(b))
        object.__setattr__(self, "allowed", allowed)
        mask = np.zeros(b, dtype=bool)
        mask[list(allowed)] = True
        mask.setflags(write=False)
        object.__setattr__(self, "_allowed_mask", mask)

    # -- derived sets -------------------------------------------------
    @property
    def excluded(self) -> tuple[int, ...]:
        return tuple(d for d in range(self.base) if not self._allowed_mask[d])

    @property
    def s(self) -> int:
        return self.base - len(self.allowed)

    @property
    def size(self) -> int:
        """b - s, the number of allowed digits."""
        return len(self.allowed)

    @property
    def excluded_runs(self) -> list[tuple[int, int]]:
        return _runs(self.excluded)

    @property
    def has_consecutive_pair(self) -> bool:
        a = self.allowed
        return any(a[i + 1] == a[i] + 1 for i in range(len(a) - 1))

    # -- membership ---------------------------------------------------
    def contains(self, n: int) -> bool:
        if n < 0:
            raise PreconditionError("n must be nonnegative")
        b, mask = self.base, self._allowed_mask
        if n == 0:
            return bool(mask[0])
        while n:
            n, r = divmod(n, b)
            if not mask[r]:
                return False
        return True

    def contains_array(self, n: np.ndarray) -> np.ndarray:
        """Vectorised membership for a nonnegative int64 array."""
        n = np.asarray(n, dtype=np.int64)
        mask = self._allowed_mask
        ok = mask[n % self.base]
        rest = n // self.base
        live = rest > 0
        while live.any():
            ok &= ~live | mask[rest % self.base]
            rest = rest // self.base
            live = rest > 0
        return ok

    def contains_padded(self, n: np.ndarray, width: int) -> np.ndarray:
        """Membership of n as a length-`width` digit string (leading zeros count)."""
        n = np.asarray(n, dtype=np.int64)
        ok = np.ones(n.shape, dtype=bool)
        rest = n
        for _ in range(width):
            ok &= self._allowed_mask[rest % self.base]
            rest = rest // self.base
        return ok & (rest == 0)

    # -- enumeration --------------------------------------------------
    def _check_width(self, N: int) -> None:
        require(N >= 0, "N must be nonnegative")
        if self.base**N >= INT_LIMIT:
            raise BudgetExceeded(f"b^N = {self.base}^{N} exceeds the 127-bit integer range")

    def enumerate(self, N: int) -> Iterator[int]:
        """Members of C in [0, b^N) in increasing order."""
        self._check_width(N)
        b = self.base
        for digits in itertools.product(self.allowed, repeat=N):
            v = 0
            for d in digits:
                v = v * b + d
            yield v

    def members(self, N: int) -> np.ndarray:
        """All length-N members as a sorted int64 array."""
        self._check_width(N)
        if self.base**N >= 2**63:
            raise BudgetExceeded("members() needs b^N < 2^63; use enumerate()")
        if self.size**N > 10**8:
            raise BudgetExceeded(f"(b-s)^N = {self.size**N} exceeds the enumeration budget 1e8")
        vals = np.zeros(1, dtype=np.int64)
        digits = np.asarray(self.allowed, dtype=np.int64)
        for _ in range(N):
            vals = (vals[:, None] * self.base + digits[None, :]).ravel()
        return vals

    def count(self, N: int) -> int:
        self._check_width(N)
        c = self.size**N
        if c <= 10**6:
            n = sum(1 for _ in self.enumerate(N))
            assert n == c, (n, c)
        return c

    # -- constants ----------------------------------------------------
    def constants(self) -> StructuralConstants:
        b, s = self.base, self.s
        s_prime = sum(1 for d in self.excluded if math.gcd(d, b) == 1)
        k = len(self.excluded_runs)
        lb = math.log(b)
        C0 = k + 1 + 2 * (b - s) / (b * lb)
        alpha = math.log(C0 * (b / (b - s)) * lb) / lb
        return StructuralConstants(s=s, s_prime=s_prime, k=k, C0=C0, alpha=alpha)

    def check_conditions(self, epsilon: float) -> ConditionReport:
        require(epsilon > 0, "epsilon must be positive")
        c = self.constants()
        density_ok = self.size > (c.k + 1) * self.base ** (0.8 + epsilon)
        return ConditionReport(
            has_one=bool(self.base > 1 and self._allowed_mask[1]),
            interval_count=c.k,
            density_ok=bool(density_ok),
            alpha_below_fifth=c.alpha < 0.2,
            epsilon=epsilon,
        )

    # -- text form ----------------------------------------------------
    def spec(self) -> str:
        parts = [f"{lo}-{hi}" if hi > lo else str(lo) for lo, hi in self.excluded_runs]
        return f"b={self.base};exclude={','.join(parts)}"

    def __str__(self) -> str:
        return self.spec()


def new_digit_system(b: int, excluded: Iterable[int] = ()) -> DigitSystem:
    excluded = set(int(d) for d in excluded)
    require(isinstance(b, (int, np.integer)) and b >= 2, f"base must be >= 2, got {b!r}")
    bad = [d for d in excluded if d < 0 or d >= b]
    require(not bad, f"excluded digits out of range [0, {b}): {sorted(bad)}")
    require(len(excluded) < b, "cannot exclude every digit")
    return DigitSystem(int(b), tuple(d for d in range(b) if d not in excluded))


def parse_digit_list(text: str) -> list[int]:
    """Parse '3-5,8' into [3, 4, 5, 8]. Empty text gives []."""
    out: list[int] = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if "-" in tok:
            lo, hi = tok.split("-", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise PreconditionError(f"bad digit range {tok!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            out.append(int(tok))
    return out


def parse_system(text: str) -> DigitSystem:
    """Inverse of DigitSystem.spec(): 'b=10;exclude=3-5,8'."""
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise PreconditionError(f"malformed digit system {text!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    if "b" not in fields:
        raise PreconditionError(f"digit system {text!r} lacks b=")
    try:
        return new_digit_system(int(fields["b"]), parse_digit_list(fields.get("exclude", "")))
    except ValueError as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise PreconditionError(f"malformed digit system {text!r}") from exc
