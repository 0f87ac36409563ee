"""Exact integer helpers: primality, factorization and the target order Q.

Python ints are already arbitrary precision, so "Natural" values are plain
``int`` throughout. Factorizations are carried around as
:class:`FactoredInteger` so that order certificates can be re-checked.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "FactoredInteger",
    "FactorizationBudgetError",
    "is_prime",
    "factorize",
    "compute_Q",
    "prime_power_split",
    "DEFAULT_RHO_BUDGET",
]

# Deterministic for n < 3.317e24 (Sorenson & Webster); larger inputs are
# still tested against these bases, which is far beyond desk-scale q^11.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 2_000_000


class FactorizationBudgetError(RuntimeError):
    """Raised when Pollard rho exhausts its iteration budget."""


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        acc = 1
        last = 1
        for prime, exp in self.factors:
            if prime <= last or exp < 1:
                raise ValueError(f"bad factor list {self.factors!r}")
            last = prime
            acc *= prime**exp
        if acc != self.value:
            raise ValueError(f"factors multiply to {acc}, not {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES: list[int] | None = None


def _primes() -> list[int]:
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = _small_primes(_TRIAL_LIMIT)
    return _PRIMES


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_seeds() -> Iterator[tuple[int, int]]:
    # fixed (start, increment) sequence so factorizations are reproducible
    c = 1
    while True:
        yield 2, c
        c += 1


def _brent(n: int, budget: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    spent = 0
    for y0, c in _rho_seeds():
        y, r, acc, g = y0, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    acc = acc * abs(x - y) % n
                k += 128
                g = math.gcd(acc, n)
            spent += r
            r *= 2
            if spent > budget:
                raise FactorizationBudgetError(
                    f"Pollard rho budget of {budget} iterations exhausted on cofactor {n}"
                )
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError("unreachable")


def _budget_from_env() -> int:
    raw = os.environ.get("SL12_FACTOR_BUDGET")
    if raw is None:
        return DEFAULT_RHO_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SL12_FACTOR_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("SL12_FACTOR_BUDGET must be positive")
    return value


def factorize(n: int, budget: int | None = None) -> FactoredInteger:
    """Complete prime factorization of ``n >= 1``.

    Trial division up to 10**6, then Brent's variant of Pollard rho on what is
    left. ``budget`` caps the rho iterations per cofactor (default from
    ``SL12_FACTOR_BUDGET`` or :data:`DEFAULT_RHO_BUDGET`).
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    if budget is None:
        budget = _budget_from_env()
    counts: dict[int, int] = {}
    rest = n
    for p in _primes():
        if p * p > rest:
            break
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    stack = [rest] if rest > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c):
            counts[c] = counts.get(c, 0) + 1
            continue
        r = math.isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        d = _brent(c, budget)
        stack += [d, c // d]
    return FactoredInteger(n, tuple(sorted(counts.items())))


def compute_Q(q: int) -> tuple[int, bool]:
    """Target order for z: ``q**11 - 1``, halved when q is 3 or 7."""
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    full = q**11 - 1
    if q in (3, 7):
        return full // 2, True
    return full, False


def prime_power_split(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac.factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    return fac.factors[0]
