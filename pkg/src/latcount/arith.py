"""Small exact integer helpers: trial-division factorization, prime tests, logs."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import InputError


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Factor |n| by trial division; returns ((p, e), ...) with p increasing."""
    n = abs(n)
    if n == 0:
        raise InputError("cannot factor 0")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def omega(n: int) -> int:
    """Number of distinct prime divisors of n."""
    return len(factorize(n))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n)
    return len(f) == 1 and f[0][1] == 1


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise InputError."""
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise InputError(f"{q} is not a prime power")
    return f[0]


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def log2(x) -> float:
    """Base-2 log accepting ints of any size, Fractions and floats."""
    if isinstance(x, Fraction):
        return log2(x.numerator) - log2(x.denominator)
    if isinstance(x, int):
        if x <= 0:
            raise InputError("log2 of a non-positive number")
        return math.log2(x)
    return math.log2(x)


def frac_str(x: Fraction) -> str:
    """Render a rational as "p/q" (always with a denominator)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
