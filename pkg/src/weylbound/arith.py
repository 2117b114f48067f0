"""Elementary number-theoretic utilities shared across the toolkit.

Everything here is exact integer arithmetic except the root-of-unity
tables, which materialize e(j/c) once per modulus so that exponential
sums never re-reduce large arguments through floating point.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def inv_mod(a: int, c: int) -> int | None:
    """Inverse of a modulo c, or None when gcd(a, c) > 1.

    Nonexistence is signalled, not raised: callers' preconditions are
    exactly statements about which inverses exist.
    """
    if c == 1:
        return 0
    g, x, _ = egcd(a % c, c)
    if g != 1:
        return None
    return x % c


def require_inv(a: int, c: int) -> int:
    """Inverse of a mod c; raises ValueError when it does not exist."""
    v = inv_mod(a, c)
    if v is None:
        raise ValueError(f"{a} is not invertible modulo {c}")
    return v


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 (m1), x = r2 (m2); moduli must be coprime."""
    g, u, _ = egcd(m1, m2)
    if g != 1:
        raise ValueError("crt_pair requires coprime moduli")
    return (r1 + (r2 - r1) * u % m2 * m1) % (m1 * m2)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] by trial division (n <= ~10^12)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes, inclusive."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def divisor_counts(n: int) -> np.ndarray:
    """d(1..n) as an int array (index 0 unused)."""
    d = np.zeros(n + 1, dtype=np.int64)
    for k in range(1, n + 1):
        d[k::k] += 1
    return d


def primitive_root(q: int) -> int:
    """Smallest primitive root modulo q; q must be 2, 4, p^e or 2p^e."""
    phi = euler_phi(q)
    prime_factors = [p for p, _ in factorize(phi)]
    for g in range(2, q):
        if math.gcd(g, q) != 1:
            continue
        if all(pow(g, phi // p, q) != 1 for p in prime_factors):
            return g
    raise ValueError(f"no primitive root modulo {q}")


@lru_cache(maxsize=4096)
def unit_roots(c: int) -> np.ndarray:
    """Table of the c-th roots of unity: roots[j] = e(j/c).

    Cached read-only; exponents are reduced mod c by the caller so the
    argument passed to exp never exceeds 2*pi.
    """
    j = np.arange(c)
    w = np.exp(2j * np.pi * j / c)
    w.setflags(write=False)
    return w


def e_frac(num: int, den: int) -> complex:
    """e(num/den) through the cached root table."""
    return complex(unit_roots(den)[num % den])
