"""Probabilistic primality (Baillie-PSW plus random Miller-Rabin) and small-prime helpers.

Every "proven prime" statement in this package is really a probable-prime
statement backed by :func:`is_probable_prime`; there is no ECPP certificate.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

DEFAULT_ROUNDS = 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

_sysrand = random.SystemRandom()


@lru_cache(maxsize=8)
def primes_below(limit: int) -> Tuple[int, ...]:
    """All primes ``q < limit`` (sieve of Eratosthenes)."""
    if limit <= 2:
        return ()
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for q in range(2, math.isqrt(limit - 1) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytes(len(range(q * q, limit, q)))
    return tuple(i for i, v in enumerate(sieve) if v)


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1
    d = 5
    while True:
        j = jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and math.isqrt(n) ** 2 == n:
            # perfect squares never yield (D/n) = -1
            return False
    p_, q_ = 1, (1 - d) // 4

    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1

    inv2 = (n + 1) // 2
    u, v, qk = 1, p_ % n, q_ % n
    for bit in bin(k)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p_ * u + v) * inv2 % n, (d * u + p_ * v) * inv2 % n
            qk = qk * q_ % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def baillie_psw(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def is_probable_prime(
    n: int, rounds: int = DEFAULT_ROUNDS, rng: Optional[random.Random] = None
) -> bool:
    """True iff ``n`` passes Baillie-PSW and ``rounds`` Miller-Rabin rounds with random bases."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    if not baillie_psw(n):
        return False
    if n < 100:
        # small primes were decided exactly by trial division
        return True
    rng = rng or _sysrand
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1)) for _ in range(rounds))


def trial_factor(n: int, bound: int) -> Tuple[Dict[int, int], int]:
    """Strip every prime factor ``q < bound`` from ``n``.

    Returns ``({q: multiplicity}, remaining_cofactor)``.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    found: Dict[int, int] = {}
    for q in primes_below(bound):
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            found[q] = e
    if 1 < n < bound:
        # leftover is itself a small prime
        found[n] = found.get(n, 0) + 1
        n = 1
    return found, n


def factorize_small(n: int) -> List[Tuple[int, int]]:
    """Full factorization by trial division; only for n up to ~2**64."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += 1 if q == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def next_prime_3mod4(start: int) -> int:
    """Smallest probable prime ``q >= start`` with ``q % 4 == 3``."""
    q = start + (3 - start) % 4
    while not is_probable_prime(q, rounds=8):
        q += 4
    return q
