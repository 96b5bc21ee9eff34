"""Arithmetic behind the anti-MOV and CM-discriminant sanity checks."""

from __future__ import annotations

from typing import Dict, Optional

from .primes import primes_below


def first_embedding_degree(p: int, n: int, k_max: int) -> Optional[int]:
    """Smallest k in [1, k_max] with p^k == 1 (mod n), or None."""
    x = 1
    base = p % n
    for k in range(1, k_max + 1):
        x = x * base % n
        if x == 1:
            return k
    return None


def small_prime_factors(m: int, bound: int) -> Dict[int, int]:
    """Multiplicities of the primes q <= bound dividing ``m``."""
    m = abs(m)
    out: Dict[int, int] = {}
    if m == 0:
        raise ValueError("zero has every prime as a square factor")
    for q in primes_below(bound + 1):
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            out[q] = e
        if m == 1:
            break
    return out


def square_factors(m: int, bound: int) -> Dict[int, int]:
    """Primes q <= bound with q^2 | m, mapped to their multiplicity."""
    return {q: e for q, e in small_prime_factors(m, bound).items() if e >= 2}
