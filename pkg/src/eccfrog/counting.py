"""Exact point counting for small fields (p < 2**48).

Two independent routes: direct enumeration with the quadratic character
(p < 2**20), and a Mestre-style baby-step giant-step search that pins the
order inside the Hasse interval using points of the curve and its twist.
"""

from __future__ import annotations

import math
import random
from typing import Optional, Tuple

import numpy as np

from .curve import CurveParams, _JAC_INF, _jac_add, _ladder
from .field import PrimeField
from .primes import factorize_small

ENUMERATION_LIMIT = 1 << 20
COUNTING_LIMIT = 1 << 48


class ModulusTooLargeError(ValueError):
    pass


def _quadratic_residue_table(p: int) -> np.ndarray:
    """Boolean table: is_square[v] for v in [0, p)."""
    y = np.arange((p + 1) // 2, dtype=np.int64)
    table = np.zeros(p, dtype=bool)
    table[(y * y) % p] = True
    return table


def count_points_enumerate(p: int, a: int, b: int) -> int:
    """#E(F_p) = p + 1 + sum_x chi(x^3 + ax + b)."""
    if p >= ENUMERATION_LIMIT:
        raise ModulusTooLargeError("enumeration is limited to p < 2**20")
    is_sq = _quadratic_residue_table(p)
    x = np.arange(p, dtype=np.int64)
    f = ((x * x % p) * x + (a % p) * x + b) % p
    zero = int(np.count_nonzero(f == 0))
    residues = int(np.count_nonzero(is_sq[f])) - zero
    nonresidues = p - residues - zero
    return p + 1 + residues - nonresidues


# ---------------------------------------------------------------------------
# BSGS / Mestre


def _affine_key(J, p):
    X, Y, Z = J
    if Z == 0:
        return None
    zi = pow(Z, p - 2, p)
    zi2 = zi * zi % p
    return (X * zi2 % p, Y * zi2 * zi % p)


def _mul(k: int, J, a: int, p: int):
    return _ladder(k, J, max(k.bit_length(), 1), a, p)


def _random_point(p: int, a: int, b: int, rng: random.Random, sqrt_int):
    while True:
        x = rng.randrange(p)
        r = sqrt_int((x * x * x + a * x + b) % p)
        if r is not None and r != 0:
            return (x, r, 1)


def _point_order(J, lo: int, hi: int, a: int, p: int) -> int:
    """Exact order of J given that it has a multiple in [lo, hi]."""
    width = hi - lo + 1
    m = math.isqrt(width) + 1
    baby = {}
    R = _JAC_INF
    for j in range(m):
        key = _affine_key(R, p)
        baby.setdefault(key, j)
        R = _jac_add(R, J, a, p)
    giant_step = _mul(m, J, a, p)
    # want [lo + i*m + j] J = O  <=>  [lo + i*m] J = -[j] J
    R = _mul(lo, J, a, p)
    multiple = None
    for i in range(m + 1):
        key = _affine_key(R, p)
        neg = None if key is None else (key[0], (-key[1]) % p)
        if neg in baby:
            multiple = lo + i * m + baby[neg]
            break
        R = _jac_add(R, giant_step, a, p)
    if multiple is None:
        raise ArithmeticError("no multiple of the point order in the Hasse interval")
    order = multiple
    for q, _ in factorize_small(multiple):
        while order % q == 0 and _mul(order // q, J, a, p)[2] == 0:
            order //= q
    return order


def _lcm(x: int, y: int) -> int:
    return x * y // math.gcd(x, y)


def hasse_interval(p: int) -> Tuple[int, int]:
    w = math.isqrt(4 * p)
    return p + 1 - w, p + 1 + w


def count_points_bsgs(p: int, a: int, b: int, seed: Optional[int] = None, max_points: int = 64) -> int:
    """Pin #E(F_p) using orders of points on E and on its quadratic twist."""
    if p >= COUNTING_LIMIT:
        raise ModulusTooLargeError("BSGS counting is limited to p < 2**48")
    a, b = a % p, b % p
    lo, hi = hasse_interval(p)
    # twist E': y^2 = x^3 + a d^2 x + b d^3 for a non-residue d
    d = 2
    while pow(d, (p - 1) // 2, p) != p - 1:
        d += 1
    ta, tb = a * d * d % p, b * d * d * d % p
    sqrt_int = PrimeField(p).sqrt_int
    rng = random.Random(seed if seed is not None else (p << 64) ^ (a << 32) ^ b)

    lcm_e, lcm_t = 1, 1
    for attempt in range(max_points):
        on_twist = attempt % 2 == 1
        if on_twist:
            J = _random_point(p, ta, tb, rng, sqrt_int)
            # twist order M = 2p + 2 - N is also in [lo, hi]
            lcm_t = _lcm(lcm_t, _point_order(J, lo, hi, ta, p))
        else:
            J = _random_point(p, a, b, rng, sqrt_int)
            lcm_e = _lcm(lcm_e, _point_order(J, lo, hi, a, p))
        candidates = _candidates(lo, hi, lcm_e, lcm_t, p)
        if len(candidates) == 1:
            return candidates[0]
    raise ArithmeticError("could not isolate the group order")


def _candidates(lo: int, hi: int, lcm_e: int, lcm_t: int, p: int):
    out = []
    start = lo + (-lo) % lcm_e
    if (hi - lo) // lcm_e > 4096:
        return [None, None]  # still too many; keep sampling
    for n in range(start, hi + 1, lcm_e):
        if (2 * p + 2 - n) % lcm_t == 0:
            out.append(n)
    return out


def curve_order(p: int, a: int, b: int, method: str = "auto") -> int:
    """Exact #E(F_p) of y^2 = x^3 + ax + b for p < 2**48."""
    if p >= COUNTING_LIMIT:
        raise ModulusTooLargeError("point counting is limited to p < 2**48")
    if method == "auto":
        method = "enumerate" if p < ENUMERATION_LIMIT else "bsgs"
    if method == "enumerate":
        n = count_points_enumerate(p, a, b)
    elif method == "bsgs":
        n = count_points_bsgs(p, a, b)
    else:
        raise ValueError(f"unknown counting method {method!r}")
    lo, hi = hasse_interval(p)
    if not lo <= n <= hi:
        raise ArithmeticError(f"point count {n} outside the Hasse interval")
    return n


def count_points(C: CurveParams, method: str = "auto") -> int:
    return curve_order(C.p, C.a, C.b, method)


def enumerate_points(p: int, a: int, b: int) -> Tuple[Tuple[int, int], ...]:
    """All affine points, in x order. Brute force; for tiny fields only."""
    squares = {}
    for y in range(p):
        squares.setdefault(y * y % p, []).append(y)
    pts = []
    for x in range(p):
        for y in squares.get((x * x * x + a * x + b) % p, ()):
            pts.append((x, y))
    return tuple(pts)
