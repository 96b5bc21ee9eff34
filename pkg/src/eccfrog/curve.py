"""Short-Weierstrass curves y^2 = x^3 + ax + b over GF(p).

Points cross the API as affine :class:`Point` objects whose coordinates are
:class:`~eccfrog.field.FieldElement` instances; the arithmetic underneath runs
on plain integers in Jacobian coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .field import FieldElement, FieldMismatchError, PrimeField


class InvalidPointError(ValueError):
    """Point not on the curve, identity where forbidden, or bad encoding."""


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class Provenance:
    seed: str
    b_index: int
    g_index: int


@dataclass(frozen=True)
class Point:
    """Affine point; ``x is None`` encodes the point at infinity."""

    x: Optional[FieldElement] = None
    y: Optional[FieldElement] = None

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "Point":
        if self.x is None:
            return self
        return Point(self.x, -self.y)

    def __repr__(self) -> str:
        if self.x is None:
            return "Point(identity)"
        return f"Point({self.x.value:#x}, {self.y.value:#x})"


IDENTITY = Point()

# Jacobian triple (X, Y, Z) representing (X/Z^2, Y/Z^3); Z == 0 is the identity.
_Jac = Tuple[int, int, int]
_JAC_INF: _Jac = (1, 1, 0)


@dataclass(frozen=True)
class CurveParams:
    name: str
    p: int
    a: int
    b: int
    gx: int
    gy: int
    n: int
    h: int = 1
    provenance: Optional[Provenance] = None
    field: PrimeField = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        F = PrimeField(self.p)
        object.__setattr__(self, "field", F)
        # canonical residues: a = -9 is stored as p - 9
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if self.discriminant_term() == 0:
            raise SingularCurveError(f"{self.name}: 4a^3 + 27b^2 == 0 mod p")

    def discriminant_term(self) -> int:
        p = self.p
        return (4 * pow(self.a, 3, p) + 27 * self.b * self.b) % p

    @property
    def byte_length(self) -> int:
        return self.field.byte_length

    @property
    def scalar_length(self) -> int:
        return (self.n.bit_length() + 7) // 8

    @property
    def G(self) -> Point:
        return self.point(self.gx, self.gy)

    def point(self, x: int, y: int) -> Point:
        F = self.field
        return Point(FieldElement(x, F), FieldElement(y, F))

    def rhs(self, x: int) -> int:
        """x^3 + ax + b mod p."""
        p = self.p
        return (pow(x, 3, p) + self.a * x + self.b) % p

    def hasse_bounds(self) -> Tuple[int, int]:
        # |t| <= 2 sqrt(p)  <=>  t^2 <= 4p
        w = math.isqrt(4 * self.p)
        return self.p + 1 - w, self.p + 1 + w

    def with_base_point(self, gx: int, gy: int) -> "CurveParams":
        return CurveParams(self.name, self.p, self.a, self.b, gx, gy, self.n, self.h, self.provenance)


# ---------------------------------------------------------------------------
# integer-level group law


def _to_jac(P: Point) -> _Jac:
    if P.x is None:
        return _JAC_INF
    return (P.x.value, P.y.value, 1)


def _from_jac(C: CurveParams, J: _Jac) -> Point:
    X, Y, Z = J
    if Z == 0:
        return IDENTITY
    p = C.p
    zi = pow(Z, p - 2, p)
    zi2 = zi * zi % p
    return C.point(X * zi2 % p, Y * zi2 * zi % p)


def _jac_double(J: _Jac, a: int, p: int) -> _Jac:
    X, Y, Z = J
    if Z == 0 or Y == 0:
        return _JAC_INF
    YY = Y * Y % p
    S = 4 * X * YY % p
    ZZ = Z * Z % p
    M = (3 * X * X + a * ZZ * ZZ) % p
    X3 = (M * M - 2 * S) % p
    Y3 = (M * (S - X3) - 8 * YY * YY) % p
    Z3 = 2 * Y * Z % p
    return (X3, Y3, Z3)


def _jac_add(J1: _Jac, J2: _Jac, a: int, p: int) -> _Jac:
    X1, Y1, Z1 = J1
    X2, Y2, Z2 = J2
    if Z1 == 0:
        return J2
    if Z2 == 0:
        return J1
    Z1Z1 = Z1 * Z1 % p
    Z2Z2 = Z2 * Z2 % p
    U1 = X1 * Z2Z2 % p
    U2 = X2 * Z1Z1 % p
    S1 = Y1 * Z2 * Z2Z2 % p
    S2 = Y2 * Z1 * Z1Z1 % p
    H = (U2 - U1) % p
    R = (S2 - S1) % p
    if H == 0:
        if R == 0:
            return _jac_double(J1, a, p)
        return _JAC_INF
    HH = H * H % p
    HHH = H * HH % p
    V = U1 * HH % p
    X3 = (R * R - HHH - 2 * V) % p
    Y3 = (R * (V - X3) - S1 * HHH) % p
    Z3 = H * Z1 * Z2 % p
    return (X3, Y3, Z3)


def _cswap(bit: int, A: _Jac, B: _Jac) -> Tuple[_Jac, _Jac]:
    mask = -bit
    out0, out1 = [], []
    for u, v in zip(A, B):
        t = mask & (u ^ v)
        out0.append(u ^ t)
        out1.append(v ^ t)
    return tuple(out0), tuple(out1)  # type: ignore[return-value]


def _ladder(k: int, J: _Jac, nbits: int, a: int, p: int) -> _Jac:
    R0, R1 = _JAC_INF, J
    for i in range(nbits - 1, -1, -1):
        bit = (k >> i) & 1
        R0, R1 = _cswap(bit, R0, R1)
        R1 = _jac_add(R0, R1, a, p)
        R0 = _jac_double(R0, a, p)
        R0, R1 = _cswap(bit, R0, R1)
    return R0


# ---------------------------------------------------------------------------
# public operations


def _check_field(P: Point, C: CurveParams) -> None:
    if P.x is not None and (P.x.field.modulus != C.p or P.y.field.modulus != C.p):
        raise FieldMismatchError(f"point coordinates are not in GF(p) of {C.name}")


def is_on_curve(P: Point, C: CurveParams) -> bool:
    _check_field(P, C)
    if P.x is None:
        return True
    return P.y.value * P.y.value % C.p == C.rhs(P.x.value)


def _require_on_curve(P: Point, C: CurveParams) -> None:
    if not is_on_curve(P, C):
        raise InvalidPointError(f"point is not on {C.name}")


def point_neg(P: Point, C: CurveParams) -> Point:
    _require_on_curve(P, C)
    return -P


def point_add(P: Point, Q: Point, C: CurveParams) -> Point:
    _require_on_curve(P, C)
    _require_on_curve(Q, C)
    return _from_jac(C, _jac_add(_to_jac(P), _to_jac(Q), C.a, C.p))


def point_double(P: Point, C: CurveParams) -> Point:
    _require_on_curve(P, C)
    return _from_jac(C, _jac_double(_to_jac(P), C.a, C.p))


def scalar_mul(k: int, P: Point, C: CurveParams) -> Point:
    """[k]P by a Montgomery ladder.

    The ladder runs a fixed number of steps (the bit length of the group
    order, or of ``k`` if longer) and swaps by masking, so the schedule does
    not depend on the bits of ``k``. Python big integers are not constant
    time, so this is a best-effort posture only.
    """
    if k < 0:
        return scalar_mul(-k, point_neg(P, C), C)
    _require_on_curve(P, C)
    nbits = max(C.n.bit_length(), k.bit_length())
    return _from_jac(C, _ladder(k, _to_jac(P), nbits, C.a, C.p))


def has_order_dividing_n(P: Point, C: CurveParams) -> bool:
    return scalar_mul(C.n, P, C).is_identity


def validate_public_point(P: Point, C: CurveParams) -> None:
    """Full public-key validation: on curve, not identity, [n]P == O."""
    _require_on_curve(P, C)
    if P.is_identity:
        raise InvalidPointError("identity is not a valid public point")
    if not has_order_dividing_n(P, C):
        raise InvalidPointError("point is not in the prime-order subgroup")


def lift_x(C: CurveParams, x: int) -> Optional[Tuple[int, int]]:
    """Both y with (x, y) on the curve, smaller first, or None."""
    r = C.field.sqrt_int(C.rhs(x))
    if r is None:
        return None
    return r, (-r) % C.p


def point_encode(P: Point, C: CurveParams, compressed: bool = False) -> bytes:
    _check_field(P, C)
    if P.is_identity:
        raise InvalidPointError("the identity has no SEC1 encoding here")
    L = C.byte_length
    X = P.x.value.to_bytes(L, "big")
    if compressed:
        return bytes([0x02 | (P.y.value & 1)]) + X
    return b"\x04" + X + P.y.value.to_bytes(L, "big")


def point_decode(data: bytes, C: CurveParams) -> Point:
    L = C.byte_length
    if not data:
        raise InvalidPointError("empty point encoding")
    tag = data[0]
    if tag == 0x04:
        if len(data) != 1 + 2 * L:
            raise InvalidPointError("bad uncompressed point length")
        x = int.from_bytes(data[1 : 1 + L], "big")
        y = int.from_bytes(data[1 + L :], "big")
        if x >= C.p or y >= C.p:
            raise InvalidPointError("coordinate out of range")
        P = C.point(x, y)
    elif tag in (0x02, 0x03):
        if len(data) != 1 + L:
            raise InvalidPointError("bad compressed point length")
        x = int.from_bytes(data[1:], "big")
        if x >= C.p:
            raise InvalidPointError("coordinate out of range")
        ys = lift_x(C, x)
        if ys is None:
            raise InvalidPointError("x is not the abscissa of a curve point")
        y = ys[0] if ys[0] & 1 == tag & 1 else ys[1]
        if y & 1 != tag & 1:
            raise InvalidPointError("no root with requested parity")
        P = C.point(x, y)
    else:
        raise InvalidPointError(f"unknown point prefix {tag:#04x}")
    _require_on_curve(P, C)
    return P


def j_invariant(C: CurveParams) -> FieldElement:
    """1728 * 4a^3 / (4a^3 + 27b^2)."""
    p = C.p
    disc = C.discriminant_term()
    if disc == 0:
        raise SingularCurveError("singular curve has no j-invariant")
    a3 = 4 * pow(C.a, 3, p) % p
    return FieldElement(1728 * a3 * pow(disc, p - 2, p), C.field)


def check_hasse(C: CurveParams) -> bool:
    lo, hi = C.hasse_bounds()
    return lo <= C.n * C.h <= hi
