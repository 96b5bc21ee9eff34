"""Prime-field arithmetic over a runtime-configured modulus."""

from __future__ import annotations

from typing import Optional, Tuple, Union


class FieldMismatchError(ValueError):
    """Raised when elements of two different prime fields are combined."""


class PrimeField:
    """GF(p) for an odd modulus p > 3.

    Primality of the modulus is not checked here (that is the job of
    :func:`eccfrog.primes.is_probable_prime`), only its shape.
    """

    __slots__ = ("modulus", "bit_length", "byte_length", "_sqrt_kind", "_ts")

    def __init__(self, modulus: int) -> None:
        if modulus <= 3 or modulus % 2 == 0:
            raise ValueError(f"field modulus must be odd and > 3, got {modulus}")
        self.modulus = modulus
        self.bit_length = modulus.bit_length()
        self.byte_length = (self.bit_length + 7) // 8
        self._sqrt_kind = "p3mod4" if modulus % 4 == 3 else "tonelli"
        self._ts: Optional[Tuple[int, int, int]] = None

    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        return FieldElement(value, self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("PrimeField", self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.modulus})"

    def _check(self, el: "FieldElement") -> None:
        if el.field.modulus != self.modulus:
            raise FieldMismatchError(f"element of {el.field!r} used in {self!r}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    # Raw-integer helpers used by the curve hot paths.

    def sqrt_int(self, a: int) -> Optional[int]:
        """Return the smaller square root of ``a`` mod p, or None for a non-residue."""
        p = self.modulus
        a %= p
        if a == 0:
            return 0
        if pow(a, (p - 1) >> 1, p) != 1:
            return None
        if self._sqrt_kind == "p3mod4":
            r = pow(a, (p + 1) >> 2, p)
        else:
            r = self._tonelli_shanks(a)
        return min(r, p - r)

    def _tonelli_shanks(self, a: int) -> int:
        p = self.modulus
        if self._ts is None:
            q, s = p - 1, 0
            while q % 2 == 0:
                q //= 2
                s += 1
            z = 2
            while pow(z, (p - 1) >> 1, p) != p - 1:
                z += 1
            self._ts = (q, s, pow(z, q, p))
        q, m, c = self._ts
        t = pow(a, q, p)
        r = pow(a, (q + 1) >> 1, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m = i
            c = b * b % p
            t = t * c % p
            r = r * b % p
        return r

    def inv_int(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        # Fermat inversion: fixed exponent, no data-dependent branching in the loop
        return pow(a, self.modulus - 2, self.modulus)


class FieldElement:
    """Canonical residue in [0, p) bound to its :class:`PrimeField`."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField) -> None:
        self.value = int(value) % field.modulus
        self.field = field

    def _coerce(self, other: Union[int, "FieldElement"]) -> int:
        if isinstance(other, FieldElement):
            if other.field.modulus != self.field.modulus:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field!r} and {other.field!r}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented  # type: ignore[return-value]

    def _new(self, v: int) -> "FieldElement":
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * self.field.inv_int(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o * self.field.inv_int(self.value))

    def __neg__(self) -> "FieldElement":
        return self._new(-self.value)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.value, e, self.field.modulus))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field.modulus == other.field.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.modulus))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.field!r})"

    def inverse(self) -> "FieldElement":
        return self._new(self.field.inv_int(self.value))

    def is_square(self) -> bool:
        p = self.field.modulus
        return self.value == 0 or pow(self.value, (p - 1) >> 1, p) == 1

    def sqrt(self) -> Optional[Tuple["FieldElement", "FieldElement"]]:
        """Both square roots ``(r, p - r)`` with ``r <= p - r``, or None."""
        r = self.field.sqrt_int(self.value)
        if r is None:
            return None
        return self._new(r), self._new(-r)

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(self.field.byte_length, "big")


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def fe_sqrt(a: FieldElement) -> Optional[Tuple[FieldElement, FieldElement]]:
    return a.sqrt()


DIGEST_LEN = 64


def int_from_digest(digest: bytes, m: int, byteorder: str = "big") -> int:
    """Reduce a 64-byte digest, read as an unsigned integer, modulo ``m``."""
    if len(digest) != DIGEST_LEN:
        raise ValueError(f"expected a {DIGEST_LEN}-byte digest, got {len(digest)} bytes")
    if m <= 1:
        raise ValueError("modulus must be > 1")
    return int.from_bytes(digest, byteorder) % m
