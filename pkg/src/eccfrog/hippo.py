"""Hybrid file encryption: ephemeral ECDH -> HKDF-SHA-256 -> AES-256-GCM.

On-disk layout (all integers big-endian)::

    magic           8   b"HFROG522"
    version         1   0x01
    name_len        1
    curve_name      name_len ASCII octets
    param_hash      32  SHA-256 of the canonical curve parameters
    ephemeral_pk    1 + 2L uncompressed SEC1 point (L = field octets)
    hkdf_salt       32
    gcm_nonce       12
    ciphertext_len  8
    ciphertext      ciphertext_len
    tag             16

The serialized header is the GCM associated data, and the HKDF info string
also carries the parameter hash.
"""

from __future__ import annotations

import hashlib
import os
import struct
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from .curve import (
    CurveParams,
    InvalidPointError,
    Point,
    point_decode,
    point_encode,
    scalar_mul,
    validate_public_point,
)
from .registry import UnknownCurveError, registry_get

MAGIC = b"HFROG522"
VERSION = 1
SALT_LEN = 32
NONCE_LEN = 12
TAG_LEN = 16
HKDF_INFO_PREFIX = b"HippoFrog-v1"
# GCM: at most 2^39 - 256 bits of plaintext per (key, nonce)
MAX_PLAINTEXT = (2**39 - 256) // 8

RandomSource = Callable[[int], bytes]


class HippoError(Exception):
    """Base class for encryption-format errors."""


class MalformedHeaderError(HippoError):
    pass


class ParameterMismatchError(HippoError):
    """Header is bound to different curve parameters than the caller's."""


class AuthenticationError(HippoError):
    """GCM tag verification failed."""


class EntropyError(HippoError):
    pass


class PlaintextTooLargeError(HippoError):
    pass


def param_hash(C: CurveParams) -> bytes:
    """SHA-256 over p || a || b || Gx || Gy || n (fixed width) || cofactor octet."""
    if not 0 < C.h < 256:
        raise ValueError("cofactor must fit in one octet")
    L = C.byte_length
    h = hashlib.sha256()
    for v in (C.p, C.a, C.b, C.gx, C.gy, C.n):
        h.update(v.to_bytes(L, "big"))
    h.update(bytes([C.h]))
    return h.digest()


@dataclass(frozen=True)
class KeyPair:
    sk: int
    pk: Point


def _read_random(rng: Optional[RandomSource], n: int) -> bytes:
    data = (rng or os.urandom)(n)
    if not isinstance(data, (bytes, bytearray)) or len(data) != n:
        raise EntropyError(f"entropy source returned {len(data) if data else 0} of {n} bytes")
    return bytes(data)


def random_scalar(C: CurveParams, rng: Optional[RandomSource] = None, max_tries: int = 1000) -> int:
    """Uniform scalar in [1, n - 1] by rejection sampling."""
    nbits = C.n.bit_length()
    nbytes = (nbits + 7) // 8
    mask = (1 << nbits) - 1
    for _ in range(max_tries):
        k = int.from_bytes(_read_random(rng, nbytes), "big") & mask
        if 1 <= k < C.n:
            return k
    raise EntropyError("rejection sampling did not terminate; entropy source looks broken")


def keygen(C: CurveParams, rng: Optional[RandomSource] = None) -> KeyPair:
    sk = random_scalar(C, rng)
    return KeyPair(sk, scalar_mul(sk, C.G, C))


def ecdh(sk: int, peer_pk: Point, C: CurveParams) -> bytes:
    """Fixed-width x-coordinate of [sk]peer_pk, after full peer validation."""
    validate_public_point(peer_pk, C)
    if not 1 <= sk < C.n:
        raise ValueError("secret scalar out of range")
    S = scalar_mul(sk, peer_pk, C)
    if S.is_identity:
        raise InvalidPointError("shared point is the identity")
    return S.x.to_bytes()


def derive_key(shared: bytes, salt: bytes, phash: bytes) -> bytes:
    return HKDF(
        algorithm=hashes.SHA256(), length=32, salt=salt, info=HKDF_INFO_PREFIX + phash
    ).derive(shared)


@dataclass(frozen=True)
class FileHeader:
    curve_name: str
    param_hash: bytes
    ephemeral_pk: bytes
    hkdf_salt: bytes
    gcm_nonce: bytes
    ciphertext_len: int
    version: int = VERSION

    def serialize(self) -> bytes:
        name = self.curve_name.encode("ascii")
        if not 0 < len(name) < 256:
            raise ValueError("curve name must be 1..255 ASCII octets")
        if len(self.param_hash) != 32 or len(self.hkdf_salt) != SALT_LEN or len(self.gcm_nonce) != NONCE_LEN:
            raise ValueError("header field has the wrong width")
        return b"".join(
            (
                MAGIC,
                bytes([self.version, len(name)]),
                name,
                self.param_hash,
                self.ephemeral_pk,
                self.hkdf_salt,
                self.gcm_nonce,
                struct.pack(">Q", self.ciphertext_len),
            )
        )

    @classmethod
    def parse(cls, data: bytes, curve: Optional[CurveParams] = None) -> Tuple["FileHeader", int]:
        """Parse a header; returns it and the offset where the ciphertext starts.

        The point width comes from ``curve`` when the names agree, otherwise
        from the registry entry named in the header.
        """
        pos = 0

        def take(n: int) -> bytes:
            nonlocal pos
            if pos + n > len(data):
                raise MalformedHeaderError("truncated header")
            out = data[pos : pos + n]
            pos += n
            return out

        if take(len(MAGIC)) != MAGIC:
            raise MalformedHeaderError("bad magic")
        version, name_len = take(2)
        if version != VERSION:
            raise MalformedHeaderError(f"unsupported version {version}")
        if name_len == 0:
            raise MalformedHeaderError("empty curve name")
        try:
            name = take(name_len).decode("ascii")
        except UnicodeDecodeError:
            raise MalformedHeaderError("curve name is not ASCII") from None
        phash = take(32)
        if curve is not None and curve.name == name:
            width = curve.byte_length
        else:
            try:
                width = registry_get(name).byte_length
            except UnknownCurveError:
                raise MalformedHeaderError(f"unknown curve {name!r}") from None
        pk = take(1 + 2 * width)
        salt = take(SALT_LEN)
        nonce = take(NONCE_LEN)
        (ct_len,) = struct.unpack(">Q", take(8))
        return cls(name, phash, pk, salt, nonce, ct_len, version), pos


def encrypt_file(
    plaintext: bytes, C: CurveParams, recipient_pk: Point, rng: Optional[RandomSource] = None
) -> bytes:
    if len(plaintext) > MAX_PLAINTEXT:
        raise PlaintextTooLargeError("plaintext exceeds the single-message GCM limit")
    validate_public_point(recipient_pk, C)
    eph = keygen(C, rng)
    shared = ecdh(eph.sk, recipient_pk, C)
    phash = param_hash(C)
    header = FileHeader(
        curve_name=C.name,
        param_hash=phash,
        ephemeral_pk=point_encode(eph.pk, C),
        hkdf_salt=_read_random(rng, SALT_LEN),
        gcm_nonce=_read_random(rng, NONCE_LEN),
        ciphertext_len=len(plaintext),
    )
    aad = header.serialize()
    key = derive_key(shared, header.hkdf_salt, phash)
    sealed = AESGCM(key).encrypt(header.gcm_nonce, bytes(plaintext), aad)
    return aad + sealed


def decrypt_file(data: bytes, C: CurveParams, sk: int) -> bytes:
    """Authenticate and decrypt; nothing is returned unless the tag verifies."""
    header, offset = FileHeader.parse(data, C)
    if header.param_hash != param_hash(C) or header.curve_name != C.name:
        raise ParameterMismatchError(
            f"file is bound to {header.curve_name!r} parameters, not {C.name!r}"
        )
    body = data[offset:]
    if len(body) != header.ciphertext_len + TAG_LEN:
        raise MalformedHeaderError("ciphertext length does not match header")
    try:
        eph = point_decode(header.ephemeral_pk, C)
        shared = ecdh(sk, eph, C)
    except InvalidPointError as exc:
        raise MalformedHeaderError(f"invalid ephemeral key: {exc}") from None
    key = derive_key(shared, header.hkdf_salt, header.param_hash)
    try:
        return AESGCM(key).decrypt(header.gcm_nonce, body, data[:offset])
    except InvalidTag:
        raise AuthenticationError("authentication failed") from None


# key files: one armor line naming the curve, then the hex encoding


def dump_public_key(C: CurveParams, pk: Point) -> str:
    return f"-----FROG PUBLIC KEY {C.name}-----\n{point_encode(pk, C).hex()}\n"


def dump_secret_key(C: CurveParams, sk: int) -> str:
    return f"-----FROG SECRET KEY {C.name}-----\n{sk.to_bytes(C.scalar_length, 'big').hex()}\n"


def _parse_armor(text: str, kind: str) -> Tuple[str, bytes]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    prefix, suffix = f"-----FROG {kind} KEY ", "-----"
    if len(lines) != 2 or not lines[0].startswith(prefix) or not lines[0].endswith(suffix):
        raise ValueError(f"not a FROG {kind.lower()} key file")
    name = lines[0][len(prefix) : -len(suffix)]
    try:
        return name, bytes.fromhex(lines[1])
    except ValueError:
        raise ValueError("key body is not hex") from None


def load_public_key(text: str, C: Optional[CurveParams] = None) -> Tuple[CurveParams, Point]:
    name, raw = _parse_armor(text, "PUBLIC")
    C = C if C is not None and C.name == name else registry_get(name)
    P = point_decode(raw, C)
    validate_public_point(P, C)
    return C, P


def load_secret_key(text: str, C: Optional[CurveParams] = None) -> Tuple[CurveParams, int]:
    name, raw = _parse_armor(text, "SECRET")
    C = C if C is not None and C.name == name else registry_get(name)
    if len(raw) != C.scalar_length:
        raise ValueError("secret key has the wrong length")
    sk = int.from_bytes(raw, "big")
    if not 1 <= sk < C.n:
        raise ValueError("secret key out of range")
    return C, sk
