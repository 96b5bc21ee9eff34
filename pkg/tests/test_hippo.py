import hashlib
import hmac
import random

import pytest
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from eccfrog.curve import InvalidPointError, scalar_mul
from eccfrog.hippo import (
    HKDF_INFO_PREFIX,
    AuthenticationError,
    EntropyError,
    FileHeader,
    HippoError,
    MalformedHeaderError,
    ParameterMismatchError,
    decrypt_file,
    derive_key,
    dump_public_key,
    dump_secret_key,
    ecdh,
    encrypt_file,
    keygen,
    load_public_key,
    load_secret_key,
    param_hash,
    random_scalar,
)
from eccfrog.registry import ECCFROG522PP, P256, P384, curve_names, registry_get

FROG_PARAM_HASH = "10dd3536d90eccf140dc61b8eda3d98c69ea7bc04d39185584bf5d42e369140d"


def seeded(seed):
    r = random.Random(seed)
    return lambda n: r.getrandbits(8 * n).to_bytes(n, "big")


def hkdf_reference(ikm, salt, info, length):
    """Extract-then-expand with stdlib HMAC."""
    prk = hmac.new(salt, ikm, hashlib.sha256).digest()
    out, block, i = b"", b"", 1
    while len(out) < length:
        block = hmac.new(prk, block + info + bytes([i]), hashlib.sha256).digest()
        out += block
        i += 1
    return out[:length]


@pytest.fixture(scope="module")
def frog_keys():
    return keygen(ECCFROG522PP, seeded(1))


def test_hkdf_rfc5869_case_1():
    ikm = bytes([0x0B]) * 22
    salt = bytes(range(13))
    info = bytes(range(0xF0, 0xFA))
    okm = "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf34007208d5b887185865"
    assert HKDF(hashes.SHA256(), 42, salt, info).derive(ikm).hex() == okm
    assert hkdf_reference(ikm, salt, info, 42).hex() == okm


def test_derive_key_matches_reference():
    shared, salt, phash = b"\x11" * 66, b"\x22" * 32, bytes.fromhex(FROG_PARAM_HASH)
    assert derive_key(shared, salt, phash) == hkdf_reference(shared, salt, HKDF_INFO_PREFIX + phash, 32)


@pytest.mark.parametrize(
    "key,iv,pt,ct,tag",
    [
        # zero key / zero IV, one zero block
        ("00" * 32, "00" * 12, "00" * 16, "cea7403d4d606b6e074ec5d3baf39d18", "d0d1c8a799996bf0265b98b5d48ab919"),
        # CAVP gcmEncryptExtIV256, PTlen=0, Count 0
        ("b52c505a37d78eda5dd34f20c22540ea1b58963cf8e5bf8ffa85f9f2492505b4", "516c33929df5a3284ff463d7", "", "",
         "bdc1ac884d332457a1d2664f168c76f0"),
        # CAVP gcmEncryptExtIV256, PTlen=128, Count 0
        ("31bdadd96698c204aa9ce1448ea94ae1fb4a9a0b3c9d773b51bb1822666b8f22", "0d18e06c7c725ac9e362e1ce",
         "2db5168e932556f8089a0622981d017d", "fa4362189661d163fcd6a56d8bf0405a", "d636ac1bbedd5cc3ee727dc2ab4a9489"),
    ],
)
def test_aes_gcm_vectors(key, iv, pt, ct, tag):
    out = AESGCM(bytes.fromhex(key)).encrypt(bytes.fromhex(iv), bytes.fromhex(pt), None)
    assert out.hex() == ct + tag


def test_param_hash_golden():
    assert param_hash(ECCFROG522PP).hex() == FROG_PARAM_HASH
    hashes_ = {param_hash(registry_get(n)) for n in curve_names()}
    assert len(hashes_) == len(curve_names())


@pytest.mark.parametrize("size", [0, 1, 15, 16, 17, 4096, 1 << 20])
def test_round_trip(size, frog_keys):
    data = random.Random(size).randbytes(size)
    blob = encrypt_file(data, ECCFROG522PP, frog_keys.pk)
    assert decrypt_file(blob, ECCFROG522PP, frog_keys.sk) == data


def test_every_bit_flip_rejected_p256():
    kp = keygen(P256, seeded(3))
    blob = encrypt_file(b"attack at dawn!!", P256, kp.pk, seeded(4))
    for bit in range(8 * len(blob)):
        bad = bytearray(blob)
        bad[bit >> 3] ^= 1 << (bit & 7)
        with pytest.raises(HippoError):
            decrypt_file(bytes(bad), P256, kp.sk)


def test_truncation_and_extension_rejected(frog_keys):
    blob = encrypt_file(b"hello", ECCFROG522PP, frog_keys.pk)
    for cut in (0, 5, 100, len(blob) - 1):
        with pytest.raises(HippoError):
            decrypt_file(blob[:cut], ECCFROG522PP, frog_keys.sk)
    with pytest.raises(MalformedHeaderError):
        decrypt_file(blob + b"\x00", ECCFROG522PP, frog_keys.sk)


def test_wrong_key_fails_authentication(frog_keys):
    blob = encrypt_file(b"secret", ECCFROG522PP, frog_keys.pk)
    other = keygen(ECCFROG522PP, seeded(2))
    with pytest.raises(AuthenticationError):
        decrypt_file(blob, ECCFROG522PP, other.sk)


def test_param_mismatch_rejected_before_key_agreement(frog_keys, monkeypatch):
    blob = encrypt_file(b"bound", ECCFROG522PP, frog_keys.pk)
    calls = []
    import eccfrog.hippo as hippo

    monkeypatch.setattr(hippo, "ecdh", lambda *a: calls.append(a))
    with pytest.raises(ParameterMismatchError):
        decrypt_file(blob, P384, 12345)
    assert calls == []


def test_header_round_trip():
    h = FileHeader("p256", b"\x01" * 32, b"\x04" + b"\x02" * 64, b"\x03" * 32, b"\x05" * 12, 77)
    raw = h.serialize()
    parsed, off = FileHeader.parse(raw + b"tail")
    assert parsed == h and off == len(raw)


def test_header_rejects_garbage():
    with pytest.raises(MalformedHeaderError):
        FileHeader.parse(b"NOTMAGIC" + bytes(300))
    h = FileHeader("nosuchcurve", b"\x01" * 32, b"", b"\x03" * 32, b"\x05" * 12, 0).serialize()
    with pytest.raises(MalformedHeaderError):
        FileHeader.parse(h)


def test_ecdh_agreement(frog_keys):
    other = keygen(ECCFROG522PP, seeded(5))
    s1 = ecdh(frog_keys.sk, other.pk, ECCFROG522PP)
    s2 = ecdh(other.sk, frog_keys.pk, ECCFROG522PP)
    assert s1 == s2 and len(s1) == 66


def test_ecdh_rejects_bad_peer(frog_keys):
    off = ECCFROG522PP.point(ECCFROG522PP.gx, ECCFROG522PP.gy + 1)
    with pytest.raises(InvalidPointError):
        ecdh(frog_keys.sk, off, ECCFROG522PP)
    with pytest.raises(ValueError):
        ecdh(0, frog_keys.pk, ECCFROG522PP)


def test_random_scalar_range_and_entropy_errors():
    for seed in range(50):
        k = random_scalar(P256, seeded(seed))
        assert 1 <= k < P256.n
    with pytest.raises(EntropyError):
        random_scalar(P256, lambda n: b"")
    with pytest.raises(EntropyError):
        random_scalar(P256, lambda n: b"\xff" * n)


def test_key_files(frog_keys):
    C, pk = load_public_key(dump_public_key(ECCFROG522PP, frog_keys.pk))
    assert C is ECCFROG522PP and pk == frog_keys.pk
    C, sk = load_secret_key(dump_secret_key(ECCFROG522PP, frog_keys.sk))
    assert sk == frog_keys.sk
    assert scalar_mul(sk, C.G, C) == pk
    with pytest.raises(ValueError):
        load_public_key("garbage")
    with pytest.raises(ValueError):
        load_secret_key(dump_secret_key(ECCFROG522PP, frog_keys.sk).replace("SECRET", "PUBLIC"))
