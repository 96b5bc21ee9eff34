"""Named curve parameter sets: ECCFROG522PP and the benchmark comparison curves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .curve import CurveParams, Provenance


class UnknownCurveError(KeyError):
    pass


@dataclass(frozen=True)
class PublishedFacts:
    """Values printed alongside a curve that can be re-checked arithmetically."""

    trace: int
    cm_discriminant: int
    twist_order: int
    claimed_p_bits: Optional[int] = None
    claimed_n_bits: Optional[int] = None
    claimed_twist_factor_bits: Optional[int] = None
    twist_factor_bits_range: Optional[tuple] = None
    claimed_embedding_degree_lower_bound: Optional[int] = None


FROG_SEED = "ECCFrog522PP|v1"
FROG_B_INDEX = 1_294_798
FROG_G_INDEX = 0

FROG_P = int(
    "6864797660130609714981900799081393217269435300143305409394463459185543183397656052122559640661454554977296311391480858037121987999716643812574028291115058039"
)
FROG_B = int(
    "6611391361841958508604524699377447911389994900129754213077683112250964195093882510934154923371011820554254572559896136823993565633006955666197428760619911"
)
FROG_N = int(
    "6864797660130609714981900799081393217269435300143305409394463459185543183397654707839930998069072437178898634323218419738245117910726080434907495541251156283"
)
FROG_T = int("1344282628642592382117798397677068262438298876870088990563377666532749863901757")
FROG_D = -int(
    "25652094854852200923182489755562709400813783410907538423881259128294063827498368666061775444493529979367517268977200639940503231230605133844631506932712545107"
)
FROG_TWIST_ORDER = int(
    "6864797660130609714981900799081393217269435300143305409394463459185543183397657396405188283253836672775693988459743296335998858088707207190240561040978959797"
)
FROG_GX = int(
    "11483659870055913964623536371313631260976767098619949198405802655079012131788815900015100098140592301158799072401266653548293144687306675149107389798128134"
)
FROG_GY = int(
    "3038694457428442024388132117370677943127343938512113463034318638709600451136325747025138610802391491914091276481105699353919202494902810686593030172286395020"
)

ECCFROG522PP = CurveParams(
    name="eccfrog522pp",
    p=FROG_P,
    a=-9,
    b=FROG_B,
    gx=FROG_GX,
    gy=FROG_GY,
    n=FROG_N,
    h=1,
    provenance=Provenance(FROG_SEED, FROG_B_INDEX, FROG_G_INDEX),
)

FROG_FACTS = PublishedFacts(
    trace=FROG_T,
    cm_discriminant=FROG_D,
    twist_order=FROG_TWIST_ORDER,
    claimed_p_bits=522,
    claimed_n_bits=521,
    claimed_twist_factor_bits=505,
    twist_factor_bits_range=(500, 510),
    claimed_embedding_degree_lower_bound=14,
)

SECP256K1 = CurveParams(
    name="secp256k1",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F,
    a=0,
    b=7,
    gx=0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798,
    gy=0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8,
    n=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141,
)

P256 = CurveParams(
    name="p256",
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=-3,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
    gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
    n=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
)

P384 = CurveParams(
    name="p384",
    p=int(
        "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffe"
        "ffffffff0000000000000000ffffffff",
        16,
    ),
    a=-3,
    b=int(
        "b3312fa7e23ee7e4988e056be3f82d19181d9c6efe8141120314088f5013875a"
        "c656398d8a2ed19d2a85c8edd3ec2aef",
        16,
    ),
    gx=int(
        "aa87ca22be8b05378eb1c71ef320ad746e1d3b628ba79b9859f741e082542a38"
        "5502f25dbf55296c3a545e3872760ab7",
        16,
    ),
    gy=int(
        "3617de4a96262c6f5d9e98bf9292dc29f8f41dbd289a147ce9da3113b5f0b8c0"
        "0a60b1ce1d7e819d7a431d7c90ea0e5f",
        16,
    ),
    n=int(
        "ffffffffffffffffffffffffffffffffffffffffffffffffc7634d81f4372ddf"
        "581a0db248b0a77aecec196accc52973",
        16,
    ),
)

P521 = CurveParams(
    name="p521",
    p=2**521 - 1,
    a=-3,
    b=int(
        "0051953eb9618e1c9a1f929a21a0b68540eea2da725b99b315f3b8b489918ef1"
        "09e156193951ec7e937b1652c0bd3bb1bf073573df883d2c34f1ef451fd46b50"
        "3f00",
        16,
    ),
    gx=int(
        "00c6858e06b70404e9cd9e3ecb662395b4429c648139053fb521f828af606b4d"
        "3dbaa14b5e77efe75928fe1dc127a2ffa8de3348b3c1856a429bf97e7e31c2e5"
        "bd66",
        16,
    ),
    gy=int(
        "011839296a789a3bc0045c8a5fb42c7d1bd998f54449579b446817afbd17273e"
        "662c97ee72995ef42640c550b9013fad0761353c7086a272c24088be94769fd1"
        "6650",
        16,
    ),
    n=int(
        "01ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
        "fffa51868783bf2f966b7fcc0148f709a5d03bb5c9b8899c47aebb6fb71e9138"
        "6409",
        16,
    ),
)

_CURVES: Dict[str, CurveParams] = {
    c.name: c for c in (SECP256K1, P256, P384, P521, ECCFROG522PP)
}

_ALIASES = {
    "secp256r1": "p256",
    "prime256v1": "p256",
    "p-256": "p256",
    "secp384r1": "p384",
    "p-384": "p384",
    "secp521r1": "p521",
    "p-521": "p521",
    "frog": "eccfrog522pp",
}

_FACTS: Dict[str, PublishedFacts] = {"eccfrog522pp": FROG_FACTS}


def curve_names() -> list:
    return list(_CURVES)


def registry_get(name: str) -> CurveParams:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    try:
        return _CURVES[key]
    except KeyError:
        raise UnknownCurveError(f"unknown curve {name!r}; known: {', '.join(_CURVES)}") from None


def published_facts(name: str) -> Optional[PublishedFacts]:
    return _FACTS.get(registry_get(name).name)
