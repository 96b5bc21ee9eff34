import pytest

from eccfrog.curve import is_on_curve, scalar_mul
from eccfrog.registry import (
    ECCFROG522PP,
    FROG_B,
    FROG_D,
    FROG_FACTS,
    FROG_GX,
    FROG_GY,
    FROG_N,
    FROG_P,
    FROG_T,
    FROG_TWIST_ORDER,
    UnknownCurveError,
    curve_names,
    published_facts,
    registry_get,
)


def test_names():
    assert sorted(curve_names()) == ["eccfrog522pp", "p256", "p384", "p521", "secp256k1"]


@pytest.mark.parametrize("alias,name", [
    ("ECCFROG522PP", "eccfrog522pp"), ("frog", "eccfrog522pp"), ("secp256r1", "p256"),
    ("prime256v1", "p256"), ("P-384", "p384"), ("secp521r1", "p521"), ("Secp256k1", "secp256k1"),
])
def test_aliases(alias, name):
    assert registry_get(alias).name == name


def test_unknown_curve():
    with pytest.raises(UnknownCurveError):
        registry_get("curve25519")


@pytest.mark.parametrize("name", ["eccfrog522pp", "secp256k1", "p256", "p384", "p521"])
def test_generators_have_order_n(name):
    C = registry_get(name)
    assert is_on_curve(C.G, C)
    assert scalar_mul(C.n, C.G, C).is_identity
    assert C.h == 1


def test_frog_constants_self_consistent():
    assert ECCFROG522PP.p == FROG_P and ECCFROG522PP.b == FROG_B
    assert ECCFROG522PP.a == FROG_P - 9
    assert (ECCFROG522PP.gx, ECCFROG522PP.gy, ECCFROG522PP.n) == (FROG_GX, FROG_GY, FROG_N)
    assert FROG_T == FROG_P + 1 - FROG_N
    assert FROG_D == FROG_T**2 - 4 * FROG_P
    assert FROG_TWIST_ORDER == 2 * (FROG_P + 1) - FROG_N
    assert FROG_P.bit_length() == 522 and FROG_N.bit_length() == 521
    assert FROG_P % 4 == 3
    assert FROG_GY % 2 == 0


def test_published_facts():
    assert published_facts("frog") is FROG_FACTS
    assert published_facts("p256") is None
