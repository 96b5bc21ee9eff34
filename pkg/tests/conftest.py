import random

import pytest

from eccfrog.derivation import mini_generate
from eccfrog.registry import ECCFROG522PP


@pytest.fixture(scope="session")
def frog():
    return ECCFROG522PP


@pytest.fixture(scope="session")
def mini16():
    return mini_generate(16)


@pytest.fixture(scope="session")
def mini24():
    return mini_generate(24)


@pytest.fixture
def rng():
    return random.Random(0x5EED)


@pytest.fixture(scope="session")
def frog_report():
    from eccfrog.verification import run_full_verification

    return run_full_verification(ECCFROG522PP)
