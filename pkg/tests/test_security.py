import pytest

from eccfrog.security import first_embedding_degree, small_prime_factors, square_factors


def test_embedding_degree():
    # supersingular: n | p + 1, so p^2 == 1 mod n
    assert first_embedding_degree(467, 117, 10) in (1, 2)
    assert first_embedding_degree(10, 7, 10) == 6
    assert first_embedding_degree(10, 7, 5) is None
    assert first_embedding_degree(8, 7, 3) == 1


def test_small_prime_factors():
    assert small_prime_factors(-(2**3 * 3 * 5**2 * 101), 100) == {2: 3, 3: 1, 5: 2}
    assert square_factors(12, 100) == {2: 2}
    assert square_factors(15, 100) == {}
    with pytest.raises(ValueError):
        small_prime_factors(0, 100)
