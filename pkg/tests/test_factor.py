import math
import random

import pytest
import sympy

from chowlakit.factor import FactoredInteger, FactorizationError, factorize, is_prime


def test_is_prime_matches_sympy_below_2e5():
    assert [n for n in range(200_000) if is_prime(n)] == list(sympy.primerange(0, 200_000))


@pytest.mark.parametrize(
    "n",
    [
        2**61 - 1,
        2**89 - 1,
        2**127 - 1,
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        3825123056546413051,  # strong pseudoprime to the first nine prime bases
        318665857834031151167461,  # strong pseudoprime to bases up to 37
    ],
)
def test_is_prime_hard_cases(n):
    assert is_prime(n) == sympy.isprime(n)


def test_factorize_random_128_bit_products():
    rng = random.Random(7)
    for _ in range(20):
        p = sympy.nextprime(rng.getrandbits(32))
        q = sympy.nextprime(rng.getrandbits(32))
        r = rng.randint(2, 10**6)
        n = p * q * r
        assert factorize(n) == sympy.factorint(n)


def test_factorize_with_spf_table(table):
    for n in (1, 2, 720720, 999983, table.limit):
        assert factorize(n, table.spf) == sympy.factorint(n)


def test_factorize_rejects_zero_and_huge():
    with pytest.raises(FactorizationError):
        factorize(0)
    with pytest.raises(FactorizationError):
        factorize(2**128 + 1)


def test_factored_integer_invariants():
    f = FactoredInteger.of(-360)
    assert f.factors == ((2, 3), (3, 2), (5, 1))
    assert math.prod(p**e for p, e in f.factors) == 360
    assert (f.big_omega, f.small_omega, f.radical) == (6, 3, 30)
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 1), (3, 1)))


def test_large_prime_powers():
    p, q = 2**61 - 1, 2**31 - 1
    assert factorize(p * p * 3) == {3: 1, p: 2}
    assert factorize(q**4) == {q: 4}
    assert factorize(p * q**2) == {q: 2, p: 1}
    assert factorize(3**80) == {3: 80}
