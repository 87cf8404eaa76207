import math
import random
from fractions import Fraction

import pytest

from polysieve.arith import (
    DiscriminantDecomposition,
    FactoredInteger,
    big_omega,
    factorize,
    fundamental_decomposition,
    is_fundamental_discriminant,
    is_prime,
    kronecker,
    primes_upto,
    smallest_prime_factors,
    squarefree_part,
)


def test_factorize_examples():
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(1).factors == ()
    f = factorize(466594)
    assert f.value == 466594
    assert all(is_prime(p) for p, _ in f.factors)
    assert math.prod(p**e for p, e in f.factors) == 466594


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(-5)


def test_factorize_reconstruction_exhaustive():
    spf = smallest_prime_factors(100_000)
    for x in range(1, 100_001):
        f = factorize(x)
        assert math.prod(p**e for p, e in f.factors) == x
        k, om = x, 0
        while k > 1:
            k //= spf[k]
            om += 1
        assert f.big_omega == om


def test_factorize_large_samples():
    random.seed(2024)
    for _ in range(300):
        x = random.randrange(100_000, 1_000_000)
        f = factorize(x)
        assert math.prod(p**e for p, e in f.factors) == x
    # beyond the trial bound: Pollard rho path
    big = (10**9 + 7) * (10**9 + 9)
    f = factorize(big)
    assert f.factors == ((10**9 + 7, 1), (10**9 + 9, 1))


def test_factored_integer_accessors():
    f = factorize(360)  # 2^3 3^2 5
    assert f.ord(2) == 3 and f.ord(3) == 2 and f.ord(7) == 0
    assert f.omega == 3 and f.big_omega == 6
    assert f.sigma0 == 24
    assert f.euler_phi == 96
    assert f.radical == 30
    assert f.sigma_minus1 == Fraction(sum(f.divisors()), 360)
    assert len(f.divisors()) == 24


def test_factored_integer_validation():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((3, 1), (2, 2)))  # wrong order
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 1), (3, 1)))  # wrong product


def test_big_omega():
    assert big_omega(12) == 3
    assert big_omega(-7) == 1
    assert big_omega(1) == 0
    with pytest.raises(ValueError):
        big_omega(0)


def test_squarefree_part():
    assert squarefree_part(48) == 3
    assert squarefree_part(11) == 11
    assert squarefree_part(99) == 11
    for h in range(1, 3000):
        s = squarefree_part(h)
        q = math.isqrt(h // s)
        assert s * q * q == h


def test_kronecker_examples():
    assert kronecker(-11, 2) == -1
    assert kronecker(-11, 3) == 1
    for a in (-9, -1, 0, 1, 5, 12):
        assert kronecker(a, 1) == 1


def test_kronecker_against_legendre_tables():
    for p in primes_upto(99):
        if p == 2:
            continue
        squares = {x * x % p for x in range(1, p)}
        for a in range(-2 * p, 2 * p + 1):
            expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert kronecker(a, p) == expected, (a, p)


def test_kronecker_multiplicative():
    random.seed(5)
    for _ in range(400):
        a, b = random.randrange(-60, 60), random.randrange(-60, 60)
        n = random.randrange(1, 60)
        assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)
        assert kronecker(n, a * b if a * b else 1) == kronecker(n, a if a else 1) * kronecker(n, b if b else 1) or (a * b == 0)


def test_fundamental_decomposition_examples():
    assert fundamental_decomposition(11) == DiscriminantDecomposition(-11, 1)
    assert fundamental_decomposition(99) == DiscriminantDecomposition(-11, 3)
    assert fundamental_decomposition(3) == DiscriminantDecomposition(-3, 1)
    assert fundamental_decomposition(4) == DiscriminantDecomposition(-4, 1)
    with pytest.raises(ValueError):
        fundamental_decomposition(2)


def test_fundamental_decomposition_structural():
    # the h = 3 mod 8 family always decomposes
    for h in range(3, 100_000, 8):
        dec = fundamental_decomposition(h)
        assert -dec.delta * dec.t**2 == h
        assert is_fundamental_discriminant(dec.delta)


def test_is_fundamental_discriminant():
    fundamentals = {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24}
    for d in range(-25, 0):
        assert is_fundamental_discriminant(d) == (d in fundamentals)
